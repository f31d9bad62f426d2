#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "nlslab/grid.hpp"

namespace nlslab {

using cdouble = std::complex<double>;

// Complex samples u(r_j) of a radially symmetric function on R^N.
// Immutable once constructed; operations return new fields.
class RadialField {
 public:
  RadialField(GridPtr grid, std::vector<cdouble> values);

  static RadialField zeros(GridPtr grid);

  // amplitude * exp(-(r/width)^2) * exp(i chirp r^2)
  static RadialField gaussian(GridPtr grid, double amplitude, double width, double chirp = 0.0);

  template <class F>
  static RadialField from_function(GridPtr grid, F&& f) {
    std::vector<cdouble> vals(grid->node_count());
    for (int j = 0; j < grid->node_count(); ++j) vals[j] = f(grid->nodes()[j]);
    return RadialField(std::move(grid), std::move(vals));
  }

  const RadialGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const std::vector<cdouble>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  // w_j = r_j^{(N-1)/2} u_j
  std::vector<cdouble> reduced() const;
  static RadialField from_reduced(GridPtr grid, const std::vector<cdouble>& w);

  bool finite() const;

 private:
  GridPtr grid_;
  std::vector<cdouble> values_;
};

// sum_j weight_j |u_j|^q = integral of |u|^q over R^N
double lp_power(const RadialField& f, double q);

double norm_l2(const RadialField& f);
double norm_lr(const RadialField& f, double r);

// centered differences, one-sided at the first and last node
std::vector<cdouble> radial_derivative(const RadialField& f);

// sqrt(||f||_2^2 + ||d_r f||_2^2)
double norm_h1(const RadialField& f);
// || r f ||_2
double norm_weighted(const RadialField& f);
// norm_h1 + norm_weighted
double norm_sigma(const RadialField& f);

// ||grad u||_2^2 through the reduced field's Dirichlet form; this is the
// quantity the Cayley step conserves exactly, and a second-order
// discretization of the continuum gradient norm.
double dirichlet_form(const RadialField& f);

// area * sum_j f_j conj(theta_j) r_j^{N-1} h; real part exposed separately
// since the duality pairing convention is used both ways.
cdouble pairing(const RadialField& f, const RadialField& theta);
double pairing_re(const RadialField& f, const RadialField& theta);

RadialField scaled(const RadialField& f, cdouble c);
// a*x + y
RadialField axpy(cdouble a, const RadialField& x, const RadialField& y);
// pointwise multiply by exp(i c r^2)
RadialField apply_quadratic_phase(const RadialField& f, double c);

double rel_l2_diff(const RadialField& a, const RadialField& b);

// CSV rows (r_j, Re u_j, Im u_j); header line carries R, M, N.
void write_field_csv(const RadialField& f, std::ostream& os);
RadialField read_field_csv(std::istream& is);

}  // namespace nlslab
