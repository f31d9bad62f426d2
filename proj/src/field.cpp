#include "nlslab/field.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "nlslab/kernels.hpp"

namespace nlslab {

RadialField::RadialField(GridPtr grid, std::vector<cdouble> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != grid_->node_count())
    throw StructuralError("RadialField: value count does not match grid");
}

RadialField RadialField::zeros(GridPtr grid) {
  std::vector<cdouble> vals(grid->node_count(), cdouble{});
  return RadialField(std::move(grid), std::move(vals));
}

RadialField RadialField::gaussian(GridPtr grid, double amplitude, double width, double chirp) {
  if (!(width > 0.0)) throw ParameterError("gaussian: width > 0 required");
  return from_function(std::move(grid), [=](double r) {
    const double mod = amplitude * std::exp(-(r / width) * (r / width));
    if (chirp == 0.0) return cdouble(mod, 0.0);
    return mod * std::polar(1.0, chirp * r * r);
  });
}

std::vector<cdouble> RadialField::reduced() const {
  const auto& rw = grid_->reduction_weights();
  std::vector<cdouble> w(values_.size());
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = values_[j] * rw[j];
  return w;
}

RadialField RadialField::from_reduced(GridPtr grid, const std::vector<cdouble>& w) {
  if (static_cast<int>(w.size()) != grid->node_count())
    throw StructuralError("from_reduced: size mismatch");
  const auto& rw = grid->reduction_weights();
  std::vector<cdouble> vals(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) vals[j] = w[j] / rw[j];
  return RadialField(std::move(grid), std::move(vals));
}

bool RadialField::finite() const {
  for (const auto& z : values_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

namespace {

void require_same_grid(const RadialField& a, const RadialField& b, const char* who) {
  if (!a.grid().same_layout(b.grid()))
    throw StructuralError(std::string(who) + ": fields live on different grids");
}

}  // namespace

double lp_power(const RadialField& f, double q) {
  if (!(q > 0.0)) throw ParameterError("lp_power: q > 0 required");
  const auto& k = kernels::active();
  return k.sum_pow_weighted(f.values().data(), f.grid().quad_weights().data(), q, f.size());
}

double norm_l2(const RadialField& f) {
  const auto& k = kernels::active();
  return std::sqrt(k.sum_mod2_weighted(f.values().data(), f.grid().quad_weights().data(), f.size()));
}

double norm_lr(const RadialField& f, double r) {
  if (!(r >= 1.0)) throw ParameterError("norm_lr: r >= 1 required");
  return std::pow(lp_power(f, r), 1.0 / r);
}

std::vector<cdouble> radial_derivative(const RadialField& f) {
  const auto& v = f.values();
  const std::size_t n = v.size();
  const double h = f.grid().spacing();
  std::vector<cdouble> d(n);
  d[0] = (v[1] - v[0]) / h;
  for (std::size_t j = 1; j + 1 < n; ++j) d[j] = (v[j + 1] - v[j - 1]) / (2.0 * h);
  d[n - 1] = (v[n - 1] - v[n - 2]) / h;
  return d;
}

double norm_h1(const RadialField& f) {
  const auto d = radial_derivative(f);
  const auto& k = kernels::active();
  const double l2sq = k.sum_mod2_weighted(f.values().data(), f.grid().quad_weights().data(), f.size());
  const double gsq = k.sum_mod2_weighted(d.data(), f.grid().quad_weights().data(), d.size());
  return std::sqrt(l2sq + gsq);
}

double norm_weighted(const RadialField& f) {
  const auto& w = f.grid().quad_weights();
  const auto& r = f.grid().nodes();
  const auto& v = f.values();
  double acc = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) acc += w[j] * r[j] * r[j] * std::norm(v[j]);
  return std::sqrt(acc);
}

double norm_sigma(const RadialField& f) { return norm_h1(f) + norm_weighted(f); }

double dirichlet_form(const RadialField& f) {
  const auto w = f.reduced();
  const auto& V = f.grid().centrifugal();
  const double h = f.grid().spacing();
  const std::size_t n = w.size();
  // sum over all M+1 gaps with w_0 = w_{M+1} = 0, plus the centrifugal term
  double acc = std::norm(w[0]) + std::norm(w[n - 1]);
  for (std::size_t j = 0; j + 1 < n; ++j) acc += std::norm(w[j + 1] - w[j]);
  acc /= h * h;
  for (std::size_t j = 0; j < n; ++j) acc += V[j] * std::norm(w[j]);
  return f.grid().sphere_area() * h * acc;
}

cdouble pairing(const RadialField& f, const RadialField& theta) {
  require_same_grid(f, theta, "pairing");
  const auto& k = kernels::active();
  return k.dot_weighted(f.values().data(), theta.values().data(), f.grid().quad_weights().data(),
                        f.size());
}

double pairing_re(const RadialField& f, const RadialField& theta) {
  return pairing(f, theta).real();
}

RadialField scaled(const RadialField& f, cdouble c) {
  std::vector<cdouble> v = f.values();
  for (auto& z : v) z *= c;
  return RadialField(f.grid_ptr(), std::move(v));
}

RadialField axpy(cdouble a, const RadialField& x, const RadialField& y) {
  require_same_grid(x, y, "axpy");
  std::vector<cdouble> v(x.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = a * x.values()[j] + y.values()[j];
  return RadialField(x.grid_ptr(), std::move(v));
}

RadialField apply_quadratic_phase(const RadialField& f, double c) {
  const auto& r = f.grid().nodes();
  std::vector<cdouble> v = f.values();
  for (std::size_t j = 0; j < v.size(); ++j) v[j] *= std::polar(1.0, c * r[j] * r[j]);
  return RadialField(f.grid_ptr(), std::move(v));
}

double rel_l2_diff(const RadialField& a, const RadialField& b) {
  require_same_grid(a, b, "rel_l2_diff");
  const RadialField d = axpy(-1.0, b, a);
  const double nb = norm_l2(b);
  const double nd = norm_l2(d);
  if (nb == 0.0) return nd;
  return nd / nb;
}

void write_field_csv(const RadialField& f, std::ostream& os) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "# nlslab-field R=%.17g M=%d N=%d\n", f.grid().radius(),
                f.grid().node_count(), f.grid().dim());
  os << buf << "r,re_u,im_u\n";
  const auto& r = f.grid().nodes();
  const auto& v = f.values();
  for (std::size_t j = 0; j < v.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", r[j], v[j].real(), v[j].imag());
    os << buf;
  }
}

RadialField read_field_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParameterError("field csv: empty input");
  double R = 0;
  int M = 0, N = 0;
  if (std::sscanf(line.c_str(), "# nlslab-field R=%lg M=%d N=%d", &R, &M, &N) != 3)
    throw ParameterError("field csv: bad header");
  if (!std::getline(is, line)) throw ParameterError("field csv: missing column header");
  GridPtr grid = make_grid(R, M, N);
  std::vector<cdouble> vals;
  vals.reserve(M);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    double r, re, im;
    if (std::sscanf(line.c_str(), "%lg,%lg,%lg", &r, &re, &im) != 3)
      throw ParameterError("field csv: bad row '" + line + "'");
    vals.emplace_back(re, im);
  }
  if (static_cast<int>(vals.size()) != M) throw ParameterError("field csv: row count mismatch");
  return RadialField(std::move(grid), std::move(vals));
}

}  // namespace nlslab
