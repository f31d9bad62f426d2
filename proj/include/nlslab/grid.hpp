#pragma once

#include <memory>
#include <vector>

#include "nlslab/errors.hpp"

namespace nlslab {

// area(S^{N-1}) = 2 pi^{N/2} / Gamma(N/2)
double unit_sphere_area(int dim);

class RadialGrid;
using GridPtr = std::shared_ptr<const RadialGrid>;

// Uniform radial grid r_j = j h, j = 1..M, h = R/(M+1).  The reduced field
// w = r^{(N-1)/2} u satisfies Dirichlet conditions at r = 0 and r = R.
// Integrals over R^N of radial integrands use
//   area(S^{N-1}) * sum_j f(r_j) r_j^{N-1} h.
class RadialGrid {
 public:
  RadialGrid(double R, int M, int dim);

  double radius() const { return radius_; }
  int node_count() const { return node_count_; }
  int dim() const { return dim_; }
  double spacing() const { return spacing_; }
  double sphere_area() const { return sphere_area_; }

  const std::vector<double>& nodes() const { return nodes_; }
  // area * r_j^{N-1} * h
  const std::vector<double>& quad_weights() const { return quad_weights_; }
  // r_j^{(N-1)/2}
  const std::vector<double>& reduction_weights() const { return reduction_weights_; }
  // centrifugal term (N-1)(N-3) / (4 r_j^2) of the reduced Laplacian
  const std::vector<double>& centrifugal() const { return centrifugal_; }

  bool same_layout(const RadialGrid& o) const {
    return radius_ == o.radius_ && node_count_ == o.node_count_ && dim_ == o.dim_;
  }

 private:
  double radius_;
  int node_count_;
  int dim_;
  double spacing_;
  double sphere_area_;
  std::vector<double> nodes_;
  std::vector<double> quad_weights_;
  std::vector<double> reduction_weights_;
  std::vector<double> centrifugal_;
};

GridPtr make_grid(double R, int M, int dim);

}  // namespace nlslab
