#include "nlslab/grid.hpp"

#include <cmath>
#include <numbers>

namespace nlslab {

double unit_sphere_area(int dim) {
  if (dim < 1) throw ParameterError("unit_sphere_area: dim >= 1 required");
  const double nd = static_cast<double>(dim);
  return 2.0 * std::pow(std::numbers::pi, 0.5 * nd) / std::tgamma(0.5 * nd);
}

RadialGrid::RadialGrid(double R, int M, int dim)
    : radius_(R), node_count_(M), dim_(dim) {
  if (!(R > 0.0)) throw ParameterError("RadialGrid: R > 0 required");
  if (M < 3) throw ParameterError("RadialGrid: at least 3 interior nodes required");
  if (dim < 3) throw ParameterError("RadialGrid: N >= 3 required");
  spacing_ = R / (M + 1);
  sphere_area_ = unit_sphere_area(dim);
  nodes_.resize(M);
  quad_weights_.resize(M);
  reduction_weights_.resize(M);
  centrifugal_.resize(M);
  const double cf = (dim - 1) * (dim - 3) / 4.0;
  for (int j = 0; j < M; ++j) {
    const double r = (j + 1) * spacing_;
    nodes_[j] = r;
    quad_weights_[j] = sphere_area_ * std::pow(r, dim - 1) * spacing_;
    reduction_weights_[j] = std::pow(r, 0.5 * (dim - 1));
    centrifugal_[j] = cf / (r * r);
  }
}

GridPtr make_grid(double R, int M, int dim) {
  return std::make_shared<const RadialGrid>(R, M, dim);
}

}  // namespace nlslab
