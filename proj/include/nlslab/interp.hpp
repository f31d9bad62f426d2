#pragma once

#include <vector>

namespace nlslab {

// Fritsch-Carlson monotone cubic (pchip) through strictly increasing x.
// Queries are clamped to [x.front(), x.back()].
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double xq) const;

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> d_;  // node derivatives
};

}  // namespace nlslab
