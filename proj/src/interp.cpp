#include "nlslab/interp.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "nlslab/errors.hpp"

namespace nlslab {

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw ParameterError("MonotoneCubic: need >= 2 matching points");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(x_[i] < x_[i + 1])) throw ParameterError("MonotoneCubic: x must be strictly increasing");

  std::vector<double> h(n - 1), slope(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    slope[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  d_.assign(n, 0.0);
  d_[0] = slope[0];
  d_[n - 1] = slope[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (slope[i - 1] * slope[i] <= 0.0) {
      d_[i] = 0.0;
    } else {
      // weighted harmonic mean keeps the interpolant monotone on the interval
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      d_[i] = (w1 + w2) / (w1 / slope[i - 1] + w2 / slope[i]);
    }
  }
  // limit end slopes (Fritsch-Carlson end condition)
  for (std::size_t e : {std::size_t{0}, n - 1}) {
    const double s = (e == 0) ? slope[0] : slope[n - 2];
    if (s == 0.0)
      d_[e] = 0.0;
    else if (d_[e] / s < 0.0)
      d_[e] = 0.0;
    else if (std::abs(d_[e]) > 3.0 * std::abs(s))
      d_[e] = 3.0 * s;
  }
}

double MonotoneCubic::operator()(double xq) const {
  const std::size_t n = x_.size();
  if (xq <= x_.front()) return y_.front();
  if (xq >= x_.back()) return y_.back();
  const auto it = std::upper_bound(x_.begin(), x_.end(), xq);
  const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  const double h = x_[i + 1] - x_[i];
  const double t = (xq - x_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

}  // namespace nlslab
