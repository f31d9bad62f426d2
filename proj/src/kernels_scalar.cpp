#include <cmath>

#include "nlslab/kernels.hpp"
#include "kernels_common.hpp"

namespace nlslab::kernels {
namespace {

using detail::classify_pow;
using detail::pow_from_mod2;

double sum_mod2_weighted_scalar(const cdouble* v, const double* weight, std::size_t n) {
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) acc += weight[j] * std::norm(v[j]);
  return acc;
}

double sum_pow_weighted_scalar(const cdouble* v, const double* weight, double q, std::size_t n) {
  const auto kind = classify_pow(q);
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) acc += weight[j] * pow_from_mod2(std::norm(v[j]), q, kind);
  return acc;
}

cdouble dot_weighted_scalar(const cdouble* f, const cdouble* g, const double* weight, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const cdouble p = f[j] * std::conj(g[j]);
    re += weight[j] * p.real();
    im += weight[j] * p.imag();
  }
  return {re, im};
}

void phase_rotate_scalar(cdouble* v, std::size_t n, double c1, double p1, double c2, double p2) {
  const auto k1 = classify_pow(p1);
  const auto k2 = classify_pow(p2);
  for (std::size_t j = 0; j < n; ++j) {
    const double m2 = std::norm(v[j]);
    double ang = -c1 * pow_from_mod2(m2, p1, k1);
    if (c2 != 0.0) ang -= c2 * pow_from_mod2(m2, p2, k2);
    v[j] *= cdouble(std::cos(ang), std::sin(ang));
  }
}

void cayley_rhs_scalar(const cdouble* w, cdouble* out, const double* gamma, double beta, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const cdouble left = (j > 0) ? w[j - 1] : cdouble{};
    const cdouble right = (j + 1 < n) ? w[j + 1] : cdouble{};
    const cdouble z = gamma[j] * w[j] - beta * (left + right);
    out[j] = cdouble(w[j].real() + z.imag(), w[j].imag() - z.real());
  }
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend b{
      "scalar",
      &sum_mod2_weighted_scalar,
      &sum_pow_weighted_scalar,
      &dot_weighted_scalar,
      &phase_rotate_scalar,
      &cayley_rhs_scalar,
  };
  return b;
}

}  // namespace nlslab::kernels
