#include "nlslab/kernels.hpp"
#include "kernels_common.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

#ifdef NLSLAB_HAVE_MVEC
extern "C" {
__m256d _ZGVdN4vv_pow(__m256d, __m256d);
__m256d _ZGVdN4v_sin(__m256d);
__m256d _ZGVdN4v_cos(__m256d);
}
#endif

namespace nlslab::kernels {
namespace {

using detail::classify_pow;
using detail::pow_from_mod2;
using detail::PowKind;

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_hadd_pd(lo, lo));
}

// [re0,im0,re1,im1],[re2,im2,re3,im3] -> [|z0|^2,|z1|^2,|z2|^2,|z3|^2]
inline __m256d mod2x4(__m256d a, __m256d b) {
  __m256d h = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
  return _mm256_permute4x64_pd(h, _MM_SHUFFLE(3, 1, 2, 0));
}

inline __m256d pow_from_mod2x4(__m256d m2, double q, PowKind kind) {
  switch (kind) {
    case PowKind::Mod2: return m2;
    case PowKind::Mod4: return _mm256_mul_pd(m2, m2);
    case PowKind::Mod1: return _mm256_sqrt_pd(m2);
    case PowKind::Mod3: return _mm256_mul_pd(m2, _mm256_sqrt_pd(m2));
    case PowKind::General: break;
  }
#ifdef NLSLAB_HAVE_MVEC
  return _ZGVdN4vv_pow(m2, _mm256_set1_pd(0.5 * q));
#else
  alignas(32) double tmp[4];
  _mm256_storeu_pd(tmp, m2);
  for (double& t : tmp) t = std::pow(t, 0.5 * q);
  return _mm256_loadu_pd(tmp);
#endif
}

double sum_mod2_weighted_avx2(const cdouble* v, const double* weight, std::size_t n) {
  const double* d = reinterpret_cast<const double*>(v);
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d m2 = mod2x4(_mm256_loadu_pd(d + 2 * j), _mm256_loadu_pd(d + 2 * j + 4));
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(weight + j), m2, acc);
  }
  double out = hsum(acc);
  for (; j < n; ++j) out += weight[j] * std::norm(v[j]);
  return out;
}

double sum_pow_weighted_avx2(const cdouble* v, const double* weight, double q, std::size_t n) {
  const auto kind = classify_pow(q);
  const double* d = reinterpret_cast<const double*>(v);
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d m2 = mod2x4(_mm256_loadu_pd(d + 2 * j), _mm256_loadu_pd(d + 2 * j + 4));
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(weight + j), pow_from_mod2x4(m2, q, kind), acc);
  }
  double out = hsum(acc);
  for (; j < n; ++j) out += weight[j] * pow_from_mod2(std::norm(v[j]), q, kind);
  return out;
}

cdouble dot_weighted_avx2(const cdouble* f, const cdouble* g, const double* weight, std::size_t n) {
  const double* fd = reinterpret_cast<const double*>(f);
  const double* gd = reinterpret_cast<const double*>(g);
  const __m256d sign = _mm256_set_pd(1.0, -1.0, 1.0, -1.0);  // [-1,+1,-1,+1] in memory order
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    __m256d a = _mm256_loadu_pd(fd + 2 * j);
    __m256d b = _mm256_loadu_pd(gd + 2 * j);
    __m128d w2 = _mm_loadu_pd(weight + j);
    __m256d w = _mm256_permute4x64_pd(_mm256_castpd128_pd256(w2), _MM_SHUFFLE(1, 1, 0, 0));
    // f*conj(g): re = fr*gr + fi*gi, im = fi*gr - fr*gi
    acc_re = _mm256_fmadd_pd(_mm256_mul_pd(a, b), w, acc_re);
    __m256d q = _mm256_mul_pd(a, _mm256_permute_pd(b, 0x5));
    acc_im = _mm256_fmadd_pd(_mm256_mul_pd(q, sign), w, acc_im);
  }
  double re = hsum(acc_re);
  double im = hsum(acc_im);
  for (; j < n; ++j) {
    const cdouble p = f[j] * std::conj(g[j]);
    re += weight[j] * p.real();
    im += weight[j] * p.imag();
  }
  return {re, im};
}

void phase_rotate_avx2(cdouble* v, std::size_t n, double c1, double p1, double c2, double p2) {
  const auto k1 = classify_pow(p1);
  const auto k2 = classify_pow(p2);
  double* d = reinterpret_cast<double*>(v);
  const __m256d mc1 = _mm256_set1_pd(-c1);
  const __m256d mc2 = _mm256_set1_pd(-c2);
  std::size_t j = 0;
#ifdef NLSLAB_HAVE_MVEC
  for (; j + 4 <= n; j += 4) {
    __m256d v0 = _mm256_loadu_pd(d + 2 * j);
    __m256d v1 = _mm256_loadu_pd(d + 2 * j + 4);
    __m256d m2 = mod2x4(v0, v1);
    __m256d ang = _mm256_mul_pd(mc1, pow_from_mod2x4(m2, p1, k1));
    if (c2 != 0.0) ang = _mm256_fmadd_pd(mc2, pow_from_mod2x4(m2, p2, k2), ang);
    __m256d c = _ZGVdN4v_cos(ang);
    __m256d s = _ZGVdN4v_sin(ang);
    __m256d c01 = _mm256_permute4x64_pd(c, _MM_SHUFFLE(1, 1, 0, 0));
    __m256d s01 = _mm256_permute4x64_pd(s, _MM_SHUFFLE(1, 1, 0, 0));
    __m256d c23 = _mm256_permute4x64_pd(c, _MM_SHUFFLE(3, 3, 2, 2));
    __m256d s23 = _mm256_permute4x64_pd(s, _MM_SHUFFLE(3, 3, 2, 2));
    __m256d r0 = _mm256_fmaddsub_pd(v0, c01, _mm256_mul_pd(_mm256_permute_pd(v0, 0x5), s01));
    __m256d r1 = _mm256_fmaddsub_pd(v1, c23, _mm256_mul_pd(_mm256_permute_pd(v1, 0x5), s23));
    _mm256_storeu_pd(d + 2 * j, r0);
    _mm256_storeu_pd(d + 2 * j + 4, r1);
  }
#endif
  for (; j < n; ++j) {
    const double m2 = std::norm(v[j]);
    double ang = -c1 * pow_from_mod2(m2, p1, k1);
    if (c2 != 0.0) ang -= c2 * pow_from_mod2(m2, p2, k2);
    v[j] *= cdouble(std::cos(ang), std::sin(ang));
  }
}

void cayley_rhs_avx2(const cdouble* w, cdouble* out, const double* gamma, double beta, std::size_t n) {
  const double* d = reinterpret_cast<const double*>(w);
  double* o = reinterpret_cast<double*>(out);
  const __m256d vbeta = _mm256_set1_pd(beta);
  auto scalar_at = [&](std::size_t j) {
    const cdouble left = (j > 0) ? w[j - 1] : cdouble{};
    const cdouble right = (j + 1 < n) ? w[j + 1] : cdouble{};
    const cdouble z = gamma[j] * w[j] - beta * (left + right);
    out[j] = cdouble(w[j].real() + z.imag(), w[j].imag() - z.real());
  };
  if (n < 6) {
    for (std::size_t j = 0; j < n; ++j) scalar_at(j);
    return;
  }
  scalar_at(0);
  std::size_t j = 1;
  for (; j + 2 <= n - 1; j += 2) {
    __m256d vj = _mm256_loadu_pd(d + 2 * j);
    __m256d vl = _mm256_loadu_pd(d + 2 * j - 2);
    __m256d vr = _mm256_loadu_pd(d + 2 * j + 2);
    __m128d g2 = _mm_loadu_pd(gamma + j);
    __m256d g = _mm256_permute4x64_pd(_mm256_castpd128_pd256(g2), _MM_SHUFFLE(1, 1, 0, 0));
    __m256d z = _mm256_fnmadd_pd(vbeta, _mm256_add_pd(vl, vr), _mm256_mul_pd(g, vj));
    __m256d zn = _mm256_sub_pd(_mm256_setzero_pd(), z);
    _mm256_storeu_pd(o + 2 * j, _mm256_addsub_pd(vj, _mm256_permute_pd(zn, 0x5)));
  }
  for (; j < n; ++j) scalar_at(j);
}

bool cpu_has_avx2_fma() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

}  // namespace

const Backend* avx2_backend() {
  static const Backend b{
      "avx2",
      &sum_mod2_weighted_avx2,
      &sum_pow_weighted_avx2,
      &dot_weighted_avx2,
      &phase_rotate_avx2,
      &cayley_rhs_avx2,
  };
  static const bool ok = cpu_has_avx2_fma();
  return ok ? &b : nullptr;
}

}  // namespace nlslab::kernels

#else  // non-x86: scalar only

namespace nlslab::kernels {
const Backend* avx2_backend() { return nullptr; }
}  // namespace nlslab::kernels

#endif
