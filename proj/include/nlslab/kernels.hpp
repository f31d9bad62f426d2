#pragma once

#include <complex>
#include <cstddef>

namespace nlslab::kernels {

using cdouble = std::complex<double>;

// Inner-loop kernels: a scalar reference implementation plus an AVX2/FMA
// variant selected once at startup.  The two paths are equivalence-tested;
// results may differ by a few ulp (summation order, libmvec vs libm).
struct Backend {
  const char* name;

  // sum_j weight[j] * |v[j]|^2
  double (*sum_mod2_weighted)(const cdouble* v, const double* weight, std::size_t n);

  // sum_j weight[j] * |v[j]|^q, q > 0
  double (*sum_pow_weighted)(const cdouble* v, const double* weight, double q, std::size_t n);

  // sum_j weight[j] * f[j] * conj(g[j])
  cdouble (*dot_weighted)(const cdouble* f, const cdouble* g, const double* weight, std::size_t n);

  // v[j] *= exp(-i (c1 |v[j]|^p1 + c2 |v[j]|^p2)); c2 == 0 skips the second power
  void (*phase_rotate)(cdouble* v, std::size_t n, double c1, double p1, double c2, double p2);

  // out[j] = w[j] - i (gamma[j] w[j] - beta (w[j-1] + w[j+1])), w[-1] = w[n] = 0
  void (*cayley_rhs)(const cdouble* w, cdouble* out, const double* gamma, double beta, std::size_t n);
};

const Backend& scalar_backend();

// nullptr when the CPU lacks AVX2+FMA.
const Backend* avx2_backend();

// Runtime selection; NLSLAB_FORCE_SCALAR=1 in the environment forces scalar.
const Backend& active();

// Test hook; nullptr restores the automatic choice.
void force_backend(const Backend* b);

}  // namespace nlslab::kernels
