#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "nlslab/kernels.hpp"

using namespace nlslab::kernels;

namespace {

struct Data {
  std::vector<cdouble> v;
  std::vector<double> w;
};

Data make_samples(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::uniform_real_distribution<double> wdist(0.0, 3.0);
  Data d;
  d.v.reserve(n);
  d.w.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    d.v.emplace_back(dist(rng), dist(rng));
    d.w.push_back(wdist(rng));
  }
  return d;
}

}  // namespace

TEST_CASE("scalar and avx2 backends agree") {
  const Backend& s = scalar_backend();
  const Backend* a = avx2_backend();
  if (!a) {
    MESSAGE("avx2 unavailable on this host; scalar-only");
    return;
  }

  // odd sizes exercise the remainder loops
  for (std::size_t n : {1u, 2u, 3u, 7u, 64u, 257u, 1000u}) {
    Data d = make_samples(n, 42 + static_cast<unsigned>(n));

    const double m_s = s.sum_mod2_weighted(d.v.data(), d.w.data(), n);
    const double m_a = a->sum_mod2_weighted(d.v.data(), d.w.data(), n);
    CHECK(std::abs(m_s - m_a) <= 1e-12 * (std::abs(m_s) + 1.0));

    for (double q : {1.0, 2.0, 3.0, 4.0, 2.5, 3.3}) {
      const double p_s = s.sum_pow_weighted(d.v.data(), d.w.data(), q, n);
      const double p_a = a->sum_pow_weighted(d.v.data(), d.w.data(), q, n);
      CHECK(std::abs(p_s - p_a) <= 1e-12 * (std::abs(p_s) + 1.0));
    }

    Data g = make_samples(n, 1000 + static_cast<unsigned>(n));
    const cdouble dt_s = s.dot_weighted(d.v.data(), g.v.data(), d.w.data(), n);
    const cdouble dt_a = a->dot_weighted(d.v.data(), g.v.data(), d.w.data(), n);
    CHECK(std::abs(dt_s - dt_a) <= 1e-12 * (std::abs(dt_s) + 1.0));

    for (auto [c1, p1, c2, p2] :
         {std::array<double, 4>{0.3, 2.0, 0.0, 0.0}, std::array<double, 4>{0.2, 1.0, -0.4, 2.7},
          std::array<double, 4>{-1.1, 0.5, 0.7, 1.2}}) {
      std::vector<cdouble> vs = d.v, va = d.v;
      s.phase_rotate(vs.data(), n, c1, p1, c2, p2);
      a->phase_rotate(va.data(), n, c1, p1, c2, p2);
      for (std::size_t j = 0; j < n; ++j)
        CHECK(std::abs(vs[j] - va[j]) <= 1e-13 * (std::abs(vs[j]) + 1.0));
    }

    std::vector<double> gamma(n);
    std::mt19937 rng(9 + static_cast<unsigned>(n));
    std::uniform_real_distribution<double> gd(0.1, 4.0);
    for (auto& x : gamma) x = gd(rng);
    std::vector<cdouble> out_s(n), out_a(n);
    s.cayley_rhs(d.v.data(), out_s.data(), gamma.data(), 0.37, n);
    a->cayley_rhs(d.v.data(), out_a.data(), gamma.data(), 0.37, n);
    for (std::size_t j = 0; j < n; ++j)
      CHECK(std::abs(out_s[j] - out_a[j]) <= 1e-13 * (std::abs(out_s[j]) + 1.0));
  }
}

TEST_CASE("phase rotation preserves moduli to machine precision") {
  for (const Backend* b : {&scalar_backend(), avx2_backend()}) {
    if (!b) continue;
    Data d = make_samples(513, 77);
    std::vector<cdouble> v = d.v;
    b->phase_rotate(v.data(), v.size(), 0.8, 1.7, -0.3, 2.4);
    for (std::size_t j = 0; j < v.size(); ++j)
      CHECK(std::abs(std::abs(v[j]) - std::abs(d.v[j])) <= 4e-16 * std::abs(d.v[j]) + 1e-300);
  }
}

TEST_CASE("force_backend overrides the automatic choice") {
  force_backend(&scalar_backend());
  CHECK(std::string(active().name) == "scalar");
  force_backend(nullptr);
  if (avx2_backend()) CHECK(std::string(active().name) == "avx2");
}
