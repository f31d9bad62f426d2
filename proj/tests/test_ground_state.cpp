#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nlslab/ground_state.hpp"

using namespace nlslab;
using doctest::Approx;

TEST_CASE("shooting solution satisfies both Pohozaev identities") {
  for (int N : {3, 4, 5}) {
    GroundStateResult gs = shoot_ground_state(N, 1e-10);
    CHECK(gs.pohozaev1 <= 1e-6);
    CHECK(gs.pohozaev2 <= 1e-6);
    CHECK(gs.w0 > 0.0);
    CHECK(gs.mass > 0.0);
  }
}

TEST_CASE("profile is positive and monotone up to the splice") {
  GroundStateResult gs = shoot_ground_state(3, 1e-10);
  const auto& vals = gs.W.values();
  const auto& nodes = gs.W.grid().nodes();
  for (std::size_t j = 0; j + 1 < vals.size(); ++j) {
    if (nodes[j + 1] > gs.splice_radius) break;
    CHECK(vals[j].real() >= vals[j + 1].real());
    CHECK(vals[j].imag() == 0.0);
    CHECK(vals[j].real() > 0.0);
  }
  // W(0) extrapolates to w0
  CHECK(vals[0].real() == Approx(gs.w0).epsilon(1e-4));
}

TEST_CASE("CN recomputes exactly from the stored mass") {
  GroundStateResult gs = shoot_ground_state(4, 1e-8);
  const double recomputed = (gs.dim + 2.0) / (gs.dim * std::pow(gs.mass, 4.0 / gs.dim));
  CHECK(recomputed == gs.CN);
}

TEST_CASE("shooting is deterministic and reproducible") {
  GroundStateResult a = shoot_ground_state(3, 1e-9);
  GroundStateResult b = shoot_ground_state(3, 1e-9);
  CHECK(a.w0 == b.w0);
  CHECK(a.mass == b.mass);
  CHECK(a.CN == b.CN);
}

TEST_CASE("tolerance validation") {
  CHECK_THROWS_AS(shoot_ground_state(3, 0.0), ParameterError);
  CHECK_THROWS_AS(shoot_ground_state(3, 1e-3), ParameterError);
  CHECK_THROWS_AS(shoot_ground_state(2, 1e-8), ParameterError);
}

TEST_CASE("gn_ratio is sharp at the ground state") {
  for (int N : {3, 4}) {
    const GroundStateResult& gs = ground_state_cached(N);
    CHECK(gn_ratio(gs.W) == Approx(gs.CN).epsilon(1e-3));
  }
}

TEST_CASE("gn inequality holds on random smooth fields") {
  const GroundStateResult& gs = ground_state_cached(3);
  GridPtr g = make_grid(15.0, 1024, 3);
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> amp(-2.0, 2.0);
  std::uniform_real_distribution<double> wid(0.5, 3.0);
  for (int it = 0; it < 100; ++it) {
    struct Term {
      double ar, ai, w;
    };
    std::vector<Term> terms;
    for (int k = 0; k < 3; ++k) terms.push_back({amp(rng), amp(rng), wid(rng)});
    RadialField f = RadialField::from_function(g, [&](double r) {
      cdouble z{};
      for (const auto& t : terms) z += cdouble(t.ar, t.ai) * std::exp(-(r / t.w) * (r / t.w));
      return z;
    });
    if (norm_l2(f) < 1e-12) continue;
    CHECK(gn_ratio(f) <= gs.CN * (1.0 + 1e-3));
  }
}

TEST_CASE("gn_ratio is dilation invariant") {
  // f(mu r) sampled on the grid shrunk by mu: same samples, rescaled sums,
  // so the invariance is pure exponent bookkeeping
  auto field_at_scale = [&](double mu) {
    GridPtr g = make_grid(15.0 / mu, 2048, 3);
    return RadialField::from_function(g, [mu](double r) {
      const double x = mu * r;
      return cdouble(std::exp(-x * x) + 0.5 * std::exp(-0.3 * x * x), 0.0);
    });
  };
  const double base = gn_ratio(field_at_scale(1.0));
  const double dil = gn_ratio(field_at_scale(2.0));
  CHECK(dil == Approx(base).epsilon(1e-6));
}

TEST_CASE("gn_ratio rejects the zero field") {
  GridPtr g = make_grid(10.0, 64, 3);
  CHECK_THROWS_AS(gn_ratio(RadialField::zeros(g)), DomainError);
}

TEST_CASE("random 1% perturbations never beat the sharp constant meaningfully") {
  const GroundStateResult& gs = ground_state_cached(3);
  const double base = gn_ratio(gs.W);
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_real_distribution<double> wid(1.0, 6.0);
  for (int it = 0; it < 20; ++it) {
    const double a = amp(rng), w = wid(rng);
    std::vector<cdouble> vals = gs.W.values();
    const auto& nodes = gs.W.grid().nodes();
    for (std::size_t j = 0; j < vals.size(); ++j) {
      const double bump = 1.0 + 0.01 * a * std::exp(-(nodes[j] / w) * (nodes[j] / w));
      vals[j] *= bump;
    }
    RadialField perturbed(gs.W.grid_ptr(), std::move(vals));
    CHECK(gn_ratio(perturbed) <= base * (1.0 + 1e-4));
  }
}

TEST_CASE("threshold bound exponent bookkeeping at N=3") {
  // (4 - N p1)/(N(p2 - p1)) = 4/3 and (4 - N p2)/(N(p2 - p1)) = 1/3
  const double a1 = 4.0 - 3.0 * 0.8;
  const double a2 = 4.0 - 3.0 * 1.2;
  const double span = 3.0 * (1.2 - 0.8);
  CHECK(a1 / span == Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(a2 / span == Approx(1.0 / 3.0).epsilon(1e-12));

  // denominator 2N(p2-p1) C_N = 2*3*0.4*C_3
  const double C3 = ground_state_cached(3).CN;
  ModelParams mp{3, 1.0, -1.0, 0.8, 1.2};
  const double bound = threshold_mass_bound(mp, C3);
  const double expected =
      (1.6 / (2.4 * C3)) * std::pow(3.2, 4.0 / 3.0) * std::pow(0.64 / 2.24, 1.0 / 3.0);
  CHECK(bound == Approx(expected).epsilon(1e-12));
}

TEST_CASE("threshold bound decreases as the focusing coupling strengthens") {
  const double C3 = ground_state_cached(3).CN;
  double prev = 1e300;
  for (double l2 : {-0.5, -1.0, -2.0, -4.0}) {
    ModelParams mp{3, 1.0, l2, 0.8, 1.2};
    const double bound = threshold_mass_bound(mp, C3);
    CHECK(bound < prev);
    prev = bound;
  }
}

TEST_CASE("threshold bound rejects out-of-regime parameters") {
  const double C3 = ground_state_cached(3).CN;
  CHECK_THROWS_AS(threshold_mass_bound(ModelParams{3, 1.0, 1.0, 0.8, 1.2}, C3), DomainError);
  CHECK_THROWS_AS(threshold_mass_bound(ModelParams{3, -1.0, -1.0, 0.8, 1.2}, C3), DomainError);
  CHECK_THROWS_AS(threshold_mass_bound(ModelParams{3, 1.0, -1.0, 0.5, 1.2}, C3), DomainError);
  CHECK_THROWS_AS(threshold_mass_bound(ModelParams{3, 1.0, -1.0, 0.8, 1.5}, C3), DomainError);
}
