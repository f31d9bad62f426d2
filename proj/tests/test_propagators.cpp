#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "nlslab/propagators.hpp"

using namespace nlslab;
using doctest::Approx;

namespace {

RadialField noise_field(GridPtr grid, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::vector<cdouble> vals(grid->node_count());
  const double R = grid->radius();
  for (int j = 0; j < grid->node_count(); ++j) {
    const double r = grid->nodes()[j];
    const double envelope = std::exp(-4.0 * (r / R) * (r / R));
    vals[j] = cdouble(amp(rng), amp(rng)) * envelope;
  }
  return RadialField(std::move(grid), std::move(vals));
}

// free evolution of e^{-|x|^2}: (1+4it)^{-N/2} exp(-|x|^2/(1+4it))
RadialField free_gaussian(GridPtr grid, double t) {
  const cdouble denom(1.0, 4.0 * t);
  const cdouble pref = std::pow(denom, -0.5 * grid->dim());
  return RadialField::from_function(std::move(grid), [=](double r) {
    return pref * std::exp(-r * r / denom);
  });
}

}  // namespace

TEST_CASE("free_step at dt = 0 is the identity") {
  GridPtr g = make_grid(10.0, 128, 3);
  RadialField f = noise_field(g, 3);
  RadialField out = free_step(f, 0.0);
  for (std::size_t j = 0; j < f.size(); ++j) CHECK(out.values()[j] == f.values()[j]);
}

TEST_CASE("free_step is unitary") {
  for (int N : {3, 4, 6}) {
    GridPtr g = make_grid(10.0, 257, N);
    RadialField f = noise_field(g, 5 + N);
    const double n0 = norm_l2(f);
    RadialField out = free_step(f, 0.01);
    CHECK(norm_l2(out) == Approx(n0).epsilon(1e-12));
    out = free_step(out, -0.02);
    CHECK(norm_l2(out) == Approx(n0).epsilon(1e-12));
  }
}

TEST_CASE("free_step time reversal") {
  GridPtr g = make_grid(10.0, 256, 4);
  RadialField f = noise_field(g, 11);
  RadialField back = free_step(free_step(f, 0.013), -0.013);
  CHECK(rel_l2_diff(back, f) <= 1e-10);
}

TEST_CASE("free gaussian evolution matches the closed form") {
  GridPtr g = make_grid(20.0, 4096, 3);
  RadialField f = RadialField::gaussian(g, 1.0, 1.0);
  RadialField evolved = free_evolve(f, 0.25, 1000);
  RadialField exact = free_gaussian(g, 0.25);
  CHECK(rel_l2_diff(evolved, exact) <= 1e-3);
}

TEST_CASE("free_step conserves the discrete kinetic form") {
  GridPtr g = make_grid(10.0, 512, 3);
  RadialField f = RadialField::gaussian(g, 1.0, 1.5);
  const double k0 = dirichlet_form(f);
  RadialField out = free_evolve(f, 0.2, 50);
  CHECK(dirichlet_form(out) == Approx(k0).epsilon(1e-10));
}

TEST_CASE("nonlinear phase step: modulus invariance and closed forms") {
  GridPtr g = make_grid(10.0, 200, 3);
  RadialField f = noise_field(g, 17);
  ModelParams mp{3, 1.3, -0.7, 1.5, 2.5};
  RadialField out = nonlinear_phase_step(f, mp, 0.37);
  for (std::size_t j = 0; j < f.size(); ++j) {
    CHECK(std::abs(out.values()[j]) ==
          Approx(std::abs(f.values()[j])).epsilon(4e-16).scale(1e-300));
  }

  ModelParams zero{3, 0.0, 0.0, 2.0, 3.0};
  RadialField same = nonlinear_phase_step(f, zero, 0.37);
  for (std::size_t j = 0; j < f.size(); ++j) CHECK(same.values()[j] == f.values()[j]);

  // constant field u = 1: phase e^{-i dt lambda}
  RadialField ones = RadialField::from_function(g, [](double) { return cdouble(1.0, 0.0); });
  ModelParams cubic{3, 1.0, 0.0, 2.0, 0.0};
  RadialField rotated = nonlinear_phase_step(ones, cubic, 0.1);
  const cdouble expected = std::polar(1.0, -0.1);
  for (std::size_t j = 0; j < rotated.size(); ++j)
    CHECK(std::abs(rotated.values()[j] - expected) <= 1e-15);
}

TEST_CASE("strang with vanishing couplings reduces to the free step") {
  GridPtr g = make_grid(10.0, 256, 3);
  RadialField f = noise_field(g, 19);
  ModelParams mp{3, 1e-300, 0.0, 2.0, 0.0};
  StepperConfig cfg;
  cfg.dt = 0.01;
  RadialField a = strang_step_physical(f, mp, cfg);
  RadialField b = free_step(f, 0.01);
  CHECK(rel_l2_diff(a, b) <= 1e-14);
}

TEST_CASE("strang conserves mass over many steps") {
  GridPtr g = make_grid(15.0, 512, 3);
  RadialField u = RadialField::gaussian(g, 1.0, 1.0);
  ModelParams mp{3, 1.0, 0.0, 2.0, 0.0};
  StepperConfig cfg;
  cfg.dt = 1e-3;
  const double m0 = norm_l2(u);
  for (int k = 0; k < 1000; ++k) u = strang_step_physical(u, mp, cfg);
  CHECK(std::abs(norm_l2(u) - m0) / m0 <= 1e-10);
}

TEST_CASE("strang self-convergence is second order") {
  GridPtr g = make_grid(12.0, 384, 3);
  ModelParams mp{3, 1.0, 0.0, 2.0, 0.0};
  const double T = 0.2;
  auto run = [&](double dt) {
    RadialField u = RadialField::gaussian(g, 1.2, 1.0);
    StepperConfig cfg;
    cfg.dt = dt;
    const int n = static_cast<int>(std::lround(T / dt));
    for (int k = 0; k < n; ++k) u = strang_step_physical(u, mp, cfg);
    return u;
  };
  RadialField ref = run(T / 320.0);
  const double e1 = rel_l2_diff(run(T / 40.0), ref);
  const double e2 = rel_l2_diff(run(T / 80.0), ref);
  CHECK(e1 / e2 >= 3.5);
  CHECK(e1 / e2 <= 4.5);
}

TEST_CASE("energy drift stays small on a defocusing run") {
  GridPtr g = make_grid(15.0, 1024, 3);
  RadialField u = RadialField::gaussian(g, 1.0, 1.0);
  ModelParams mp{3, 1.0, 0.0, 2.0, 0.0};
  StepperConfig cfg;
  cfg.dt = 1e-3;
  const double e0 = energy(u, mp);
  for (int k = 0; k < 1000; ++k) u = strang_step_physical(u, mp, cfg);
  CHECK(std::abs(energy(u, mp) - e0) / std::abs(e0) <= 1e-6);
}

TEST_CASE("lens phase integral closed forms") {
  CHECK(lens_phase_integral(0.0, 0.5, 2.0, 3) == Approx(0.375).epsilon(1e-14));
  CHECK(lens_phase_integral(0.0, 0.5, 2.0 / 3.0, 3) == Approx(std::log(2.0)).epsilon(1e-12));
  // mean value: integral/ds -> (1-s)^gamma as ds -> 0
  const double s = 0.3, ds = 1e-6, p = 1.1;
  const double gamma = 0.5 * (3 * p - 4.0);
  const double mean = lens_phase_integral(s, ds, p, 3) / ds;
  CHECK(std::abs(mean - std::pow(1.0 - s, gamma)) <=
        std::abs(gamma) * std::pow(1.0 - s, gamma - 1.0) * ds);
  CHECK(mean == Approx(std::pow(1.0 - s - 0.5 * ds, gamma)).epsilon(1e-10));
  CHECK_THROWS_AS(lens_phase_integral(0.6, 0.5, 2.0, 3), DomainError);
}

TEST_CASE("power weight first moment matches quadrature") {
  const double s = 0.4, ds = 0.05;
  for (double mu : {-1.5, -1.0, 0.0, 1.3}) {
    // Simpson on a fine mesh as the oracle
    const int n = 4000;
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
      const double a = s + ds * k / n, b = s + ds * (k + 1) / n, m = 0.5 * (a + b);
      auto f = [&](double tau) { return (tau - s) * std::pow(1.0 - tau, mu); };
      acc += (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
    }
    CHECK(power_weight_first_moment(s, ds, mu) == Approx(acc).epsilon(1e-10));
  }
}

TEST_CASE("lens stepper conserves mass in s") {
  GridPtr g = make_grid(12.0, 512, 3);
  ModelParams mp{3, 1.0, 1.0, 1.0, 2.0};
  LensState st(0.0, apply_quadratic_phase(RadialField::gaussian(g, 1.0, 1.0), -0.25));
  const double m0 = norm_l2(st.v);
  StepperConfig cfg;
  cfg.dt = 2e-3;
  while (st.s < 0.9) {
    StepperConfig c2 = cfg;
    c2.dt = std::min(cfg.dt, 0.05 * (1.0 - st.s));
    st = strang_step_lens(st, mp, c2);
  }
  CHECK(std::abs(norm_l2(st.v) - m0) / m0 <= 1e-10);
}

TEST_CASE("lens stepper with zero couplings equals the free flow in s") {
  GridPtr g = make_grid(12.0, 256, 3);
  ModelParams mp{3, 0.0, 0.0, 1.0, 2.0};
  RadialField psi = RadialField::gaussian(g, 0.8, 1.3);
  LensState st(0.0, psi);
  StepperConfig cfg;
  cfg.dt = 0.01;
  for (int k = 0; k < 20; ++k) st = strang_step_lens(st, mp, cfg);
  RadialField direct = free_evolve(psi, 0.2, 20);
  CHECK(rel_l2_diff(st.v, direct) <= 1e-13);
  CHECK_THROWS_AS(strang_step_lens(LensState(0.995, psi), mp, cfg), DomainError);
}

TEST_CASE("picard iterates: free limit, contraction, stepper agreement") {
  GridPtr g = make_grid(12.0, 512, 3);
  RadialField phi = RadialField::gaussian(g, 0.2, 1.0);
  StepperConfig cfg;
  cfg.dt = 1e-3;
  const double T = 0.1;

  ModelParams freeish{3, 1e-300, 0.0, 2.0, 0.0};
  RadialField first = picard_iterate(phi, freeish, T, 1, cfg);
  RadialField jt = free_evolve(phi, T, 100);
  CHECK(rel_l2_diff(first, jt) <= 1e-13);

  ModelParams mp{3, 1.0, 0.0, 2.0, 0.0};
  double prev_diff = -1.0;
  RadialField prev = picard_iterate(phi, mp, T, 1, cfg);
  for (int k = 2; k <= 6; ++k) {
    RadialField cur = picard_iterate(phi, mp, T, k, cfg);
    const double diff = norm_l2(axpy(-1.0, prev, cur));
    if (prev_diff >= 0.0) CHECK(diff < prev_diff);
    prev_diff = diff;
    prev = cur;
  }

  RadialField u = phi;
  const int n = static_cast<int>(std::lround(T / cfg.dt));
  for (int k = 0; k < n; ++k) u = strang_step_physical(u, mp, cfg);
  CHECK(rel_l2_diff(prev, u) <= 1e-5);
}
