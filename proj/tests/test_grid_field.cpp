#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "nlslab/field.hpp"

using namespace nlslab;
using doctest::Approx;

namespace {

RadialField random_field(GridPtr grid, std::mt19937& rng, double scale = 1.0) {
  // decaying random smooth-ish field: a few Gaussians with random widths
  std::uniform_real_distribution<double> amp(-scale, scale);
  std::uniform_real_distribution<double> wid(0.5, 3.0);
  struct Term {
    double ar, ai, w;
  };
  std::vector<Term> terms;
  for (int k = 0; k < 3; ++k) terms.push_back({amp(rng), amp(rng), wid(rng)});
  return RadialField::from_function(std::move(grid), [terms](double r) {
    cdouble z{};
    for (const auto& t : terms) z += cdouble(t.ar, t.ai) * std::exp(-(r / t.w) * (r / t.w));
    return z;
  });
}

}  // namespace

TEST_CASE("grid construction and node layout") {
  GridPtr g = make_grid(10.0, 9, 3);
  CHECK(g->spacing() == Approx(1.0));
  CHECK(g->nodes().front() == Approx(1.0));
  CHECK(g->nodes().back() == Approx(9.0));
  CHECK(g->node_count() == 9);

  GridPtr g2 = make_grid(20.0, 4095, 3);
  CHECK(g2->spacing() == Approx(20.0 / 4096));

  CHECK_THROWS_AS(make_grid(10.0, 9, 2), ParameterError);
  CHECK_THROWS_AS(make_grid(-1.0, 64, 3), ParameterError);
  CHECK_THROWS_AS(make_grid(10.0, 1, 3), ParameterError);
}

TEST_CASE("sphere areas") {
  CHECK(unit_sphere_area(3) == Approx(4.0 * std::numbers::pi).epsilon(1e-13));
  CHECK(unit_sphere_area(4) == Approx(2.0 * std::numbers::pi * std::numbers::pi).epsilon(1e-13));
}

TEST_CASE("gaussian L2 norm against the closed form") {
  // ||e^{-|x|^2}||_2 = (pi/2)^{3/4} in N = 3
  GridPtr g = make_grid(10.0, 4096, 3);
  RadialField f = RadialField::gaussian(g, 1.0, 1.0);
  const double expected = std::pow(std::numbers::pi / 2.0, 0.75);
  CHECK(norm_lr(f, 2.0) == Approx(expected).epsilon(1e-4));
  CHECK(norm_l2(f) == Approx(expected).epsilon(1e-4));
  CHECK(expected == Approx(1.4031).epsilon(1e-4));
}

TEST_CASE("gaussian weighted norm against the moment integral") {
  // || |x| e^{-|x|^2} ||_2^2 = (3/4)(pi/2)^{3/2}
  GridPtr g = make_grid(10.0, 4096, 3);
  RadialField f = RadialField::gaussian(g, 1.0, 1.0);
  const double expected = std::sqrt(0.75 * std::pow(std::numbers::pi / 2.0, 1.5));
  CHECK(norm_weighted(f) == Approx(expected).epsilon(1e-4));
  CHECK(expected == Approx(1.2151).epsilon(1e-4));
}

TEST_CASE("zero field has zero norms") {
  GridPtr g = make_grid(10.0, 128, 3);
  RadialField z = RadialField::zeros(g);
  CHECK(norm_lr(z, 2.0) == 0.0);
  CHECK(norm_lr(z, 3.5) == 0.0);
  CHECK(norm_h1(z) == 0.0);
  CHECK(norm_weighted(z) == 0.0);
  CHECK(norm_sigma(z) == 0.0);
}

TEST_CASE("norm_lr rejects r < 1") {
  GridPtr g = make_grid(10.0, 64, 3);
  RadialField f = RadialField::gaussian(g, 1.0, 1.0);
  CHECK_THROWS_AS(norm_lr(f, 0.5), ParameterError);
}

TEST_CASE("norm homogeneity and triangle inequality on random fields") {
  GridPtr g = make_grid(12.0, 256, 4);
  std::mt19937 rng(7);
  const cdouble c(2.0, 1.0);
  for (int it = 0; it < 50; ++it) {
    RadialField f = random_field(g, rng);
    RadialField h = random_field(g, rng);
    for (double r : {2.0, 3.0, 4.5}) {
      CHECK(norm_lr(scaled(f, c), r) == Approx(std::abs(c) * norm_lr(f, r)).epsilon(1e-12));
      CHECK(norm_lr(axpy(1.0, f, h), r) <= norm_lr(f, r) + norm_lr(h, r) + 1e-12);
    }
    CHECK(norm_sigma(f) >= norm_h1(f));
    CHECK(norm_h1(scaled(f, c)) == Approx(std::abs(c) * norm_h1(f)).epsilon(1e-12));
    CHECK(norm_sigma(scaled(f, c)) == Approx(std::abs(c) * norm_sigma(f)).epsilon(1e-12));
  }
}

TEST_CASE("norm_lr at r=2 agrees with the pairing") {
  GridPtr g = make_grid(12.0, 256, 3);
  std::mt19937 rng(11);
  for (int it = 0; it < 20; ++it) {
    RadialField f = random_field(g, rng);
    const double via_pairing = std::sqrt(pairing(f, f).real());
    CHECK(norm_lr(f, 2.0) == Approx(via_pairing).epsilon(1e-12));
    CHECK(std::abs(pairing(f, f).imag()) <= 1e-12 * via_pairing * via_pairing);
  }
}

TEST_CASE("pairing bilinearity and zero cases") {
  GridPtr g = make_grid(12.0, 256, 3);
  std::mt19937 rng(13);
  RadialField f = random_field(g, rng);
  RadialField h = random_field(g, rng);
  RadialField theta = random_field(g, rng);
  const cdouble a(3.0, 0.0);
  const cdouble lhs = pairing(axpy(a, f, h), theta);
  const cdouble rhs = a * pairing(f, theta) + pairing(h, theta);
  CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
  CHECK(pairing(RadialField::zeros(g), theta) == cdouble(0.0, 0.0));

  GridPtr other = make_grid(12.0, 255, 3);
  CHECK_THROWS_AS(pairing(f, RadialField::zeros(other)), StructuralError);
}

TEST_CASE("reduced representation round trip is machine exact") {
  GridPtr g = make_grid(9.0, 200, 5);
  std::mt19937 rng(17);
  RadialField f = random_field(g, rng);
  RadialField back = RadialField::from_reduced(g, f.reduced());
  for (std::size_t j = 0; j < f.size(); ++j) {
    CHECK(std::abs(back.values()[j] - f.values()[j]) <= 2e-15 * std::abs(f.values()[j]));
  }
}

TEST_CASE("H1 norm converges at second order for the Gaussian") {
  // centered differences: halving h cuts the gradient-norm error ~4x
  const double expected_l2sq = std::pow(std::numbers::pi / 2.0, 1.5);
  const double expected_gradsq = 3.0 * std::pow(std::numbers::pi / 2.0, 1.5);
  const double expected = std::sqrt(expected_l2sq + expected_gradsq);
  auto h1_err = [&](int M) {
    GridPtr g = make_grid(10.0, M, 3);
    RadialField f = RadialField::gaussian(g, 1.0, 1.0);
    return std::abs(norm_h1(f) - expected);
  };
  const double e1 = h1_err(255);
  const double e2 = h1_err(511);
  CHECK(e1 / e2 == Approx(4.0).epsilon(0.5));
}

TEST_CASE("quadrature error of the L2 norm is tiny for resolved Gaussians") {
  const double expected = std::pow(std::numbers::pi / 2.0, 0.75);
  for (int M : {511, 1023}) {
    GridPtr g = make_grid(10.0, M, 3);
    RadialField f = RadialField::gaussian(g, 1.0, 1.0);
    CHECK(std::abs(norm_l2(f) - expected) <= 1e-10);
  }
}

TEST_CASE("dirichlet form approximates the gradient norm") {
  // ||grad e^{-|x|^2}||_2^2 = 3 (pi/2)^{3/2}
  GridPtr g = make_grid(10.0, 4096, 3);
  RadialField f = RadialField::gaussian(g, 1.0, 1.0);
  const double expected = 3.0 * std::pow(std::numbers::pi / 2.0, 1.5);
  CHECK(dirichlet_form(f) == Approx(expected).epsilon(1e-4));
}

TEST_CASE("field csv round trip is bit exact") {
  GridPtr g = make_grid(7.5, 100, 4);
  std::mt19937 rng(23);
  RadialField f = random_field(g, rng);
  std::stringstream ss;
  write_field_csv(f, ss);
  RadialField back = read_field_csv(ss);
  REQUIRE(back.grid().same_layout(f.grid()));
  for (std::size_t j = 0; j < f.size(); ++j) CHECK(back.values()[j] == f.values()[j]);
}
