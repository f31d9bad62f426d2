#pragma once

#include "nlslab/field.hpp"
#include "nlslab/params.hpp"

namespace nlslab {

// Positive radial solution of  W'' + (N-1)/r W' - (2/N) W + W^{1+4/N} = 0,
// W'(0) = 0, W(infinity) = 0, the ground state fixing the sharp
// Gagliardo-Nirenberg constant C_N = (N+2) / (N ||W||_2^{4/N}).
struct GroundStateResult {
  int dim = 0;
  double w0 = 0;    // W(0)
  double mass = 0;  // ||W||_2
  double CN = 0;
  double pohozaev1 = 0;  // | ||grad W||^2 + (2/N)||W||^2 - ||W||_{p+2}^{p+2} | relative
  double pohozaev2 = 0;  // | (N-2)/2 ||grad W||^2 + ||W||^2 - N/(p+2) ||W||_{p+2}^{p+2} | relative
  double grad_sq = 0;    // integrals accumulated inside the ODE solve
  double l2_sq = 0;
  double lp_sum = 0;  // ||W||_{p+2}^{p+2}, p = 4/N
  double splice_radius = 0;
  RadialField W;

  GroundStateResult() : W(RadialField::zeros(make_grid(1.0, 3, 3))) {}
};

// Shooting with bisection on W(0); adaptive Dormand-Prince integration with
// the norm integrals carried as extra quadrature components.  tol bounds the
// final bracket width on W(0) and must lie in (0, 1e-6].
GroundStateResult shoot_ground_state(int N, double tol);

// Memoized per dimension at tol = 1e-10.
const GroundStateResult& ground_state_cached(int N);

// ||f||_{4/N+2}^{4/N+2} / ( ||d_r f||_2^2 ||f||_2^{4/N} ); scale-invariant,
// maximized by the ground state where it equals C_N.
double gn_ratio(const RadialField& f);

// Right-hand side of the small-mass condition for the focusing-perturbation
// scattering regime (lambda1 > 0, lambda2 < 0, 2/N < p1 < p2 < 4/N); the
// admissible data satisfy ||phi||_2^{4/N} below this bound.
double threshold_mass_bound(const ModelParams& mp, double CN);

}  // namespace nlslab
