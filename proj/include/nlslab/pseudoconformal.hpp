#pragma once

#include <vector>

#include "nlslab/propagators.hpp"

namespace nlslab {

// Frame maps between u(t,x) and v(s,y):
//   s = t/(1+t), y = x/(1+t),
//   v(s,y) = (1+t)^{N/2} u(t,x) exp(-i |x|^2 / (4(1+t))).
// The coordinate dilation interpolates |u| and an unwrapped smooth phase with
// monotone cubics; the quadratic chirp enters only through exact nodewise
// evaluation.  t = 0 onto the same grid is exact.
LensState to_lens(const RadialField& u, double t, GridPtr lens_grid);

// Inverse map; returns (u, t) with t = s/(1-s).
std::pair<RadialField, double> from_lens(const LensState& state, GridPtr physical_grid);

struct IdentityResiduals {
  double grad_lens = 0;    // (2.3)-type: ||grad v||^2 vs 1/4 ||(x + 2i(1+t) d_r) u||^2
  double grad_physical = 0;  // symmetric statement for ||grad u||^2
  double mass = 0;         // beta = 0 norm transfer
  std::vector<std::pair<double, double>> lp;  // (beta, residual) for beta in {p1, p2}
};

IdentityResiduals check_identities(const RadialField& u, double t, const LensState& lens,
                                   const ModelParams& mp);

struct ExtractionReport {
  std::vector<double> eps;         // 1 - s_k
  std::vector<double> sigma_diff;  // ||u+^{(k+1)} - u+^{(k)}||_Sigma
  std::vector<double> l2_diff;
  double mass_u_plus = 0;
};

// Scattering-state extraction: u+^{(k)} = e^{i|y|^2/4} J(-1) v(s_k) for lens
// states approaching s = 1; the last candidate is returned.
std::pair<RadialField, ExtractionReport> extract_scattering_state(
    const std::vector<LensState>& states, int j_substeps = 1000);

}  // namespace nlslab
