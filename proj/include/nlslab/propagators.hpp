#pragma once

#include "nlslab/field.hpp"
#include "nlslab/params.hpp"

namespace nlslab {

struct StepperConfig {
  double dt = 1e-3;
  int substeps_linear = 1;
  enum class Scheme { Strang } scheme = Scheme::Strang;
  // lens stepper near s = 1: ds_k = min(dt, near_one_ratio * (1 - s_k))
  double near_one_ratio = 0.05;

  void validate() const {
    if (!(dt > 0.0)) throw ParameterError("StepperConfig: dt > 0 required");
    if (substeps_linear < 1) throw ParameterError("StepperConfig: substeps_linear >= 1 required");
    if (!(near_one_ratio > 0.0)) throw ParameterError("StepperConfig: near_one_ratio > 0 required");
  }
};

// Field in the pseudoconformal frame together with its lens time s in [0,1).
struct LensState {
  double s = 0.0;
  RadialField v;

  LensState(double s_, RadialField v_) : s(s_), v(std::move(v_)) {
    if (!(s >= 0.0 && s < 1.0)) throw DomainError("LensState: s must lie in [0,1)");
  }
};

// One Cayley/Crank-Nicolson step of the free flow e^{i dt Delta} on the
// reduced field: solve (I + i dt/2 A) w+ = (I - i dt/2 A) w with
// A = -d^2/dr^2 + (N-1)(N-3)/(4 r^2).  Norm-preserving; dt may be negative.
RadialField free_step(const RadialField& f, double dt);

// J(t) applied as `substeps` Cayley steps.
RadialField free_evolve(const RadialField& f, double t, int substeps);

// Exact sub-flow of i u_t = lambda1 |u|^p1 u + lambda2 |u|^p2 u:
// pointwise phase rotation, moduli unchanged.
RadialField nonlinear_phase_step(const RadialField& f, const ModelParams& mp, double dt);

RadialField strang_step_physical(const RadialField& f, const ModelParams& mp,
                                 const StepperConfig& cfg);

// integral_s^{s+ds} (1-tau)^mu dtau, with the log form at mu = -1
double power_weight_integral(double s, double ds, double mu);
// integral_s^{s+ds} (tau-s) (1-tau)^mu dtau
double power_weight_first_moment(double s, double ds, double mu);

// integral of the lens coefficient h(tau) = (1-tau)^{(Np-4)/2} over [s, s+ds];
// logarithmic at the borderline p = 2/N.
double lens_phase_integral(double s, double ds, double p, int N);

// Strang step for i v_s + Delta v = lambda1 h1(s)|v|^p1 v + lambda2 h2(s)|v|^p2 v.
// Each nonlinear half-step uses the exact integral of h_i over its half-interval.
LensState strang_step_lens(const LensState& state, const ModelParams& mp,
                           const StepperConfig& cfg);

// Fixed-point iteration of the Duhamel map, trapezoid in time on the cfg.dt
// grid, J by Cayley steps.  Returns the iters-th iterate at time T.
RadialField picard_iterate(const RadialField& phi, const ModelParams& mp, double T, int iters,
                           const StepperConfig& cfg);

// (1/2)||grad u||^2 + lambda1/(p1+2) ||u||_{p1+2}^{p1+2} + lambda2/(p2+2) ||u||_{p2+2}^{p2+2},
// kinetic part through the reduced Dirichlet form.
double energy(const RadialField& f, const ModelParams& mp);

}  // namespace nlslab
