#include "nlslab/propagators.hpp"

#include <cmath>
#include <vector>

#include "nlslab/kernels.hpp"

namespace nlslab {
namespace {

// Thomas solve of (I + i alpha A) x = rhs with A = tridiag(-1/h^2, d_j, -1/h^2),
// d_j = 2/h^2 + V_j.  Strictly diagonally dominant (|b_j|^2 = 1 + alpha^2 d_j^2
// exceeds (2 alpha/h^2)^2 since d_j >= 2/h^2), so no pivoting.
void cayley_solve(std::vector<cdouble>& w, const RadialGrid& grid, double alpha) {
  const std::size_t n = w.size();
  const double h = grid.spacing();
  const double off = -alpha / (h * h);  // imaginary part of the off-diagonal
  const auto& V = grid.centrifugal();

  static thread_local std::vector<cdouble> cp, dp;
  cp.assign(n, cdouble{});
  dp.assign(n, cdouble{});

  const cdouble c(0.0, off);
  auto diag = [&](std::size_t j) {
    return cdouble(1.0, alpha * (2.0 / (h * h) + V[j]));
  };

  cdouble den = diag(0);
  if (std::abs(den) < 1e-300) throw NumericalError("cayley_solve: singular pivot");
  cp[0] = c / den;
  dp[0] = w[0] / den;
  for (std::size_t j = 1; j < n; ++j) {
    den = diag(j) - c * cp[j - 1];
    if (std::abs(den) < 1e-300) throw NumericalError("cayley_solve: singular pivot");
    cp[j] = c / den;
    dp[j] = (w[j] - c * dp[j - 1]) / den;
  }
  w[n - 1] = dp[n - 1];
  for (std::size_t j = n - 1; j-- > 0;) w[j] = dp[j] - cp[j] * w[j + 1];
}

}  // namespace

RadialField free_step(const RadialField& f, double dt) {
  if (dt == 0.0) return f;
  const RadialGrid& grid = f.grid();
  const double alpha = 0.5 * dt;
  const double h = grid.spacing();

  std::vector<cdouble> w = f.reduced();
  std::vector<cdouble> rhs(w.size());

  static thread_local std::vector<double> gamma;
  gamma.resize(w.size());
  const auto& V = grid.centrifugal();
  for (std::size_t j = 0; j < w.size(); ++j) gamma[j] = alpha * (2.0 / (h * h) + V[j]);

  kernels::active().cayley_rhs(w.data(), rhs.data(), gamma.data(), alpha / (h * h), w.size());
  cayley_solve(rhs, grid, alpha);
  return RadialField::from_reduced(f.grid_ptr(), rhs);
}

RadialField free_evolve(const RadialField& f, double t, int substeps) {
  if (substeps < 1) throw ParameterError("free_evolve: substeps >= 1 required");
  if (t == 0.0) return f;
  RadialField cur = f;
  const double dt = t / substeps;
  for (int k = 0; k < substeps; ++k) cur = free_step(cur, dt);
  return cur;
}

RadialField nonlinear_phase_step(const RadialField& f, const ModelParams& mp, double dt) {
  std::vector<cdouble> v = f.values();
  const double c1 = mp.lambda1 * dt;
  const double c2 = mp.single_power() ? 0.0 : mp.lambda2 * dt;
  if (c1 != 0.0 || c2 != 0.0)
    kernels::active().phase_rotate(v.data(), v.size(), c1, mp.p1, c2, mp.p2);
  return RadialField(f.grid_ptr(), std::move(v));
}

RadialField strang_step_physical(const RadialField& f, const ModelParams& mp,
                                 const StepperConfig& cfg) {
  cfg.validate();
  RadialField half = nonlinear_phase_step(f, mp, 0.5 * cfg.dt);
  RadialField drift = free_evolve(half, cfg.dt, cfg.substeps_linear);
  return nonlinear_phase_step(drift, mp, 0.5 * cfg.dt);
}

double power_weight_integral(double s, double ds, double mu) {
  const double w0 = 1.0 - s;
  const double w1 = 1.0 - s - ds;
  if (mu == -1.0) return std::log(w0 / w1);
  return (std::pow(w0, mu + 1.0) - std::pow(w1, mu + 1.0)) / (mu + 1.0);
}

double power_weight_first_moment(double s, double ds, double mu) {
  return (1.0 - s) * power_weight_integral(s, ds, mu) - power_weight_integral(s, ds, mu + 1.0);
}

double lens_phase_integral(double s, double ds, double p, int N) {
  if (!(s >= 0.0 && ds > 0.0)) throw ParameterError("lens_phase_integral: need 0 <= s and ds > 0");
  if (!(s + ds < 1.0)) throw DomainError("lens_phase_integral: s + ds must stay below 1");
  const double gamma = 0.5 * (N * p - 4.0);
  return power_weight_integral(s, ds, gamma);
}

LensState strang_step_lens(const LensState& state, const ModelParams& mp,
                           const StepperConfig& cfg) {
  cfg.validate();
  const double ds = cfg.dt;
  if (!(state.s + ds < 1.0)) throw DomainError("strang_step_lens: step would reach s = 1");

  const double half = 0.5 * ds;
  auto lens_phase = [&](const RadialField& f, double s0) {
    const double c1 =
        mp.lambda1 == 0.0 ? 0.0 : mp.lambda1 * lens_phase_integral(s0, half, mp.p1, mp.N);
    const double c2 =
        mp.single_power() ? 0.0 : mp.lambda2 * lens_phase_integral(s0, half, mp.p2, mp.N);
    if (c1 == 0.0 && c2 == 0.0) return f;
    std::vector<cdouble> v = f.values();
    kernels::active().phase_rotate(v.data(), v.size(), c1, mp.p1, c2, mp.p2);
    return RadialField(f.grid_ptr(), std::move(v));
  };

  RadialField a = lens_phase(state.v, state.s);
  RadialField b = free_evolve(a, ds, cfg.substeps_linear);
  RadialField c = lens_phase(b, state.s + half);
  return LensState(state.s + ds, std::move(c));
}

RadialField picard_iterate(const RadialField& phi, const ModelParams& mp, double T, int iters,
                           const StepperConfig& cfg) {
  cfg.validate();
  if (!(T > 0.0)) throw ParameterError("picard_iterate: T > 0 required");
  if (iters < 1) throw ParameterError("picard_iterate: iters >= 1 required");

  const int n = std::max(1, static_cast<int>(std::lround(T / cfg.dt)));
  const double dt = T / n;
  const double guard = 1e3 * norm_l2(phi);

  auto nonlinearity = [&](const RadialField& u) {
    // lambda1 |u|^p1 u + lambda2 |u|^p2 u
    const auto& vals = u.values();
    std::vector<cdouble> g(vals.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double m = std::abs(vals[j]);
      double c = mp.lambda1 * std::pow(m, mp.p1);
      if (!mp.single_power()) c += mp.lambda2 * std::pow(m, mp.p2);
      g[j] = c * vals[j];
    }
    return RadialField(u.grid_ptr(), std::move(g));
  };

  // J(t_m) phi, shared by all iterates
  std::vector<RadialField> jphi;
  jphi.reserve(n + 1);
  jphi.push_back(phi);
  for (int m = 1; m <= n; ++m) jphi.push_back(free_step(jphi.back(), dt));

  std::vector<RadialField> traj = jphi;  // zeroth iterate
  for (int k = 0; k < iters; ++k) {
    std::vector<RadialField> next;
    next.reserve(n + 1);
    next.push_back(phi);
    RadialField g_prev = nonlinearity(traj[0]);
    RadialField integral = RadialField::zeros(phi.grid_ptr());
    for (int m = 1; m <= n; ++m) {
      // I_m = J(dt) [I_{m-1} + dt/2 G_{m-1}] + dt/2 G_m  (trapezoid in s)
      RadialField g_m = nonlinearity(traj[m]);
      integral = axpy(0.5 * dt, g_prev, integral);
      integral = free_step(integral, dt);
      integral = axpy(0.5 * dt, g_m, integral);
      RadialField u_m = axpy(cdouble(0.0, -1.0), integral, jphi[m]);
      if (norm_l2(u_m) > guard)
        throw NonContractionError("picard_iterate: iterate escaped; shrink T or the data");
      next.push_back(std::move(u_m));
      g_prev = std::move(g_m);
    }
    traj = std::move(next);
  }
  return traj.back();
}

double energy(const RadialField& f, const ModelParams& mp) {
  double e = 0.5 * dirichlet_form(f);
  e += mp.lambda1 / (mp.p1 + 2.0) * lp_power(f, mp.p1 + 2.0);
  if (!mp.single_power()) e += mp.lambda2 / (mp.p2 + 2.0) * lp_power(f, mp.p2 + 2.0);
  return e;
}

}  // namespace nlslab
