#include "nlslab/pseudoconformal.hpp"

#include <cmath>
#include <numbers>

#include "nlslab/interp.hpp"

namespace nlslab {
namespace {

// Samples of modulus and unwrapped phase on [0, R], extended with the even
// value at r = 0 and the Dirichlet zero at r = R.  `extra_chirp` folds a
// quadratic phase exp(i c r^2) into the sampled phase so that the chirp is
// never carried through complex interpolation.
struct PolarSamples {
  std::vector<double> x, mod, phase;
};

PolarSamples polar_samples(const RadialField& f, double extra_chirp) {
  const auto& r = f.grid().nodes();
  const auto& v = f.values();
  const std::size_t n = v.size();

  double mmax = 0.0;
  for (const auto& z : v) mmax = std::max(mmax, std::abs(z));
  const double tiny = 1e-13 * mmax;

  PolarSamples s;
  s.x.resize(n + 2);
  s.mod.resize(n + 2);
  s.phase.resize(n + 2);
  s.x[0] = 0.0;
  for (std::size_t j = 0; j < n; ++j) s.x[j + 1] = r[j];
  s.x[n + 1] = f.grid().radius();

  double prev = 0.0;
  bool have_prev = false;
  double offset = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double m = std::abs(v[j]);
    s.mod[j + 1] = m;
    double ph;
    if (m <= tiny) {
      ph = have_prev ? prev : 0.0;  // hold phase through near-zero amplitude
    } else {
      ph = std::arg(v[j]) + extra_chirp * r[j] * r[j];
      if (have_prev) {
        const double twopi = 2.0 * std::numbers::pi;
        offset += twopi * std::round((prev - (ph + offset)) / twopi);
      }
      ph += offset;
      have_prev = true;
    }
    s.phase[j + 1] = ph;
    prev = ph;
  }
  // even extension at r = 0: quadratic fit through the first two nodes
  s.mod[0] = std::max(0.0, (4.0 * s.mod[1] - s.mod[2]) / 3.0);
  s.phase[0] = s.phase[1];
  s.mod[n + 1] = 0.0;
  s.phase[n + 1] = s.phase[n];
  return s;
}

double sq(double x) { return x * x; }

}  // namespace

LensState to_lens(const RadialField& u, double t, GridPtr lens_grid) {
  if (!(t >= 0.0)) throw DomainError("to_lens: t >= 0 required");
  const double scale = 1.0 + t;
  const double pref = std::pow(scale, 0.5 * u.grid().dim());
  const double chirp = -1.0 / (4.0 * scale);

  if (t == 0.0 && lens_grid->same_layout(u.grid())) {
    return LensState(0.0, apply_quadratic_phase(u, chirp));
  }

  if (lens_grid->radius() * scale > u.grid().radius() * (1.0 + 1e-12))
    throw DomainError("to_lens: lens grid radius exceeds covered physical domain R_u/(1+t)");
  if (lens_grid->dim() != u.grid().dim()) throw StructuralError("to_lens: dimension mismatch");

  // interpolate |u| and the unwrapped phase of u e^{-i x^2/(4(1+t))}
  const PolarSamples s = polar_samples(u, chirp);
  const MonotoneCubic mod_itp(s.x, s.mod);
  const MonotoneCubic phase_itp(s.x, s.phase);

  std::vector<cdouble> vals(lens_grid->node_count());
  for (int j = 0; j < lens_grid->node_count(); ++j) {
    const double x = scale * lens_grid->nodes()[j];
    vals[j] = std::polar(pref * mod_itp(x), phase_itp(x));
  }
  const double snew = t / (1.0 + t);
  return LensState(snew, RadialField(std::move(lens_grid), std::move(vals)));
}

std::pair<RadialField, double> from_lens(const LensState& state, GridPtr physical_grid) {
  const double s = state.s;
  if (!(s < 1.0)) throw DomainError("from_lens: s < 1 required");
  const double t = s / (1.0 - s);
  const double shrink = 1.0 - s;
  const double pref = std::pow(shrink, 0.5 * state.v.grid().dim());
  const double chirp = shrink / 4.0;  // u carries exp(+i (1-s) x^2 / 4)

  if (s == 0.0 && physical_grid->same_layout(state.v.grid())) {
    return {apply_quadratic_phase(state.v, chirp), 0.0};
  }

  if (physical_grid->radius() * shrink > state.v.grid().radius() * (1.0 + 1e-12))
    throw DomainError("from_lens: physical grid radius exceeds covered lens domain R_v/(1-s)");
  if (physical_grid->dim() != state.v.grid().dim())
    throw StructuralError("from_lens: dimension mismatch");

  const PolarSamples smp = polar_samples(state.v, 0.0);
  const MonotoneCubic mod_itp(smp.x, smp.mod);
  const MonotoneCubic phase_itp(smp.x, smp.phase);

  std::vector<cdouble> vals(physical_grid->node_count());
  for (int j = 0; j < physical_grid->node_count(); ++j) {
    const double x = physical_grid->nodes()[j];
    const double y = shrink * x;
    vals[j] = std::polar(pref * mod_itp(y), phase_itp(y) + chirp * x * x);
  }
  return {RadialField(std::move(physical_grid), std::move(vals)), t};
}

IdentityResiduals check_identities(const RadialField& u, double t, const LensState& lens,
                                   const ModelParams& mp) {
  IdentityResiduals out;
  auto rel = [](double a, double b) {
    const double den = std::abs(a) + std::abs(b);
    return den == 0.0 ? 0.0 : std::abs(a - b) / den;
  };

  const double scale = 1.0 + t;
  const RadialField& v = lens.v;

  // ||grad v||^2 = 1/4 ||(x + 2i(1+t) d_r) u||^2
  {
    const auto du = radial_derivative(u);
    const auto& r = u.grid().nodes();
    const auto& w = u.grid().quad_weights();
    double rhs = 0.0;
    for (std::size_t j = 0; j < du.size(); ++j)
      rhs += w[j] * std::norm(r[j] * u.values()[j] + cdouble(0.0, 2.0 * scale) * du[j]);
    rhs *= 0.25;
    const auto dv = radial_derivative(v);
    double lhs = 0.0;
    for (std::size_t j = 0; j < dv.size(); ++j) lhs += v.grid().quad_weights()[j] * std::norm(dv[j]);
    out.grad_lens = rel(lhs, rhs);
  }

  // ||grad u||^2 = 1/4 ||(y - 2i(1-s) d_r) v||^2
  {
    const double shrink = 1.0 - lens.s;
    const auto dv = radial_derivative(v);
    const auto& y = v.grid().nodes();
    const auto& w = v.grid().quad_weights();
    double rhs = 0.0;
    for (std::size_t j = 0; j < dv.size(); ++j)
      rhs += w[j] * std::norm(y[j] * v.values()[j] - cdouble(0.0, 2.0 * shrink) * dv[j]);
    rhs *= 0.25;
    const auto du = radial_derivative(u);
    double lhs = 0.0;
    for (std::size_t j = 0; j < du.size(); ++j) lhs += u.grid().quad_weights()[j] * std::norm(du[j]);
    out.grad_physical = rel(lhs, rhs);
  }

  // ||v||_{beta+2}^{beta+2} = (1+t)^{N beta / 2} ||u||_{beta+2}^{beta+2}
  auto lp_residual = [&](double beta) {
    const double lhs = lp_power(v, beta + 2.0);
    const double rhs = std::pow(scale, 0.5 * mp.N * beta) * lp_power(u, beta + 2.0);
    return rel(lhs, rhs);
  };
  out.mass = rel(norm_l2(v), norm_l2(u));
  out.lp.emplace_back(mp.p1, lp_residual(mp.p1));
  if (!mp.single_power()) out.lp.emplace_back(mp.p2, lp_residual(mp.p2));
  return out;
}

std::pair<RadialField, ExtractionReport> extract_scattering_state(
    const std::vector<LensState>& states, int j_substeps) {
  if (states.size() < 2)
    throw ParameterError("extract_scattering_state: need at least 2 lens states");
  if (j_substeps < 1) throw ParameterError("extract_scattering_state: j_substeps >= 1");

  ExtractionReport rep;
  std::vector<RadialField> candidates;
  candidates.reserve(states.size());
  double prev_eps = 1.0;
  for (const auto& st : states) {
    const double eps = 1.0 - st.s;
    if (!(eps < 0.1))
      throw ParameterError("extract_scattering_state: states must satisfy 1 - s < 0.1");
    if (!(eps < prev_eps))
      throw ParameterError("extract_scattering_state: eps must be strictly decreasing");
    prev_eps = eps;
    rep.eps.push_back(eps);
    // u+ candidate: e^{i|y|^2/4} J(-1) v(s_k)
    RadialField back = free_evolve(st.v, -1.0, j_substeps);
    candidates.push_back(apply_quadratic_phase(back, 0.25));
  }
  for (std::size_t k = 0; k + 1 < candidates.size(); ++k) {
    const RadialField d = axpy(-1.0, candidates[k], candidates[k + 1]);
    rep.sigma_diff.push_back(norm_sigma(d));
    rep.l2_diff.push_back(norm_l2(d));
  }
  rep.mass_u_plus = norm_l2(candidates.back());
  return {candidates.back(), rep};
}

}  // namespace nlslab
