#include "nlslab/criteria.hpp"

#include <cmath>

#include "nlslab/ground_state.hpp"

namespace nlslab {

const char* to_string(VerdictTag tag) {
  switch (tag) {
    case VerdictTag::NoScattering_L2: return "NoScattering_L2";
    case VerdictTag::Scattering_Sigma: return "Scattering_Sigma";
    case VerdictTag::GWP_ScatteringOpen: return "GWP_ScatteringOpen";
    case VerdictTag::BlowupPossible_ConditionNotEvaluated:
      return "BlowupPossible_ConditionNotEvaluated";
    case VerdictTag::OutsideCoveredRegimes: return "OutsideCoveredRegimes";
  }
  return "?";
}

double alpha0(int N) {
  if (N < 3) throw ParameterError("alpha0: N >= 3 required");
  const double n = N;
  return (2.0 - n + std::sqrt(n * n + 12.0 * n + 4.0)) / (2.0 * n);
}

Verdict classify(const ModelParams& mp, const DataStats& stats, std::optional<double> CN) {
  mp.validate();
  const double n = mp.N;
  const double b2 = 2.0 / n, b4 = 4.0 / n, bE = 4.0 / (n - 2.0), bL = 4.0 / (n + 2.0);
  const bool two = !mp.single_power();
  const double l1 = mp.lambda1, l2 = mp.lambda2, p1 = mp.p1, p2 = mp.p2;

  // (a) strong-force window: no L^2 scattering for any nontrivial datum
  if (p1 <= b2 && (!two || p2 < b4))
    return {VerdictTag::NoScattering_L2, "Theorem 1(i)", std::nullopt};

  // (b) same conclusion with a defocusing critical-range perturbation, N >= 6
  if (p1 <= b2 && two && l2 > 0.0 && p2 >= b4 && p2 <= bE && mp.N >= 6)
    return {VerdictTag::NoScattering_L2, "Theorem 1(ii)", std::nullopt};

  // (c) defocusing leading power above 2/N
  if (l1 > 0.0 && l2 >= 0.0 && p1 > b2 && (!two || p2 <= bE)) {
    const bool corollary = !two && p1 < alpha0(mp.N);
    return {VerdictTag::Scattering_Sigma, corollary ? "Corollary 1.1" : "Theorem 2 case (3)",
            std::nullopt};
  }

  // (d) focusing perturbation, admissible only under the mass threshold
  if (l1 > 0.0 && two && l2 < 0.0 && p1 > b2 && p2 < b4) {
    if (!CN) throw MissingOracleError("classify: mass-threshold rule needs the ground-state CN");
    const double bound = threshold_mass_bound(mp, *CN);
    const double lhs = std::pow(stats.mass, 4.0 / n);
    if (lhs < bound) {
      return {VerdictTag::Scattering_Sigma, "Theorem 2 case (4)", 1.0 - lhs / bound};
    }
    // above the bound nothing is asserted; fall through
  }

  // (e), (f) focusing leading power above 4/(N+2)
  if (l1 < 0.0 && two && l2 > 0.0 && p1 > bL && p2 < bE)
    return {VerdictTag::Scattering_Sigma, "Theorem 2 case (1)", std::nullopt};
  if (l1 < 0.0 && two && l2 < 0.0 && p1 > bL && p2 < b4)
    return {VerdictTag::Scattering_Sigma, "Theorem 2 case (2)", std::nullopt};

  // (g) defocusing top power: global existence, scattering open
  if (two && l2 > 0.0) return {VerdictTag::GWP_ScatteringOpen, "Table 1 row 1", std::nullopt};

  // (h) focusing supercritical top power; the table's blow-up certificates
  // involve quantities this classifier does not evaluate
  if (two && l2 < 0.0 && p2 > b4)
    return {VerdictTag::BlowupPossible_ConditionNotEvaluated, "Table 1 blow-up rows",
            std::nullopt};

  return {VerdictTag::OutsideCoveredRegimes, "none", std::nullopt};
}

}  // namespace nlslab
