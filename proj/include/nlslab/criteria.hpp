#pragma once

#include <optional>
#include <string>

#include "nlslab/params.hpp"

namespace nlslab {

enum class VerdictTag {
  NoScattering_L2,
  Scattering_Sigma,
  GWP_ScatteringOpen,
  BlowupPossible_ConditionNotEvaluated,
  OutsideCoveredRegimes,
};

const char* to_string(VerdictTag tag);

// Statistics of the initial datum used by the mass-threshold rule.
struct DataStats {
  double mass = 0;
  double energy = 0;
  double sigma_norm = 0;
};

struct Verdict {
  VerdictTag tag = VerdictTag::OutsideCoveredRegimes;
  std::string source;  // theorem / table row backing the verdict
  std::optional<double> threshold_margin;  // small-mass case only: 1 - mass^{4/N}/bound
};

// alpha0 = (2 - N + sqrt(N^2 + 12N + 4)) / (2N)
double alpha0(int N);

// First matching rule wins; rule order is part of the contract:
// (a) no-scattering p1 <= 2/N with subcritical p2;
// (b) no-scattering p1 <= 2/N, defocusing-perturbed critical window, N >= 6;
// (c) scattering, both powers defocusing above 2/N;
// (d) scattering, focusing perturbation under the mass threshold (needs CN);
// (e),(f) scattering with lambda1 < 0 above 4/(N+2);
// (g) global existence with scattering open (lambda2 > 0 catch-all);
// (h) focusing-supercritical patterns whose blow-up conditions are not
//     evaluated here; (i) everything else.
Verdict classify(const ModelParams& mp, const DataStats& stats, std::optional<double> CN);

}  // namespace nlslab
