#pragma once

#include "nlslab/errors.hpp"

namespace nlslab {

// Couplings and exponents of  i u_t + Delta u = lambda1 |u|^p1 u + lambda2 |u|^p2 u
// on R^N, N >= 3.  lambda2 == 0 encodes the single-power problem; p2 is
// ignored in that case.
struct ModelParams {
  int N = 3;
  double lambda1 = 1.0;
  double lambda2 = 0.0;
  double p1 = 2.0;
  double p2 = 0.0;

  bool single_power() const { return lambda2 == 0.0; }

  // Exponent landmarks separating the regimes.
  double strauss_border() const { return 2.0 / N; }
  double mass_critical() const { return 4.0 / N; }
  double energy_critical() const { return 4.0 / (N - 2.0); }

  void validate() const {
    if (N < 3) throw ParameterError("ModelParams: N >= 3 required");
    if (lambda1 == 0.0) throw ParameterError("ModelParams: lambda1 must be nonzero");
    if (!(p1 > 0.0)) throw ParameterError("ModelParams: p1 > 0 required");
    const double pmax = energy_critical() * (1.0 + 1e-12);
    if (single_power()) {
      if (!(p1 <= pmax)) throw ParameterError("ModelParams: p1 <= 4/(N-2) required");
    } else {
      if (!(p1 < p2)) throw ParameterError("ModelParams: p1 < p2 required");
      if (!(p2 <= pmax)) throw ParameterError("ModelParams: p2 <= 4/(N-2) required");
    }
  }
};

}  // namespace nlslab
