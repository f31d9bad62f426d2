#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "nlslab/propagators.hpp"

namespace nlslab {

// One row of the conservation/bookkeeping ledger.  In the lens frame K is the
// lens energy 1/2||grad v||^2 + sum_i lambda_i h_i(s)/(p_i+2) ||v||_{p_i+2}^{p_i+2},
// M and N accumulate the weighted space-time potential integrals, and the
// residual measures K - (aM + bN + C0) with a = (4-Np1)/2, b = (4-Np2)/2.
// Physical-frame rows reuse K for the conserved energy and keep M = N = 0.
struct LedgerRecord {
  double time = 0;  // s or t
  double mass = 0;
  double energy = 0;
  double grad_l2 = 0;  // ||grad v||^2 (reduced Dirichlet form)
  double lp1 = 0;      // ||v||_{p1+2}^{p1+2}
  double lp2 = 0;
  double M = 0;
  double N = 0;
  double K = 0;
  double residual = 0;
};

class Ledger {
 public:
  explicit Ledger(ModelParams mp) : mp_(mp) {}

  // Lens-frame update; states must arrive in strictly increasing s.  The
  // singular weight (1-tau)^{gamma-1} is integrated exactly against a linear
  // interpolant of the potential integrals between visited states.
  const LedgerRecord& append_lens(const LensState& state);

  const LedgerRecord& append_physical(double t, const RadialField& u);

  const std::vector<LedgerRecord>& records() const { return records_; }
  double C0() const { return C0_; }

  static void write_csv_header(std::ostream& os);
  static void write_csv_row(const LedgerRecord& rec, std::ostream& os);
  void write_csv(std::ostream& os) const;

 private:
  ModelParams mp_;
  std::vector<LedgerRecord> records_;
  bool started_ = false;
  double C0_ = 0;
  double prev_time_ = 0;
  double prev_P1_ = 0, prev_P2_ = 0;
  double accM_ = 0, accN_ = 0;
};

struct FitResult {
  double slope = 0;
  double theory = 0;
  int points = 0;
  bool skipped = false;
  std::string note;
};

// Least-squares slope of log(aM+bN) against -log(1-s) over s in [0.5, s_max];
// the theory value (4-Np1)/2 is an upper bound for the growth.
FitResult gronwall_exponent_check(const std::vector<LedgerRecord>& ledger, const ModelParams& mp);

// Least-squares slope of log||u(t)||_r against log(1+t) over the last decade
// of t, compared with -N(r-2)/(2r).
FitResult decay_fit(const std::vector<std::pair<double, double>>& series, double r, int N);

// Fixed smooth bump exp(-1/(1-(r/r0)^2)) for r < r0, zero beyond.
RadialField witness_bump(GridPtr grid, double r0 = 2.0);

struct WitnessPoint {
  double s = 0;
  std::complex<double> z;  // <v(s), theta>
};

struct WitnessReport {
  double growth = 0;  // |z(s_max)| / |z(0.5)|
  double drift = 0;   // max |  |z| - |z(0.5)|  | / |z(0.5)| over the window
  FitResult fit;      // |z| ~ (1-s)^{(Np1-2)/2}, or ~ |log(1-s)| at Np1 = 2
};

// Divergence analysis of the pairing series in the non-scattering regime
// p1 <= 2/N.  Drift alone is meaningful in any regime via witness_drift.
WitnessReport nonscatter_witness(const std::vector<WitnessPoint>& series, const ModelParams& mp);

double witness_drift(const std::vector<WitnessPoint>& series, double s_from);

}  // namespace nlslab
