#include "nlslab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace nlslab {
namespace {

double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

const LedgerRecord& Ledger::append_lens(const LensState& state) {
  const double s = state.s;
  if (started_ && !(s > prev_time_)) throw ParameterError("Ledger: lens records must increase in s");

  const RadialField& v = state.v;
  const double g1 = 0.5 * (mp_.N * mp_.p1 - 4.0);
  const double g2 = 0.5 * (mp_.N * mp_.p2 - 4.0);
  const double P1 = lp_power(v, mp_.p1 + 2.0);
  const double P2 = mp_.single_power() ? 0.0 : lp_power(v, mp_.p2 + 2.0);

  if (started_) {
    const double ds = s - prev_time_;
    // int (1-tau)^{g-1} P(tau) dtau with P linear between the endpoints
    auto accumulate = [&](double g, double Pa, double Pb) {
      const double i0 = power_weight_integral(prev_time_, ds, g - 1.0);
      const double i1 = power_weight_first_moment(prev_time_, ds, g - 1.0);
      return Pa * i0 + (Pb - Pa) / ds * i1;
    };
    accM_ += mp_.lambda1 / (mp_.p1 + 2.0) * accumulate(g1, prev_P1_, P1);
    if (!mp_.single_power()) accN_ += mp_.lambda2 / (mp_.p2 + 2.0) * accumulate(g2, prev_P2_, P2);
  }

  LedgerRecord rec;
  rec.time = s;
  rec.mass = norm_l2(v);
  rec.grad_l2 = dirichlet_form(v);
  rec.lp1 = P1;
  rec.lp2 = P2;
  rec.M = accM_;
  rec.N = accN_;
  // K(s) = 1/2 ||grad v||^2 + (1-s)[M'(s) + N'(s)]
  double K = 0.5 * rec.grad_l2 + mp_.lambda1 / (mp_.p1 + 2.0) * std::pow(1.0 - s, g1) * P1;
  if (!mp_.single_power()) K += mp_.lambda2 / (mp_.p2 + 2.0) * std::pow(1.0 - s, g2) * P2;
  rec.K = K;
  rec.energy = K;

  if (!started_) {
    C0_ = K;
    started_ = true;
  }
  const double a = 0.5 * (4.0 - mp_.N * mp_.p1);
  const double b = 0.5 * (4.0 - mp_.N * mp_.p2);
  const double closed = a * rec.M + (mp_.single_power() ? 0.0 : b * rec.N) + C0_;
  const double den = std::abs(rec.K) + std::abs(C0_);
  rec.residual = den == 0.0 ? 0.0 : std::abs(rec.K - closed) / den;

  prev_time_ = s;
  prev_P1_ = P1;
  prev_P2_ = P2;
  records_.push_back(rec);
  return records_.back();
}

const LedgerRecord& Ledger::append_physical(double t, const RadialField& u) {
  if (started_ && !(t > prev_time_))
    throw ParameterError("Ledger: physical records must increase in t");
  LedgerRecord rec;
  rec.time = t;
  rec.mass = norm_l2(u);
  rec.grad_l2 = dirichlet_form(u);
  rec.lp1 = lp_power(u, mp_.p1 + 2.0);
  rec.lp2 = mp_.single_power() ? 0.0 : lp_power(u, mp_.p2 + 2.0);
  rec.K = energy(u, mp_);
  rec.energy = rec.K;
  if (!started_) {
    C0_ = rec.K;
    started_ = true;
  }
  const double den = std::abs(rec.K) + std::abs(C0_);
  rec.residual = den == 0.0 ? 0.0 : std::abs(rec.K - C0_) / den;
  prev_time_ = t;
  records_.push_back(rec);
  return records_.back();
}

void Ledger::write_csv_header(std::ostream& os) {
  os << "s_or_t,mass,energy,grad_l2,lp1,lp2,M,N,K,residual\n";
}

void Ledger::write_csv_row(const LedgerRecord& r, std::ostream& os) {
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "%.15g,%.15g,%.15g,%.15g,%.15g,%.15g,%.15g,%.15g,%.15g,%.15g\n", r.time, r.mass,
                r.energy, r.grad_l2, r.lp1, r.lp2, r.M, r.N, r.K, r.residual);
  os << buf;
}

void Ledger::write_csv(std::ostream& os) const {
  write_csv_header(os);
  for (const auto& r : records_) write_csv_row(r, os);
}

FitResult gronwall_exponent_check(const std::vector<LedgerRecord>& ledger,
                                  const ModelParams& mp) {
  FitResult out;
  out.theory = 0.5 * (4.0 - mp.N * mp.p1);
  if (!(mp.p1 < 4.0 / mp.N)) {
    out.skipped = true;
    out.note = "p1 >= 4/N: bound trivial, gradient expected bounded instead";
    return out;
  }
  if (ledger.empty() || ledger.back().time < 0.95)
    throw ParameterError("gronwall_exponent_check: ledger must reach s >= 0.95");

  const double a = 0.5 * (4.0 - mp.N * mp.p1);
  const double b = 0.5 * (4.0 - mp.N * mp.p2);
  std::vector<double> x, y;
  for (const auto& rec : ledger) {
    if (rec.time < 0.5) continue;
    const double val = a * rec.M + (mp.single_power() ? 0.0 : b * rec.N);
    if (val <= 0.0) {
      out.skipped = true;
      out.note = "aM + bN not positive on the fit window";
      return out;
    }
    x.push_back(-std::log(1.0 - rec.time));
    y.push_back(std::log(val));
  }
  if (x.size() < 8) {
    out.skipped = true;
    out.note = "too few ledger points in [0.5, s_max]";
    return out;
  }
  out.slope = ols_slope(x, y);
  out.points = static_cast<int>(x.size());
  return out;
}

FitResult decay_fit(const std::vector<std::pair<double, double>>& series, double r, int N) {
  if (!(r >= 2.0)) throw ParameterError("decay_fit: r >= 2 required");
  FitResult out;
  out.theory = -N * (r - 2.0) / (2.0 * r);
  if (series.size() < 8) throw ParameterError("decay_fit: too few samples");
  const double t_max = series.back().first;
  if (!(t_max >= 20.0)) throw ParameterError("decay_fit: trajectory must reach t >= 20");
  std::vector<double> x, y;
  for (const auto& [t, nrm] : series) {
    if (t <= t_max / 10.0 || !(nrm > 0.0)) continue;
    x.push_back(std::log(1.0 + t));
    y.push_back(std::log(nrm));
  }
  if (x.size() < 4) {
    out.skipped = true;
    out.note = "too few points in the last decade";
    return out;
  }
  out.slope = ols_slope(x, y);
  out.points = static_cast<int>(x.size());
  return out;
}

RadialField witness_bump(GridPtr grid, double r0) {
  if (!(r0 > 0.0 && r0 < grid->radius())) throw ParameterError("witness_bump: need 0 < r0 < R");
  return RadialField::from_function(std::move(grid), [r0](double r) {
    if (r >= r0) return cdouble{};
    const double q = (r / r0) * (r / r0);
    return cdouble(std::exp(-1.0 / (1.0 - q)), 0.0);
  });
}

double witness_drift(const std::vector<WitnessPoint>& series, double s_from) {
  double base = -1.0;
  double drift = 0.0;
  for (const auto& pt : series) {
    if (pt.s < s_from) continue;
    const double m = std::abs(pt.z);
    if (base < 0.0) {
      base = m;
      if (base == 0.0) throw NumericalError("witness_drift: vanishing pairing at window start");
      continue;
    }
    drift = std::max(drift, std::abs(m - base) / base);
  }
  if (base < 0.0) throw ParameterError("witness_drift: no samples past the window start");
  return drift;
}

WitnessReport nonscatter_witness(const std::vector<WitnessPoint>& series, const ModelParams& mp) {
  if (mp.p1 > 2.0 / mp.N)
    throw DomainError("nonscatter_witness: requires the no-scattering regime p1 <= 2/N");
  if (series.size() < 8) throw ParameterError("nonscatter_witness: too few samples");

  WitnessReport rep;
  const double np1 = mp.N * mp.p1;
  rep.fit.theory = 0.5 * (np1 - 2.0);

  double base = -1.0;
  double last = 0.0;
  std::vector<double> x, y;
  const bool log_case = std::abs(np1 - 2.0) < 1e-12;
  for (const auto& pt : series) {
    if (pt.s < 0.5) continue;
    const double m = std::abs(pt.z);
    if (base < 0.0) base = m;
    last = m;
    if (m > 0.0 && pt.s < 1.0) {
      x.push_back(log_case ? std::abs(std::log(1.0 - pt.s)) : std::log(1.0 - pt.s));
      y.push_back(log_case ? m : std::log(m));
    }
  }
  if (base <= 0.0) throw NumericalError("nonscatter_witness: vanishing pairing at s = 0.5");
  rep.growth = last / base;
  rep.drift = witness_drift(series, 0.5);
  if (x.size() >= 4) {
    rep.fit.slope = ols_slope(x, y);
    rep.fit.points = static_cast<int>(x.size());
    if (log_case) rep.fit.note = "linear fit of |z| against |log(1-s)|";
  } else {
    rep.fit.skipped = true;
    rep.fit.note = "too few positive samples";
  }
  return rep;
}

}  // namespace nlslab
