#include "nlslab/ground_state.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <vector>

namespace nlslab {
namespace {

// State carried through the shoot: y = (W, W') plus quadrature components
// (int W^2 r^{N-1}, int W'^2 r^{N-1}, int W^{p+2} r^{N-1}).  The integrals ride
// along at the integrator's order; step control uses (W, W') only.
constexpr int kDim = 5;
using State = std::array<double, kDim>;

struct Shoot {
  int N;
  double c;  // 2/N
  double p;  // 4/N

  State rhs(double r, const State& y) const {
    const double W = y[0], Wp = y[1];
    const double absW = std::abs(W);
    const double nl = std::pow(absW, p) * W;
    const double rw = std::pow(r, N - 1);
    State d;
    d[0] = Wp;
    d[1] = -(N - 1) / r * Wp + c * W - nl;
    d[2] = rw * W * W;
    d[3] = rw * Wp * Wp;
    d[4] = rw * std::pow(absW, p + 2.0);
    return d;
  }
};

struct Sample {
  double r, W, Wp;
};

enum class Outcome { Overshoot, Undershoot };

struct ShootResult {
  Outcome outcome;
  double r_end = 0;
  State y_end{};
  std::vector<Sample> samples;  // filled when recording
};

// Dormand-Prince 5(4) with standard step-size control.
ShootResult integrate(const Shoot& eq, double w0, double r_max, bool record) {
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double rtol = 1e-12, atol = 1e-16;

  // series start handles the coordinate singularity at r = 0
  const double r0 = 1e-4;
  const double A = w0 * (eq.c - std::pow(w0, eq.p)) / (2.0 * eq.N);
  State y{};
  y[0] = w0 + A * r0 * r0;
  y[1] = 2.0 * A * r0;

  ShootResult res;
  if (record) res.samples.push_back({r0, y[0], y[1]});

  double r = r0;
  double h = 1e-4;
  State k1 = eq.rhs(r, y);
  while (r < r_max) {
    h = std::min(h, r_max - r);
    State k2, k3, k4, k5, k6, k7, yt, ynew;
    auto stage = [&](State& out, std::initializer_list<std::pair<double, const State*>> terms) {
      out = y;
      for (const auto& [cf, kk] : terms)
        for (int i = 0; i < kDim; ++i) out[i] += h * cf * (*kk)[i];
    };
    stage(yt, {{a21, &k1}});
    k2 = eq.rhs(r + h / 5, yt);
    stage(yt, {{a31, &k1}, {a32, &k2}});
    k3 = eq.rhs(r + 3 * h / 10, yt);
    stage(yt, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
    k4 = eq.rhs(r + 4 * h / 5, yt);
    stage(yt, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
    k5 = eq.rhs(r + 8 * h / 9, yt);
    stage(yt, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
    k6 = eq.rhs(r + h, yt);
    stage(ynew, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    k7 = eq.rhs(r + h, ynew);

    double err = 0.0;
    for (int i = 0; i < 2; ++i) {  // control on (W, W') only
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                             e7 * k7[i]);
      const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err = std::max(err, std::abs(ei) / sc);
    }
    if (err <= 1.0) {
      r += h;
      y = ynew;
      k1 = k7;  // FSAL
      if (record) res.samples.push_back({r, y[0], y[1]});
      if (y[0] <= 0.0) {
        res.outcome = Outcome::Overshoot;
        res.r_end = r;
        res.y_end = y;
        return res;
      }
      if (y[1] >= 0.0) {
        res.outcome = Outcome::Undershoot;
        res.r_end = r;
        res.y_end = y;
        return res;
      }
    }
    const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
    h *= fac;
    if (h < 1e-14) throw SolverFailure("ground state: step size underflow");
  }
  // reached r_max still decaying; treat as undershoot for bracketing purposes
  res.outcome = Outcome::Undershoot;
  res.r_end = r_max;
  res.y_end = y;
  return res;
}

}  // namespace

GroundStateResult shoot_ground_state(int N, double tol) {
  if (N < 3) throw ParameterError("shoot_ground_state: N >= 3 required");
  if (!(tol > 0.0 && tol <= 1e-6)) throw ParameterError("shoot_ground_state: tol in (0, 1e-6]");

  const Shoot eq{N, 2.0 / N, 4.0 / N};
  const double kappa = std::sqrt(eq.c);
  const double r_max = 45.0 / kappa;

  double lo = 1e-3, hi = 1e3;
  if (integrate(eq, lo, r_max, false).outcome != Outcome::Undershoot ||
      integrate(eq, hi, r_max, false).outcome != Outcome::Overshoot)
    throw SolverFailure("shoot_ground_state: no bracket in [1e-3, 1e3]");

  while (hi - lo > tol && hi - lo > 8.0 * hi * 1e-17) {
    const double mid = 0.5 * (lo + hi);
    if (integrate(eq, mid, r_max, false).outcome == Outcome::Overshoot)
      hi = mid;
    else
      lo = mid;
  }
  const double w0 = 0.5 * (lo + hi);

  ShootResult fin = integrate(eq, w0, r_max, true);

  GroundStateResult out;
  out.dim = N;
  out.w0 = w0;
  const double area = unit_sphere_area(N);
  out.l2_sq = area * fin.y_end[2];
  out.grad_sq = area * fin.y_end[3];
  out.lp_sum = area * fin.y_end[4];
  out.mass = std::sqrt(out.l2_sq);
  out.CN = (N + 2.0) / (N * std::pow(out.mass, 4.0 / N));

  const double p2 = eq.p + 2.0;
  out.pohozaev1 = std::abs(out.grad_sq + eq.c * out.l2_sq - out.lp_sum) / out.lp_sum;
  out.pohozaev2 = std::abs(0.5 * (N - 2.0) * out.grad_sq + out.l2_sq - (N / p2) * out.lp_sum) /
                  ((N / p2) * out.lp_sum);

  // profile on a uniform grid; analytic e^{-kappa r} tail beyond the splice
  // (W under 1e-8 w0, or the turning point where the bisection-limit
  // trajectory departs from the decaying manifold)
  std::size_t i_splice = 0;
  for (std::size_t i = 0; i < fin.samples.size(); ++i) {
    if (fin.samples[i].W < 1e-8 * w0) break;
    if (fin.samples[i].W < fin.samples[i_splice].W) i_splice = i;
  }
  const double r_splice = fin.samples[i_splice].r;
  const double w_splice = std::max(fin.samples[i_splice].W, 0.0);
  out.splice_radius = r_splice;

  const double R_field = 28.0 / kappa;
  GridPtr grid = make_grid(R_field, 4096, N);
  std::vector<cdouble> vals(grid->node_count());
  std::size_t seg = 0;
  for (int j = 0; j < grid->node_count(); ++j) {
    const double r = grid->nodes()[j];
    if (r >= r_splice) {
      vals[j] = w_splice * std::exp(-kappa * (r - r_splice));
      continue;
    }
    while (seg + 2 < fin.samples.size() && fin.samples[seg + 1].r < r) ++seg;
    const Sample& s0 = fin.samples[seg];
    const Sample& s1 = fin.samples[seg + 1];
    // cubic Hermite on the accepted-step mesh using the stored derivatives
    const double hh = s1.r - s0.r;
    const double tt = (r - s0.r) / hh;
    const double t2 = tt * tt, t3 = t2 * tt;
    double val = (2 * t3 - 3 * t2 + 1) * s0.W + (t3 - 2 * t2 + tt) * hh * s0.Wp +
                 (-2 * t3 + 3 * t2) * s1.W + (t3 - t2) * hh * s1.Wp;
    if (r < fin.samples.front().r) val = s0.W;  // below the series start
    vals[j] = std::max(val, 0.0);
  }
  out.W = RadialField(std::move(grid), std::move(vals));
  return out;
}

const GroundStateResult& ground_state_cached(int N) {
  static std::mutex mu;
  static std::map<int, GroundStateResult> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(N);
  if (it == cache.end()) it = cache.emplace(N, shoot_ground_state(N, 1e-10)).first;
  return it->second;
}

double gn_ratio(const RadialField& f) {
  const int N = f.grid().dim();
  const double l2sq = lp_power(f, 2.0);
  if (l2sq == 0.0) throw DomainError("gn_ratio: undefined for the zero field");
  const auto d = radial_derivative(f);
  const auto& w = f.grid().quad_weights();
  double gsq = 0.0;
  for (std::size_t j = 0; j < d.size(); ++j) gsq += w[j] * std::norm(d[j]);
  const double num = lp_power(f, 4.0 / N + 2.0);
  return num / (gsq * std::pow(l2sq, 2.0 / N));
}

double threshold_mass_bound(const ModelParams& mp, double CN) {
  const double n = mp.N;
  const bool regime = mp.lambda1 > 0.0 && mp.lambda2 < 0.0 && mp.p1 > 2.0 / n &&
                      mp.p1 < mp.p2 && mp.p2 < 4.0 / n;
  if (!regime)
    throw DomainError("threshold_mass_bound: requires lambda1>0, lambda2<0, 2/N<p1<p2<4/N");
  if (!(CN > 0.0)) throw ParameterError("threshold_mass_bound: CN > 0 required");

  const double a1 = 4.0 - n * mp.p1;
  const double a2 = 4.0 - n * mp.p2;
  const double span = n * (mp.p2 - mp.p1);
  const double lead = a1 / (2.0 * span * CN);
  const double f1 = std::pow((mp.p2 + 2.0) / std::abs(mp.lambda2), a1 / span);
  const double f2 =
      std::pow(mp.lambda1 * a1 * (n * mp.p1 - 2.0) / (2.0 * a2 * (mp.p1 + 2.0)), a2 / span);
  return lead * f1 * f2;
}

}  // namespace nlslab
