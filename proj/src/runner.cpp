#include "nlslab/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "nlslab/ground_state.hpp"
#include "nlslab/version.hpp"

namespace nlslab {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

RadialField load_field_for(const RunConfig& cfg, const GridPtr& grid) {
  std::ifstream in(cfg.init.path);
  if (!in) throw ParameterError("init.file: cannot open " + cfg.init.path);
  RadialField f = read_field_csv(in);
  if (!f.grid().same_layout(*grid))
    throw StructuralError("init.file: field grid does not match the run grid");
  return f;
}

RadialField physical_datum(const RunConfig& cfg, const GridPtr& grid) {
  if (cfg.init.kind == InitSpec::Kind::File) return load_field_for(cfg, grid);
  return RadialField::gaussian(grid, cfg.init.amplitude, cfg.init.width, cfg.init.chirp);
}

// v(0,y) = psi(y) = phi(y) e^{-i |y|^2/4}
RadialField lens_datum(const RunConfig& cfg, const GridPtr& grid) {
  return apply_quadratic_phase(physical_datum(cfg, grid), -0.25);
}

std::optional<double> maybe_CN(const ModelParams& mp) {
  const bool pattern = mp.lambda1 > 0.0 && !mp.single_power() && mp.lambda2 < 0.0 &&
                       mp.p1 > 2.0 / mp.N && mp.p2 < 4.0 / mp.N;
  if (!pattern) return std::nullopt;
  return ground_state_cached(mp.N).CN;
}

json fit_to_json(const FitResult& fit) {
  json j;
  j["slope"] = fit.slope;
  j["theory"] = fit.theory;
  j["points"] = fit.points;
  j["skipped"] = fit.skipped;
  if (!fit.note.empty()) j["note"] = fit.note;
  return j;
}

struct LensRunResult {
  std::vector<LensState> snapshots;  // at requested s targets, ascending
  LensState final_state;
};

// Step the lens frame to every target in `targets` (ascending, < 1), calling
// `on_step` after every accepted step.  ds = min(dt, rho (1-s), distance to
// the next target) keeps the singular coefficient resolved near s = 1.
template <class OnStep>
LensRunResult run_lens_frame(RadialField psi, const ModelParams& mp, const StepperConfig& cfg,
                             std::vector<double> targets, OnStep&& on_step) {
  std::sort(targets.begin(), targets.end());
  LensRunResult out{{}, LensState(0.0, std::move(psi))};
  LensState state = out.final_state;
  on_step(state);
  std::size_t next = 0;
  const double s_last = targets.back();
  while (state.s < s_last - 1e-14) {
    double ds = std::min(cfg.dt, cfg.near_one_ratio * (1.0 - state.s));
    while (next < targets.size() && targets[next] <= state.s + 1e-14) ++next;
    if (next < targets.size()) ds = std::min(ds, targets[next] - state.s);
    StepperConfig step_cfg = cfg;
    step_cfg.dt = ds;
    state = strang_step_lens(state, mp, step_cfg);
    on_step(state);
    if (next < targets.size() && std::abs(state.s - targets[next]) <= 1e-14) {
      out.snapshots.push_back(state);
      ++next;
    }
  }
  out.final_state = state;
  return out;
}

void write_decay_csv(const fs::path& p, const std::vector<std::pair<double, double>>& series) {
  std::ofstream os(p);
  os << "t,norm\n";
  char buf[80];
  for (const auto& [t, v] : series) {
    std::snprintf(buf, sizeof buf, "%.15g,%.15g\n", t, v);
    os << buf;
  }
}

}  // namespace

RunOutputs run(const RunConfig& cfg) {
  cfg.validate();
  const auto wall_start = std::chrono::steady_clock::now();

  RunOutputs out;
  out.dir = cfg.out_dir + "/" + config_hash(cfg);
  fs::create_directories(out.dir);

  GridPtr grid = make_grid(cfg.grid_R, cfg.grid_M, cfg.params.N);
  const RadialField phi = physical_datum(cfg, grid);

  DataStats stats;
  stats.mass = norm_l2(phi);
  stats.energy = energy(phi, cfg.params);
  stats.sigma_norm = norm_sigma(phi);
  out.verdict = classify(cfg.params, stats, maybe_CN(cfg.params));

  json rec;
  rec["version"] = NLSLAB_VERSION;
  rec["hash"] = config_hash(cfg);
  rec["config"] = json::object();
  for (const auto& [key, value] : cfg.raw) rec["config"][key] = value;
  rec["stats"] = {{"mass", stats.mass}, {"energy", stats.energy}, {"sigma", stats.sigma_norm}};
  rec["verdict"] = {{"tag", to_string(out.verdict.tag)}, {"source", out.verdict.source}};
  if (out.verdict.threshold_margin) rec["verdict"]["threshold_margin"] = *out.verdict.threshold_margin;

  Ledger ledger(cfg.params);
  const bool want_ledger = cfg.monitors.empty() || cfg.has_monitor("ledger");
  const bool want_witness = cfg.has_monitor("witness");
  const bool want_decay = cfg.has_monitor("decay") && !cfg.decay_r.empty();

  const double t_cmp = cfg.compare_s / (1.0 - cfg.compare_s);

  // ---- physical frame ----
  std::optional<RadialField> u_at_cmp;
  if (cfg.frame == Frame::Physical || cfg.frame == Frame::Both) {
    RadialField u = phi;
    double t = 0.0;
    if (want_ledger) ledger.append_physical(0.0, u);
    if (want_decay)
      for (double r : cfg.decay_r) out.decay[r].emplace_back(0.0, norm_lr(u, r));
    const bool snap_cmp = cfg.frame == Frame::Both;
    while (t < cfg.t_end - 1e-14) {
      double dt = std::min(cfg.stepping.dt, cfg.t_end - t);
      if (snap_cmp && t < t_cmp && !u_at_cmp) dt = std::min(dt, t_cmp - t);
      StepperConfig sc = cfg.stepping;
      sc.dt = dt;
      u = strang_step_physical(u, cfg.params, sc);
      t += dt;
      if (snap_cmp && !u_at_cmp && std::abs(t - t_cmp) <= 1e-12) u_at_cmp = u;
      if (want_ledger) ledger.append_physical(t, u);
      if (want_decay)
        for (double r : cfg.decay_r) out.decay[r].emplace_back(t, norm_lr(u, r));
    }
    std::ofstream os(fs::path(out.dir) / "u_final.csv");
    write_field_csv(u, os);
  }

  // ---- lens frame ----
  if (cfg.frame == Frame::Lens || cfg.frame == Frame::Both) {
    double lens_R = cfg.lens_R;
    int lens_M = cfg.lens_M;
    if (lens_R <= 0.0)
      lens_R = (cfg.frame == Frame::Both) ? cfg.grid_R / (1.0 + t_cmp) : cfg.grid_R;
    if (lens_M <= 0) {
      const double h = cfg.grid_R / (cfg.grid_M + 1);
      lens_M = std::max(16, static_cast<int>(std::lround(lens_R / h)) - 1);
    }
    GridPtr lens_grid = make_grid(lens_R, lens_M, cfg.params.N);
    RadialField psi = lens_datum(cfg, lens_grid);
    const RadialField theta =
        want_witness ? witness_bump(lens_grid) : RadialField::zeros(lens_grid);

    std::vector<double> targets;
    if (cfg.frame == Frame::Both) targets.push_back(cfg.compare_s);
    if (cfg.s_end > 0.0) targets.push_back(cfg.s_end);
    for (double e : cfg.extract_eps) targets.push_back(1.0 - e);
    if (targets.empty()) targets.push_back(cfg.compare_s);

    Ledger* lens_ledger = (cfg.frame == Frame::Lens && want_ledger) ? &ledger : nullptr;
    Ledger both_ledger(cfg.params);  // lens ledger for frame=both goes to a separate csv
    if (cfg.frame == Frame::Both && want_ledger) lens_ledger = &both_ledger;

    auto on_step = [&](const LensState& st) {
      if (lens_ledger) lens_ledger->append_lens(st);
      if (want_witness) out.witness.push_back({st.s, pairing(st.v, theta)});
      if (want_decay && cfg.frame != Frame::Both) {
        const double t = st.s / (1.0 - st.s);
        for (double r : cfg.decay_r) {
          // || u(t) ||_r = (1+t)^{-N(r-2)/(2r)} || v(s) ||_r
          const double factor = std::pow(1.0 + t, -cfg.params.N * (r - 2.0) / (2.0 * r));
          out.decay[r].emplace_back(t, factor * norm_lr(st.v, r));
        }
      }
    };

    LensRunResult lr = run_lens_frame(psi, cfg.params, cfg.stepping, targets, on_step);

    {
      std::ofstream os(fs::path(out.dir) / "v_final.csv");
      write_field_csv(lr.final_state.v, os);
    }

    // frame equivalence at the comparison checkpoint
    if (cfg.frame == Frame::Both) {
      const LensState* at_cmp = nullptr;
      for (const auto& st : lr.snapshots)
        if (std::abs(st.s - cfg.compare_s) <= 1e-12) at_cmp = &st;
      if (at_cmp && u_at_cmp) {
        LensState mapped = to_lens(*u_at_cmp, t_cmp, lens_grid);
        const double rel = rel_l2_diff(mapped.v, at_cmp->v);
        IdentityResiduals res = check_identities(*u_at_cmp, t_cmp, *at_cmp, cfg.params);
        json eq;
        eq["s"] = cfg.compare_s;
        eq["t"] = t_cmp;
        eq["rel_l2"] = rel;
        eq["residual_grad_lens"] = res.grad_lens;
        eq["residual_grad_physical"] = res.grad_physical;
        eq["residual_mass"] = res.mass;
        for (const auto& [beta, r] : res.lp)
          eq["residual_lp"].push_back({{"beta", beta}, {"residual", r}});
        rec["equivalence"] = eq;
      }
      if (want_ledger) {
        std::ofstream os(fs::path(out.dir) / "ledger_lens.csv");
        both_ledger.write_csv(os);
      }
    }

    // scattering extraction from the states nearest s = 1
    if (!cfg.extract_eps.empty()) {
      std::vector<LensState> near_one;
      for (const auto& st : lr.snapshots) {
        if (1.0 - st.s < 0.1 + 1e-12) near_one.push_back(st);
      }
      auto [u_plus, report] = extract_scattering_state(near_one);
      out.extraction = report;
      json ext;
      ext["eps"] = report.eps;
      ext["sigma_diff"] = report.sigma_diff;
      ext["l2_diff"] = report.l2_diff;
      ext["mass_u_plus"] = report.mass_u_plus;
      ext["mass_phi"] = stats.mass;
      rec["extraction"] = ext;
      std::ofstream os(fs::path(out.dir) / "u_plus.csv");
      write_field_csv(u_plus, os);
      std::ofstream js(fs::path(out.dir) / "extraction.json");
      js << ext.dump(2) << "\n";
    }

    if (want_witness) {
      std::ofstream os(fs::path(out.dir) / "witness.csv");
      os << "s,re_z,im_z,abs_z\n";
      char buf[120];
      for (const auto& pt : out.witness) {
        std::snprintf(buf, sizeof buf, "%.15g,%.15g,%.15g,%.15g\n", pt.s, pt.z.real(),
                      pt.z.imag(), std::abs(pt.z));
        os << buf;
      }
      if (cfg.params.p1 <= 2.0 / cfg.params.N + 1e-15) {
        const WitnessReport wr = nonscatter_witness(out.witness, cfg.params);
        rec["witness"] = fit_to_json(wr.fit);
        rec["witness"]["growth"] = wr.growth;
        rec["witness"]["drift"] = wr.drift;
      } else {
        rec["witness"] = {{"drift", witness_drift(out.witness, 0.5)}};
      }
    }

    // Gronwall exponent from the lens ledger
    const auto& lrecs = (cfg.frame == Frame::Both) ? both_ledger.records() : ledger.records();
    if (want_ledger && cfg.frame != Frame::Both && !lrecs.empty() && lrecs.back().time >= 0.95 &&
        cfg.params.p1 < 4.0 / cfg.params.N) {
      rec["gronwall"] = fit_to_json(gronwall_exponent_check(lrecs, cfg.params));
    }
  }

  out.ledger = ledger.records();
  if (want_ledger) {
    std::ofstream os(fs::path(out.dir) / "ledger.csv");
    ledger.write_csv(os);
    rec["ledger"] = "ledger.csv";
  }

  if (want_decay) {
    for (const auto& [r, series] : out.decay) {
      char name[48];
      std::snprintf(name, sizeof name, "decay_r%g.csv", r);
      write_decay_csv(fs::path(out.dir) / name, series);
      if (series.size() >= 8 && series.back().first >= 20.0) {
        std::snprintf(name, sizeof name, "%g", r);
        rec["decay"][name] = fit_to_json(decay_fit(series, r, cfg.params.N));
      }
    }
  }

  const auto wall_end = std::chrono::steady_clock::now();
  rec["wall_clock_s"] = std::chrono::duration<double>(wall_end - wall_start).count();
  out.record = rec;
  std::ofstream js(fs::path(out.dir) / "record.json");
  js << rec.dump(2) << "\n";
  return out;
}

SweepReport sweep(const RunConfig& base, int jobs) {
  if (jobs < 1) throw ParameterError("sweep: jobs >= 1 required");
  const std::vector<RunConfig> points = expand_sweep(base);

  SweepReport report;
  report.rows.resize(points.size());
  std::atomic<std::size_t> cursor{0};
  std::mutex io_mu;

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= points.size()) return;
      const RunConfig& cfg = points[i];
      SweepRow row;
      row.index = i;
      row.params = cfg.params;
      row.hash = config_hash(cfg);
      const fs::path rec_path = fs::path(cfg.out_dir) / row.hash / "record.json";
      try {
        if (fs::exists(rec_path)) {
          std::ifstream in(rec_path);
          json j = json::parse(in);
          row.status = "cached";
          row.verdict = j["verdict"]["tag"].get<std::string>();
          row.source = j["verdict"]["source"].get<std::string>();
          if (j.contains("gronwall") && !j["gronwall"]["skipped"].get<bool>()) {
            row.gronwall_slope = j["gronwall"]["slope"].get<double>();
            row.has_gronwall = true;
          }
        } else {
          RunOutputs res = run(cfg);
          row.status = "ok";
          row.verdict = to_string(res.verdict.tag);
          row.source = res.verdict.source;
          if (res.record.contains("gronwall") && !res.record["gronwall"]["skipped"].get<bool>()) {
            row.gronwall_slope = res.record["gronwall"]["slope"].get<double>();
            row.has_gronwall = true;
          }
        }
      } catch (const std::exception& e) {
        row.status = "error";
        row.error = e.what();
      }
      std::lock_guard<std::mutex> lock(io_mu);
      report.rows[i] = std::move(row);
    }
  };

  std::vector<std::thread> pool;
  const int n = std::min<std::size_t>(jobs, points.size());
  pool.reserve(n);
  for (int k = 0; k < n; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  fs::create_directories(base.out_dir);
  report.csv_path = (fs::path(base.out_dir) / "sweep_report.csv").string();
  std::ofstream os(report.csv_path);
  os << "index,hash,status,N,lambda1,lambda2,p1,p2,verdict,source,gronwall_slope,error\n";
  char buf[160];
  for (const auto& row : report.rows) {
    std::snprintf(buf, sizeof buf, "%zu,%s,%s,%d,%.15g,%.15g,%.15g,%.15g,", row.index,
                  row.hash.c_str(), row.status.c_str(), row.params.N, row.params.lambda1,
                  row.params.lambda2, row.params.p1, row.params.p2);
    os << buf << row.verdict << "," << row.source << ",";
    if (row.has_gronwall) {
      std::snprintf(buf, sizeof buf, "%.15g", row.gronwall_slope);
      os << buf;
    }
    os << "," << row.error << "\n";
  }
  return report;
}

}  // namespace nlslab
