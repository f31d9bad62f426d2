#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nlslab/ground_state.hpp"
#include "nlslab/runner.hpp"
#include "nlslab/version.hpp"

using json = nlohmann::json;
using namespace nlslab;

namespace {

int do_run(const std::string& config_path, std::optional<Frame> frame_override) {
  RunConfig cfg = parse_config_file(config_path);
  if (frame_override) cfg.frame = *frame_override;
  RunOutputs out = run(cfg);
  std::cout << out.record.dump(2) << "\n";
  std::cerr << "run dir: " << out.dir << "\n";
  return 0;
}

int do_ground_state(int N, double tol, const std::string& csv_out) {
  GroundStateResult gs = shoot_ground_state(N, tol);
  json j;
  j["N"] = gs.dim;
  j["w0"] = gs.w0;
  j["mass"] = gs.mass;
  j["CN"] = gs.CN;
  j["pohozaev"] = json::array({gs.pohozaev1, gs.pohozaev2});
  j["splice_radius"] = gs.splice_radius;
  std::cout << j.dump(2) << "\n";
  if (!csv_out.empty()) {
    std::ofstream os(csv_out);
    if (!os) throw ParameterError("ground-state: cannot write " + csv_out);
    write_field_csv(gs.W, os);
  }
  return 0;
}

int do_classify(int N, double l1, double l2, double p1, double p2, double mass, double energy,
                double sigma) {
  ModelParams mp{N, l1, l2, p1, p2};
  DataStats stats{mass, energy, sigma};
  std::optional<double> CN;
  if (l1 > 0.0 && l2 < 0.0 && p1 > 2.0 / N && p2 < 4.0 / N) CN = ground_state_cached(N).CN;
  Verdict v = classify(mp, stats, CN);
  json j;
  j["tag"] = to_string(v.tag);
  j["source"] = v.source;
  if (v.threshold_margin) j["threshold_margin"] = *v.threshold_margin;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int do_decay_fit(const std::string& input, double r, int N) {
  std::ifstream in(input);
  if (!in) throw ParameterError("decay-fit: cannot open " + input);
  std::vector<std::pair<double, double>> series;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    double t, v;
    if (std::sscanf(line.c_str(), "%lg,%lg", &t, &v) == 2) series.emplace_back(t, v);
  }
  FitResult fit = decay_fit(series, r, N);
  json j;
  j["slope"] = fit.slope;
  j["theory"] = fit.theory;
  j["points"] = fit.points;
  j["skipped"] = fit.skipped;
  if (!fit.note.empty()) j["note"] = fit.note;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int do_sweep(const std::string& config_path, int jobs) {
  RunConfig base = parse_config_file(config_path);
  SweepReport report = sweep(base, jobs);
  std::size_t failed = 0;
  for (const auto& row : report.rows)
    if (row.status == "error") ++failed;
  std::cerr << "sweep: " << report.rows.size() << " points, " << failed << " failed; report at "
            << report.csv_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial combined-power nonlinear Schrodinger laboratory"};
  app.set_version_flag("--version", NLSLAB_VERSION);
  app.require_subcommand(1);

  std::string config_path, input_path, csv_out;
  int N = 3, jobs = 1;
  double tol = 1e-10, r_exp = 4.0;
  double l1 = 1.0, l2 = 0.0, p1 = 2.0, p2 = 0.0, mass = 0.0, energy_v = 0.0, sigma = 0.0;

  auto* sim = app.add_subcommand("simulate", "run the configured experiment (frame from config)");
  sim->add_option("--config", config_path, "run configuration file")->required();

  auto* lens = app.add_subcommand("lens", "run the lens-frame evolution");
  lens->add_option("--config", config_path, "run configuration file")->required();

  auto* gs = app.add_subcommand("ground-state", "compute the ground state and C_N");
  gs->add_option("--N", N, "spatial dimension")->required();
  gs->add_option("--tol", tol, "bisection bracket tolerance, (0, 1e-6]");
  gs->add_option("--csv", csv_out, "write the profile as CSV");

  auto* cls = app.add_subcommand("classify", "regime verdict for a parameter tuple");
  cls->add_option("--N", N)->required();
  cls->add_option("--lambda1", l1)->required();
  cls->add_option("--lambda2", l2)->required();
  cls->add_option("--p1", p1)->required();
  cls->add_option("--p2", p2);
  cls->add_option("--mass", mass);
  cls->add_option("--energy", energy_v);
  cls->add_option("--sigma", sigma);

  auto* dfit = app.add_subcommand("decay-fit", "fit a decay exponent from a (t, norm) CSV");
  dfit->add_option("--input", input_path)->required();
  dfit->add_option("--r", r_exp)->required();
  dfit->add_option("--N", N)->required();

  auto* ext = app.add_subcommand("extract", "lens run with scattering-state extraction");
  ext->add_option("--config", config_path, "run configuration file")->required();

  auto* sw = app.add_subcommand("sweep", "run a parameter lattice");
  sw->add_option("--config", config_path, "sweep configuration file")->required();
  sw->add_option("--jobs", jobs, "worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return do_run(config_path, std::nullopt);
    if (lens->parsed()) return do_run(config_path, Frame::Lens);
    if (gs->parsed()) return do_ground_state(N, tol, csv_out);
    if (cls->parsed()) return do_classify(N, l1, l2, p1, p2, mass, energy_v, sigma);
    if (dfit->parsed()) return do_decay_fit(input_path, r_exp, N);
    if (ext->parsed()) return do_run(config_path, Frame::Lens);
    if (sw->parsed()) return do_sweep(config_path, jobs);
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const StructuralError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
