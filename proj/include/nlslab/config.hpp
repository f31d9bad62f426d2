#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nlslab/params.hpp"
#include "nlslab/propagators.hpp"

namespace nlslab {

struct InitSpec {
  enum class Kind { Gaussian, File } kind = Kind::Gaussian;
  double amplitude = 1.0;
  double width = 1.0;
  double chirp = 0.0;  // quadratic phase exp(i chirp r^2) on the physical datum
  std::string path;
};

enum class Frame { Physical, Lens, Both };

// Flat key=value experiment description (JSON mirror accepted).  The raw
// key/value map is kept for canonical echo and content hashing.
struct RunConfig {
  ModelParams params;
  double grid_R = 20.0;
  int grid_M = 2048;
  double lens_R = 0.0;  // 0: physical R for lens runs, R/(1+t_cmp) for frame=both
  int lens_M = 0;       // 0: derived to match the physical spacing
  StepperConfig stepping;
  InitSpec init;
  Frame frame = Frame::Physical;
  double t_end = 0.0;
  double s_end = 0.0;
  std::vector<std::string> monitors;  // ledger, witness, decay, equivalence
  std::vector<double> decay_r;
  std::vector<double> extract_eps;
  double compare_s = 0.5;  // frame=both checkpoint
  std::uint64_t seed = 0;
  std::string out_dir = "runs";

  std::map<std::string, std::string> raw;  // canonical echo

  void validate() const;
  bool has_monitor(const std::string& name) const;
};

// key = value lines with one dotted namespace level, '#' comments; a JSON
// object with the same dotted keys (or nested objects) is accepted too.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Sweep axes: sweep.<key> = comma list expands to the Cartesian product over
// the base configuration.
std::vector<RunConfig> expand_sweep(const RunConfig& base);

std::string canonical_config(const RunConfig& cfg);
std::string config_hash(const RunConfig& cfg);  // FNV-1a 64, hex

}  // namespace nlslab
