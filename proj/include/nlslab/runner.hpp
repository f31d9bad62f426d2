#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nlslab/config.hpp"
#include "nlslab/criteria.hpp"
#include "nlslab/diagnostics.hpp"
#include "nlslab/pseudoconformal.hpp"

namespace nlslab {

struct RunOutputs {
  std::string dir;  // out_dir/<config hash>
  nlohmann::json record;
  std::vector<LedgerRecord> ledger;
  std::vector<WitnessPoint> witness;
  std::map<double, std::vector<std::pair<double, double>>> decay;  // r -> (t, ||u||_r)
  std::optional<ExtractionReport> extraction;
  Verdict verdict;
};

// Executes the configured frames, attaches monitors, persists the ledger CSV
// and record JSON under a directory named by the config content hash.
RunOutputs run(const RunConfig& cfg);

struct SweepRow {
  std::size_t index = 0;
  std::string hash;
  std::string status;  // ok | cached | error
  std::string error;
  ModelParams params;
  std::string verdict;
  std::string source;
  double gronwall_slope = 0;
  bool has_gronwall = false;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  std::string csv_path;
};

// Runs every lattice point (worker pool of `jobs` threads); finished points
// (record.json already present) are skipped.  Per-point failures are recorded,
// not fatal.
SweepReport sweep(const RunConfig& base, int jobs);

}  // namespace nlslab
