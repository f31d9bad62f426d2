#include "nlslab/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace nlslab {
namespace {

using json = nlohmann::json;

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ParameterError("config: bad numeric value for " + key + ": '" + v + "'");
  }
}

long to_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ParameterError("config: bad integer value for " + key + ": '" + v + "'");
  }
}

void flatten_json(const json& j, const std::string& prefix,
                  std::map<std::string, std::string>& out) {
  for (const auto& [key, value] : j.items()) {
    const std::string full = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      flatten_json(value, full, out);
    } else if (value.is_array()) {
      std::string list;
      for (const auto& item : value) {
        if (!list.empty()) list += ",";
        list += item.is_string() ? item.get<std::string>() : item.dump();
      }
      out[full] = list;
    } else if (value.is_string()) {
      out[full] = value.get<std::string>();
    } else {
      out[full] = value.dump();
    }
  }
}

RunConfig from_map(std::map<std::string, std::string> kv) {
  RunConfig cfg;
  cfg.raw = kv;
  bool have_p2 = false;
  for (const auto& [key, value] : kv) {
    if (key == "params.N") cfg.params.N = static_cast<int>(to_long(key, value));
    else if (key == "params.lambda1") cfg.params.lambda1 = to_double(key, value);
    else if (key == "params.lambda2") cfg.params.lambda2 = to_double(key, value);
    else if (key == "params.p1") cfg.params.p1 = to_double(key, value);
    else if (key == "params.p2") { cfg.params.p2 = to_double(key, value); have_p2 = true; }
    else if (key == "grid.R") cfg.grid_R = to_double(key, value);
    else if (key == "grid.M") cfg.grid_M = static_cast<int>(to_long(key, value));
    else if (key == "grid.lens_R") cfg.lens_R = to_double(key, value);
    else if (key == "grid.lens_M") cfg.lens_M = static_cast<int>(to_long(key, value));
    else if (key == "stepping.dt") cfg.stepping.dt = to_double(key, value);
    else if (key == "stepping.near_one_ratio") cfg.stepping.near_one_ratio = to_double(key, value);
    else if (key == "stepping.substeps_linear")
      cfg.stepping.substeps_linear = static_cast<int>(to_long(key, value));
    else if (key == "init.kind") {
      if (value == "gaussian") cfg.init.kind = InitSpec::Kind::Gaussian;
      else if (value == "file") cfg.init.kind = InitSpec::Kind::File;
      else throw ParameterError("config: init.kind must be gaussian or file");
    } else if (key == "init.amplitude") cfg.init.amplitude = to_double(key, value);
    else if (key == "init.width") cfg.init.width = to_double(key, value);
    else if (key == "init.chirp") cfg.init.chirp = to_double(key, value);
    else if (key == "init.file") cfg.init.path = value;
    else if (key == "frame") {
      if (value == "physical") cfg.frame = Frame::Physical;
      else if (value == "lens") cfg.frame = Frame::Lens;
      else if (value == "both") cfg.frame = Frame::Both;
      else throw ParameterError("config: frame must be physical, lens or both");
    } else if (key == "t_end") cfg.t_end = to_double(key, value);
    else if (key == "s_end") cfg.s_end = to_double(key, value);
    else if (key == "monitors") cfg.monitors = split_list(value);
    else if (key == "decay.r") {
      for (const auto& item : split_list(value)) cfg.decay_r.push_back(to_double(key, item));
    } else if (key == "extract.eps") {
      for (const auto& item : split_list(value)) cfg.extract_eps.push_back(to_double(key, item));
    } else if (key == "compare.s") cfg.compare_s = to_double(key, value);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_long(key, value));
    else if (key == "out_dir") cfg.out_dir = value;
    else if (key.rfind("sweep.", 0) == 0) { /* expanded by expand_sweep */ }
    else throw ParameterError("config: unknown key '" + key + "'");
  }
  if (!have_p2) cfg.params.p2 = 0.0;
  return cfg;
}

}  // namespace

void RunConfig::validate() const {
  params.validate();
  stepping.validate();
  if (grid_M < 16) throw ParameterError("config: grid.M >= 16 required for runs");
  if (!(grid_R > 0.0)) throw ParameterError("config: grid.R > 0 required");
  if (init.kind == InitSpec::Kind::Gaussian && !(init.width > 0.0))
    throw ParameterError("config: init.width > 0 required");
  if (init.kind == InitSpec::Kind::File && init.path.empty())
    throw ParameterError("config: init.file required for file init");
  if (frame == Frame::Physical || frame == Frame::Both) {
    if (!(t_end > 0.0)) throw ParameterError("config: t_end > 0 required for physical runs");
  }
  if (frame == Frame::Lens && !(s_end > 0.0 && s_end < 1.0))
    throw ParameterError("config: s_end must lie in (0,1) for lens runs");
  if (frame == Frame::Both) {
    if (!(compare_s > 0.0 && compare_s < 1.0))
      throw ParameterError("config: compare.s must lie in (0,1)");
    if (s_end != 0.0 && !(s_end > 0.0 && s_end < 1.0))
      throw ParameterError("config: s_end must lie in (0,1)");
  }
  for (double e : extract_eps)
    if (!(e > 0.0 && e < 0.1))
      throw ParameterError("config: extract.eps entries must lie in (0, 0.1)");
}

bool RunConfig::has_monitor(const std::string& name) const {
  for (const auto& m : monitors)
    if (m == name) return true;
  return false;
}

RunConfig parse_config_text(const std::string& text) {
  const std::string body = trim(text);
  std::map<std::string, std::string> kv;
  if (!body.empty() && body.front() == '{') {
    json j;
    try {
      j = json::parse(body);
    } catch (const json::exception& e) {
      throw ParameterError(std::string("config: bad JSON: ") + e.what());
    }
    flatten_json(j, "", kv);
  } else {
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ParameterError("config: expected key = value: " + line);
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) throw ParameterError("config: empty key in line: " + line);
      kv[key] = value;
    }
  }
  return from_map(std::move(kv));
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::vector<RunConfig> expand_sweep(const RunConfig& base) {
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
  for (const auto& [key, value] : base.raw) {
    if (key.rfind("sweep.", 0) == 0) axes.emplace_back(key.substr(6), split_list(value));
  }
  if (axes.empty()) return {base};
  for (const auto& [key, vals] : axes)
    if (vals.empty()) throw ParameterError("config: empty sweep axis " + key);

  std::vector<RunConfig> out;
  std::vector<std::size_t> idx(axes.size(), 0);
  for (;;) {
    std::map<std::string, std::string> kv = base.raw;
    for (std::size_t a = 0; a < axes.size(); ++a) kv[axes[a].first] = axes[a].second[idx[a]];
    for (auto it = kv.begin(); it != kv.end();) {
      if (it->first.rfind("sweep.", 0) == 0) it = kv.erase(it);
      else ++it;
    }
    out.push_back(from_map(std::move(kv)));
    std::size_t a = 0;
    for (; a < axes.size(); ++a) {
      if (++idx[a] < axes[a].second.size()) break;
      idx[a] = 0;
    }
    if (a == axes.size()) break;
  }
  return out;
}

std::string canonical_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& [key, value] : cfg.raw) {
    out += key;
    out += "=";
    out += value;
    out += "\n";
  }
  return out;
}

std::string config_hash(const RunConfig& cfg) {
  const std::string canon = canonical_config(cfg);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace nlslab
