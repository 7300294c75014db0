#include "brokenlines/config.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>

namespace bl {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int to_int(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  int x = std::stoi(v, &pos);
  if (pos != v.size()) throw std::invalid_argument("bad integer for " + key + ": " + v);
  return x;
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x = std::stod(v, &pos);
  if (pos != v.size()) throw std::invalid_argument("bad number for " + key + ": " + v);
  return x;
}

}  // namespace

void RunConfig::check() const {
  if (truncation < 1 || max_order < 1 || max_amalgam < 1 || per_stratum < 1) {
    throw std::invalid_argument("bounds must be positive");
  }
  const auto& m = morse;
  if (!(m.tol_crit > 0 && m.tol_end > 0 && m.tol_reparam > 0 && m.tol_inv > 0 && m.tol_time > 0 && m.step > 0 &&
        m.horizon > 0 && m.ring_seeds > 0 && m.grid_seeds > 0)) {
    throw std::invalid_argument("tolerances and step counts must be positive");
  }
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  auto& m = cfg.morse;
  const std::map<std::string, std::function<void()>> setters = {
      {"truncation", [&] { cfg.truncation = to_int(key, value); }},
      {"max_order", [&] { cfg.max_order = to_int(key, value); }},
      {"max_amalgam", [&] { cfg.max_amalgam = to_int(key, value); }},
      {"per_stratum", [&] { cfg.per_stratum = to_int(key, value); }},
      {"seed", [&] { cfg.seed = std::stoull(value); }},
      {"out_dir", [&] { cfg.out_dir = value; }},
      {"tol_crit", [&] { m.tol_crit = to_double(key, value); }},
      {"tol_end", [&] { m.tol_end = to_double(key, value); }},
      {"tol_reparam", [&] { m.tol_reparam = to_double(key, value); }},
      {"tol_inv", [&] { m.tol_inv = to_double(key, value); }},
      {"tol_time", [&] { m.tol_time = to_double(key, value); }},
      {"step", [&] { m.step = to_double(key, value); }},
      {"horizon", [&] { m.horizon = to_double(key, value); }},
      {"ring_seeds", [&] { m.ring_seeds = to_int(key, value); }},
      {"grid_seeds", [&] { m.grid_seeds = to_int(key, value); }},
  };
  auto it = setters.find(key);
  if (it == setters.end()) throw std::invalid_argument("unknown config key: " + key);
  try {
    it->second();
  } catch (const std::logic_error&) {
    throw std::invalid_argument("bad value for " + key + ": " + value);
  }
}

RunConfig load_config(const std::string& path) {
  RunConfig cfg;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key = value");
      }
      apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
  }
  if (const char* env = std::getenv("BROKENLINES_OUT"); env && *env) cfg.out_dir = env;
  cfg.check();
  return cfg;
}

}  // namespace bl
