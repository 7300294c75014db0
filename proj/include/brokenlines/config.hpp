#pragma once

// Run configuration for the command-line tool and the acceptance suite.
//
// File format: one `key = value` per line, `#` starts a comment. The output
// directory can be overridden with the BROKENLINES_OUT environment variable.

#include <cstdint>
#include <string>

#include "brokenlines/morse.hpp"

namespace bl {

struct RunConfig {
  int truncation = 4;
  /// Largest |I| for exhaustive enumeration checks.
  int max_order = 6;
  /// Largest |I|, |J| for the amalgam checks.
  int max_amalgam = 3;
  /// Sampled points per stratum of each amalgam.
  int per_stratum = 8;
  std::uint64_t seed = 20240601;
  std::string out_dir = "out";
  morse::MorseConfig morse;

  /// Throws std::invalid_argument on a non-positive bound.
  void check() const;
};

/// Applies one `key = value` setting. Throws std::invalid_argument on an
/// unknown key or a malformed value.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Defaults overridden by the file (if any) and then by the environment.
RunConfig load_config(const std::string& path);

}  // namespace bl
