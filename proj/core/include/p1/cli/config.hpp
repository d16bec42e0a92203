#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace p1::cli {

/// Settings shared by all commands. Precedence when assembled by the
/// command-line front end: flags > config file > these defaults.
struct RunConfig {
  int digits = 32;        ///< Taylor step accuracy 10^{-digits}; at most 33 (binary128)
  int K = 40;             ///< transseries levels
  int M = 60;             ///< orders per level
  int k_max = 40;         ///< predictor levels
  int m_max = 6;          ///< G_m functions
  double A = 5;           ///< left end of the predictor range
  double x_seed = 30;     ///< seeding point for h(.; C)
  double x_max = 40;      ///< right end of the predictor grid
  double drift_tol = 1e-10;
  double bracket_tol = 1e-8;  ///< slack on the bracket in verify and sweep
  int grid_edges = 2048;
  std::string output;     ///< empty: stdout
  std::string format = "json";
  std::uint64_t seed = 20240601;
  int threads = 0;        ///< 0: hardware concurrency
};

/// Sets one key from its textual value. Throws DomainError on an unknown
/// key or a malformed value.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Reads `key = value` lines; `#` starts a comment; blank lines are ignored.
void load_config(RunConfig& cfg, std::istream& in);
void load_config_file(RunConfig& cfg, const std::string& path);

/// Throws DomainError if a tolerance or an order is out of range.
void validate(const RunConfig& cfg);

std::string dump_config(const RunConfig& cfg);

}  // namespace p1::cli
