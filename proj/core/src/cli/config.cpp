#include "p1/cli/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "p1/error.hpp"

namespace p1::cli {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  const char* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end) throw DomainError("bad value for '" + key + "': " + v);
  return out;
}

}  // namespace

void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key == "digits") c.digits = parse_number<int>(key, v);
  else if (key == "K") c.K = parse_number<int>(key, v);
  else if (key == "M") c.M = parse_number<int>(key, v);
  else if (key == "k_max") c.k_max = parse_number<int>(key, v);
  else if (key == "m_max") c.m_max = parse_number<int>(key, v);
  else if (key == "A") c.A = parse_number<double>(key, v);
  else if (key == "x_seed") c.x_seed = parse_number<double>(key, v);
  else if (key == "x_max") c.x_max = parse_number<double>(key, v);
  else if (key == "drift_tol") c.drift_tol = parse_number<double>(key, v);
  else if (key == "bracket_tol") c.bracket_tol = parse_number<double>(key, v);
  else if (key == "grid_edges") c.grid_edges = parse_number<int>(key, v);
  else if (key == "output") c.output = v;
  else if (key == "format") c.format = v;
  else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, v);
  else if (key == "threads") c.threads = parse_number<int>(key, v);
  else throw DomainError("unknown config key '" + key + "'");
}

void load_config(RunConfig& cfg, std::istream& in) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DomainError("config line " + std::to_string(lineno) + ": expected key = value");
    apply_setting(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file " + path);
  load_config(cfg, in);
}

void validate(const RunConfig& c) {
  if (c.digits < 8 || c.digits > 33) throw DomainError("digits must be in [8, 33]");
  if (c.K < 1 || c.M < 4) throw DomainError("K >= 1 and M >= 4 required");
  if (c.k_max < 6 || c.k_max > c.K) throw DomainError("k_max must be in [6, K]");
  if (c.m_max < 0) throw DomainError("m_max must be >= 0");
  if (!(c.A > 2.25)) throw DomainError("A must exceed 9/4");
  if (!(c.x_max > c.A) || !(c.x_seed >= 20)) throw DomainError("need x_max > A and x_seed >= 20");
  if (!(c.drift_tol > 0) || !(c.bracket_tol > 0)) throw DomainError("tolerances must be positive");
  if (c.grid_edges < 16) throw DomainError("grid_edges must be >= 16");
  if (c.format != "json" && c.format != "latex" && c.format != "csv") throw DomainError("format must be json, latex or csv");
  if (c.threads < 0) throw DomainError("threads must be >= 0");
}

std::string dump_config(const RunConfig& c) {
  std::ostringstream o;
  o.precision(17);
  o << "digits = " << c.digits << "\nK = " << c.K << "\nM = " << c.M << "\nk_max = " << c.k_max
    << "\nm_max = " << c.m_max << "\nA = " << c.A << "\nx_seed = " << c.x_seed << "\nx_max = " << c.x_max
    << "\ndrift_tol = " << c.drift_tol << "\nbracket_tol = " << c.bracket_tol << "\ngrid_edges = " << c.grid_edges
    << "\nformat = " << c.format << "\nseed = " << c.seed << "\nthreads = " << c.threads << "\n";
  if (!c.output.empty()) o << "output = " << c.output << "\n";
  return o.str();
}

}  // namespace p1::cli
