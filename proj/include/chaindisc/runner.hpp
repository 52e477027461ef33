#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "json.hpp"

#include "chaindisc/core.hpp"

namespace chaindisc::runner {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kSchema = "chaindisc/1";

// Everything a single invocation needs. `params` carries command-specific
// knobs (mode, eps, k, ...); lab commands put their parsed config file under
// params["config"].
struct RunConfig {
  std::string command;
  std::string input;  // CSV path; empty = use the generator
  std::string gen;    // e.g. "basis:8", "random-box:12,12"
  std::uint64_t seed = 1;
  std::uint64_t budget = 0;  // 0 = command default
  std::uint64_t trials = 0;  // 0 = command default
  int threads = 0;           // 0 = library default
  std::map<std::string, double> constants;
  std::string out;  // empty = stdout
  std::string format = "json";
  nlohmann::json params = nlohmann::json::object();
};

// Dispatches to the named operation and wraps the outcome in a report that
// embeds the config echo, seed, version and a single timestamp field.
// Everything except that timestamp is deterministic for a fixed config.
nlohmann::ordered_json run(const RunConfig& cfg);

// Deterministic instance generators:
//   basis:n          n standard basis vectors
//   cube:n           all of {-1,1}^n, n <= 12
//   intervals:n,m    m nested {0,1} interval indicators on n points (so no
//                    two-point set is ever shattered: VC dimension 1)
//   random-box:n,m   m points uniform in [-1,1]^n
//   random-sphere:n,m  m points uniform on the unit sphere
PointSet generate(const std::string& spec, std::uint64_t seed);

// Blank out the one nondeterministic field so reports can be compared.
void mask_timestamp(nlohmann::ordered_json& report);

// Flatten a report for plotting: per-row CSV when rows exist, key/value
// pairs of the result scalars otherwise.
std::string report_csv(const nlohmann::ordered_json& report);

}  // namespace chaindisc::runner
