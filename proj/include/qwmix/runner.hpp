#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qwmix/experiments.hpp"

namespace qwmix {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertionFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr std::size_t kMaxGridJobs = 10000;

enum class CacheMode { Use, Ignore, Refresh };
CacheMode parse_cache_mode(const std::string& s);
std::string to_string(CacheMode mode);

/// {"experiment": name, "params": {...}, "grid": {key: [values]}, "seed": u64,
///  "out": dir, "cache": "use" | "ignore" | "refresh"}
/// Each job's parameters are `params` overlaid with one point of the grid's
/// cartesian product (keys in lexicographic order, last key fastest).
struct RunConfig {
  std::string experiment;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json grid = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::filesystem::path out = "results";
  CacheMode cache = CacheMode::Use;
};

/// Throws InvalidParameter on any schema violation, unknown experiment or
/// invalid job parameters.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);

std::vector<nlohmann::json> expand_grid(const RunConfig& config);

/// Hex FNV-1a of (experiment, canonical params, seed, code version).
std::string job_key(const std::string& experiment, const nlohmann::json& params, std::uint64_t seed);

struct RunOverrides {
  std::optional<unsigned> jobs;
  std::optional<std::uint64_t> seed;
  std::optional<CacheMode> cache;
  std::optional<std::filesystem::path> out;
};

struct JobOutcome {
  nlohmann::json params;
  std::string key;
  std::optional<ExperimentResult> result;
  bool cached = false;
  std::string error;
  bool config_error = false;
};

struct RunSummary {
  std::vector<JobOutcome> jobs;
  int exit_code = kExitOk;
};

/// Runs every job on `threads` workers. Writes <out>/<experiment>-<key>.json per
/// job and <out>/<experiment>.csv, caching under <out>/.cache.
RunSummary run(const RunConfig& config, unsigned threads);

/// Loads, applies overrides, runs and prints a summary table. Returns the exit code.
int run_command(const std::filesystem::path& config_path, const RunOverrides& overrides, std::ostream& out,
                std::ostream& err);

struct ReportOutput {
  std::string markdown;
  std::size_t results = 0;
  std::size_t skipped = 0;
};

/// Aggregates every result JSON in `dir` into one markdown table per experiment
/// and a combined CSV (dir/report.csv). Unparseable files are skipped and counted.
ReportOutput report(const std::filesystem::path& dir);

/// Writes via a temporary sibling file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace qwmix
