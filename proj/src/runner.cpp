#include "qwmix/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "qwmix/config.hpp"
#include "qwmix/error.hpp"

namespace qwmix {

namespace fs = std::filesystem;
using json = nlohmann::json;

CacheMode parse_cache_mode(const std::string& s) {
  if (s == "use") return CacheMode::Use;
  if (s == "ignore") return CacheMode::Ignore;
  if (s == "refresh") return CacheMode::Refresh;
  throw InvalidParameter("cache", "expected use, ignore or refresh, got '" + s + "'");
}

std::string to_string(CacheMode mode) {
  switch (mode) {
    case CacheMode::Use: return "use";
    case CacheMode::Ignore: return "ignore";
    case CacheMode::Refresh: return "refresh";
  }
  return "use";
}

RunConfig parse_run_config(const json& j) {
  if (!j.is_object()) throw InvalidParameter("config", "must be a JSON object");
  static const char* known[] = {"experiment", "params", "grid", "seed", "out", "cache"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(std::begin(known), std::end(known), it.key()) == std::end(known))
      throw InvalidParameter(it.key(), "unknown config key");

  RunConfig c;
  if (!j.contains("experiment") || !j.at("experiment").is_string())
    throw InvalidParameter("experiment", "missing or not a string");
  c.experiment = j.at("experiment").get<std::string>();
  if (!is_experiment(c.experiment)) throw InvalidParameter("experiment", "unknown experiment '" + c.experiment + "'");
  if (j.contains("params")) {
    if (!j.at("params").is_object()) throw InvalidParameter("params", "must be an object");
    c.params = j.at("params");
  }
  if (j.contains("grid")) {
    if (!j.at("grid").is_object()) throw InvalidParameter("grid", "must be an object of arrays");
    for (auto it = j.at("grid").begin(); it != j.at("grid").end(); ++it) {
      if (!it.value().is_array() || it.value().empty())
        throw InvalidParameter("grid." + it.key(), "must be a non-empty array");
      if (c.params.contains(it.key())) throw InvalidParameter("grid." + it.key(), "also set in params");
    }
    c.grid = j.at("grid");
  }
  if (j.contains("seed")) {
    const auto& seed = j.at("seed");
    if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0)) throw InvalidParameter("seed", "must be a non-negative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("out")) {
    if (!j.at("out").is_string()) throw InvalidParameter("out", "must be a string");
    c.out = j.at("out").get<std::string>();
  }
  if (j.contains("cache")) {
    if (!j.at("cache").is_string()) throw InvalidParameter("cache", "must be a string");
    c.cache = parse_cache_mode(j.at("cache").get<std::string>());
  }
  for (const auto& p : expand_grid(c)) validate_experiment_params(c.experiment, p);
  return c;
}

RunConfig load_run_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("config", "cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidParameter("config", std::string("malformed JSON: ") + e.what());
  }
  return parse_run_config(j);
}

std::vector<json> expand_grid(const RunConfig& config) {
  std::size_t total = 1;
  for (const auto& [k, v] : config.grid.items()) {
    total *= v.size();
    if (total > kMaxGridJobs)
      throw InvalidParameter("grid", "expands to more than " + std::to_string(kMaxGridJobs) + " jobs");
  }
  std::vector<json> jobs{config.params};
  // nlohmann::json objects iterate keys in sorted order.
  for (const auto& [k, values] : config.grid.items()) {
    std::vector<json> next;
    next.reserve(jobs.size() * values.size());
    for (const auto& base : jobs)
      for (const auto& v : values) {
        json p = base;
        p[k] = v;
        next.push_back(std::move(p));
      }
    jobs = std::move(next);
  }
  return jobs;
}

std::string job_key(const std::string& experiment, const json& params, std::uint64_t seed) {
  const std::string text = experiment + '\n' + params.dump() + '\n' + std::to_string(seed) + '\n' + kCodeVersion;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_file_atomic(const fs::path& path, const std::string& contents) {
  static std::atomic<unsigned long> counter{0};
  fs::path tmp = path;
  tmp += ".tmp" + std::to_string(counter++);
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + tmp.string());
    f << contents;
    if (!f.flush()) throw Error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

namespace {

std::string csv_number(double v) {
  if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

constexpr const char* kCsvHeader = "experiment,job,kind,label,value,lhs,rhs,holds\n";

void append_csv(std::string& csv, const ExperimentResult& r, const std::string& job) {
  for (const auto& m : r.measurements)
    csv += r.name + ',' + job + ",measurement," + csv_quote(m.label) + ',' + csv_number(m.value) + ",,,\n";
  for (const auto& a : r.assertions)
    csv += r.name + ',' + job + ",assertion," + csv_quote(a.label) + ",," + csv_number(a.lhs) + ',' + csv_number(a.rhs) +
           ',' + (a.holds ? "true" : "false") + '\n';
}

std::optional<ExperimentResult> load_result(const fs::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    return ExperimentResult::from_json(json::parse(in));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

RunSummary run(const RunConfig& config, unsigned threads) {
  const auto params = expand_grid(config);
  RunSummary summary;
  summary.jobs.resize(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    summary.jobs[i].params = params[i];
    summary.jobs[i].key = job_key(config.experiment, params[i], config.seed);
  }

  const fs::path cache_dir = config.out / ".cache";
  fs::create_directories(config.out);
  if (config.cache != CacheMode::Ignore) fs::create_directories(cache_dir);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < params.size(); i = next++) {
      auto& job = summary.jobs[i];
      const fs::path cached = cache_dir / (job.key + ".json");
      if (config.cache == CacheMode::Use && fs::exists(cached)) {
        if (auto r = load_result(cached)) {
          job.result = std::move(r);
          job.cached = true;
          continue;
        }
      }
      try {
        job.result = run_experiment(config.experiment, job.params, config.seed);
        if (config.cache != CacheMode::Ignore) write_file_atomic(cached, job.result->to_json().dump(2) + '\n');
      } catch (const InvalidParameter& e) {
        job.error = e.what();
        job.config_error = true;
      } catch (const DimensionCap& e) {
        job.error = e.what();
        job.config_error = true;
      } catch (const std::exception& e) {
        job.error = e.what();
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(params.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::string csv = kCsvHeader;
  bool failed = false, config_error = false;
  for (const auto& job : summary.jobs) {
    if (!job.result) {
      (job.config_error ? config_error : failed) = true;
      continue;
    }
    write_file_atomic(config.out / (config.experiment + "-" + job.key + ".json"), job.result->to_json().dump(2) + '\n');
    append_csv(csv, *job.result, job.key);
    if (!job.result->all_hold()) failed = true;
  }
  write_file_atomic(config.out / (config.experiment + ".csv"), csv);
  summary.exit_code = config_error ? kExitConfigError : failed ? kExitAssertionFailed : kExitOk;
  return summary;
}

int run_command(const fs::path& config_path, const RunOverrides& overrides, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = load_run_config(config_path);
  } catch (const Error& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  if (overrides.seed) config.seed = *overrides.seed;
  if (overrides.cache) config.cache = *overrides.cache;
  if (overrides.out) config.out = *overrides.out;
  const unsigned threads = overrides.jobs.value_or(1);

  RunSummary s;
  try {
    s = run(config, threads);
  } catch (const std::exception& e) {
    err << "run failed: " << e.what() << '\n';
    return kExitConfigError;
  }

  out << "experiment: " << config.experiment << "  seed: " << config.seed << "  jobs: " << s.jobs.size() << '\n';
  out << std::left << std::setw(18) << "job" << std::setw(8) << "status" << std::setw(10) << "checks"
      << "params\n";
  for (const auto& job : s.jobs) {
    std::string status, checks;
    if (!job.result) {
      status = job.config_error ? "CONFIG" : "ERROR";
      checks = "-";
    } else {
      status = job.result->all_hold() ? "PASS" : "FAIL";
      checks = std::to_string(job.result->assertions.size() - job.result->failures()) + "/" +
               std::to_string(job.result->assertions.size());
    }
    out << std::setw(18) << job.key << std::setw(8) << status << std::setw(10) << checks << job.params.dump() << '\n';
    if (!job.error.empty()) err << job.key << ": " << job.error << '\n';
    if (job.result)
      for (const auto& a : job.result->assertions)
        if (!a.holds) err << job.key << ": failed " << a.label << " (lhs " << a.lhs << ", rhs " << a.rhs << ")\n";
  }
  return s.exit_code;
}

ReportOutput report(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw InvalidParameter("dir", "not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());

  ReportOutput out;
  std::map<std::string, std::vector<std::pair<std::string, ExperimentResult>>> by_name;
  for (const auto& f : files) {
    auto r = load_result(f);
    if (!r) {
      ++out.skipped;
      continue;
    }
    ++out.results;
    by_name[r->name].emplace_back(f.stem().string(), std::move(*r));
  }

  std::ostringstream md;
  std::string csv = kCsvHeader;
  for (const auto& [name, results] : by_name) {
    md << "## " << name << "\n\n";
    if (is_experiment(name)) md << experiment_claim(name) << "\n\n";
    md << "| job | label | value / lhs | rhs | holds |\n|---|---|---|---|---|\n";
    for (const auto& [job, r] : results) {
      for (const auto& m : r.measurements) md << "| " << job << " | " << m.label << " | " << csv_number(m.value) << " | | |\n";
      for (const auto& a : r.assertions)
        md << "| " << job << " | " << a.label << " | " << csv_number(a.lhs) << " | " << csv_number(a.rhs) << " | "
           << (a.holds ? "yes" : "**no**") << " |\n";
      append_csv(csv, r, job);
    }
    md << '\n';
  }
  md << "results: " << out.results << ", skipped (unreadable): " << out.skipped << '\n';
  out.markdown = md.str();
  write_file_atomic(dir / "report.csv", csv);
  return out;
}

}  // namespace qwmix
