#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qwmix/error.hpp"
#include "qwmix/runner.hpp"

using namespace qwmix;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

fs::path write_config(const fs::path& dir, const json& j) {
  const auto p = dir / "config.json";
  std::ofstream(p) << j.dump(2);
  return p;
}

std::vector<fs::path> result_files(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

json cycle_config(const fs::path& out) {
  return json{{"experiment", "cycle_threshold_audit"},
              {"params", {{"walk", "ct"}, {"t_fractions", {0.8}}}},
              {"grid", {{"n", {8, 16}}}},
              {"seed", 5},
              {"out", out.string()},
              {"cache", "use"}};
}

}  // namespace

TEST_CASE("config parsing") {
  CHECK_THROWS_WITH_AS(parse_run_config(json{{"experiment", "nope"}}), doctest::Contains("unknown experiment"),
                       InvalidParameter);
  CHECK_THROWS_AS(parse_run_config(json{{"experiment", "lattice_scaling_sweep"}, {"extra", 1}}), InvalidParameter);
  CHECK_THROWS_AS(parse_run_config(json{{"experiment", "cycle_threshold_audit"}, {"grid", {{"n", 8}}}}),
                  InvalidParameter);
  CHECK_THROWS_AS(parse_run_config(json{{"experiment", "cycle_threshold_audit"}, {"grid", {{"n", {8}}}}, {"cache", "maybe"}}),
                  InvalidParameter);
  // job parameters are validated up front
  CHECK_THROWS_AS(parse_run_config(json{{"experiment", "cycle_threshold_audit"}, {"grid", {{"n", {8}}, {"m", {1}}}}}),
                  InvalidParameter);
  json big{{"experiment", "cycle_threshold_audit"}, {"grid", json::object()}};
  std::vector<int> hundred(101);
  big["grid"]["n"] = hundred;
  big["grid"]["t_fractions"] = hundred;
  CHECK_THROWS_WITH_AS(parse_run_config(big), doctest::Contains("10000"), InvalidParameter);

  const auto c = parse_run_config(json{{"experiment", "cycle_threshold_audit"},
                                       {"params", {{"walk", "hadamard"}}},
                                       {"grid", {{"n", {8, 9}}, {"ceiling", {3, 4, 5}}}},
                                       {"seed", 9}});
  const auto jobs = expand_grid(c);
  REQUIRE(jobs.size() == 6);
  CHECK(jobs[0] == json{{"walk", "hadamard"}, {"ceiling", 3}, {"n", 8}});
  CHECK(jobs[1] == json{{"walk", "hadamard"}, {"ceiling", 3}, {"n", 9}});
  CHECK(c.seed == 9);
  CHECK(c.cache == CacheMode::Use);
}

TEST_CASE("job keys") {
  const json p{{"n", 8}};
  CHECK(job_key("a", p, 1) == job_key("a", p, 1));
  CHECK(job_key("a", p, 1) != job_key("a", p, 2));
  CHECK(job_key("a", p, 1) != job_key("b", p, 1));
  CHECK(job_key("a", p, 1).size() == 16);
}

TEST_CASE("run, cache and determinism") {
  TempDir tmp("qwmix_runner_test");
  const auto out = tmp.path / "results";
  const auto cfg = write_config(tmp.path, cycle_config(out));
  std::ostringstream so, se;
  CHECK(run_command(cfg, {}, so, se) == kExitOk);
  const auto files = result_files(out);
  CHECK(files.size() == 2);
  CHECK(fs::exists(out / "cycle_threshold_audit.csv"));
  CHECK(so.str().find("PASS") != std::string::npos);
  std::vector<std::string> first;
  for (const auto& f : files) first.push_back(slurp(f));
  const auto csv = slurp(out / "cycle_threshold_audit.csv");

  const RunSummary again = run(load_run_config(cfg), 2);
  for (const auto& j : again.jobs) CHECK(j.cached);
  const RunSummary fresh = [&] {
    auto c = load_run_config(cfg);
    c.cache = CacheMode::Refresh;
    return run(c, 2);
  }();
  for (const auto& j : fresh.jobs) CHECK_FALSE(j.cached);
  const auto files2 = result_files(out);
  REQUIRE(files2.size() == 2);
  for (std::size_t i = 0; i < files2.size(); ++i) CHECK(slurp(files2[i]) == first[i]);
  CHECK(slurp(out / "cycle_threshold_audit.csv") == csv);

  // seed override changes the key and therefore the file names
  RunOverrides ov;
  ov.seed = 6;
  ov.out = tmp.path / "seeded";
  std::ostringstream so2, se2;
  CHECK(run_command(cfg, ov, so2, se2) == kExitOk);
  CHECK(result_files(tmp.path / "seeded")[0].filename() != files[0].filename());
}

TEST_CASE("exit codes") {
  TempDir tmp("qwmix_runner_exit");
  std::ostringstream so, se;
  const auto bad = write_config(tmp.path, json{{"experiment", "nonexistent"}});
  CHECK(run_command(bad, {}, so, se) == kExitConfigError);
  CHECK(se.str().find("unknown experiment") != std::string::npos);

  CHECK(run_command(tmp.path / "missing.json", {}, so, se) == kExitConfigError);
  std::ofstream(tmp.path / "broken.json") << "{ not json";
  CHECK(run_command(tmp.path / "broken.json", {}, so, se) == kExitConfigError);

  auto failing = cycle_config(tmp.path / "fail");
  failing["params"]["ceiling"] = 1;
  std::ostringstream so3, se3;
  CHECK(run_command(write_config(tmp.path, failing), {}, so3, se3) == kExitAssertionFailed);
  CHECK(se3.str().find("failed repeat") != std::string::npos);

  // parameters outside the runtime cap are a configuration problem
  const json capped{{"experiment", "tensor_power_identity_audit"},
                    {"params", {{"base", {{"graph", "cycle"}, {"params", {9}}}}, {"d", 4}, {"t", {1.0}}}},
                    {"out", (tmp.path / "cap").string()}};
  std::ostringstream so4, se4;
  CHECK(run_command(write_config(tmp.path, capped), {}, so4, se4) == kExitConfigError);
}

TEST_CASE("report") {
  TempDir tmp("qwmix_report_test");
  const auto out = tmp.path / "r";
  std::ostringstream so, se;
  CHECK(run_command(write_config(tmp.path, cycle_config(out)), {}, so, se) == kExitOk);
  const json tensor{{"experiment", "tensor_power_identity_audit"},
                    {"params", {{"base", {{"graph", "cycle"}, {"params", {3}}}}, {"d", 2}, {"t", {1.0}}}},
                    {"out", out.string()}};
  CHECK(run_command(write_config(tmp.path, tensor), {}, so, se) == kExitOk);
  std::ofstream(out / "garbage.json") << "{\"name\": 3";

  const auto r = report(out);
  CHECK(r.results == 3);
  CHECK(r.skipped == 1);
  CHECK(r.markdown.find("## cycle_threshold_audit") != std::string::npos);
  CHECK(r.markdown.find("## tensor_power_identity_audit") != std::string::npos);
  CHECK(r.markdown.find("skipped (unreadable): 1") != std::string::npos);
  CHECK(fs::exists(out / "report.csv"));

  TempDir empty("qwmix_report_empty");
  CHECK(report(empty.path).results == 0);
  CHECK_THROWS_AS(report(empty.path / "missing"), InvalidParameter);
}

TEST_CASE("lattice report carries fitted exponents") {
  TempDir tmp("qwmix_report_lattice");
  const json lat{{"experiment", "lattice_scaling_sweep"},
                 {"params", {{"n", {3, 4, 5, 6}}, {"d", 1}}},
                 {"out", tmp.path.string()}};
  std::ostringstream so, se;
  run_command(write_config(tmp.path, lat), {}, so, se);
  CHECK(report(tmp.path).markdown.find("classical_slope(d=1)") != std::string::npos);
}

TEST_CASE("atomic writes replace files whole") {
  TempDir tmp("qwmix_atomic");
  write_file_atomic(tmp.path / "f.txt", "one");
  write_file_atomic(tmp.path / "f.txt", "two");
  CHECK(slurp(tmp.path / "f.txt") == "two");
  std::size_t count = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(tmp.path)) ++count;
  CHECK(count == 1);
}
