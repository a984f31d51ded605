// Command-line front end: run experiment grids, aggregate results, export
// chains and inspect walk spectra.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qwmix/decoherence.hpp"
#include "qwmix/error.hpp"
#include "qwmix/graph.hpp"
#include "qwmix/quantum_walks.hpp"
#include "qwmix/runner.hpp"

namespace {

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw qwmix::InvalidParameter("params", "expected comma-separated integers, got '" + s + "'");
    }
  }
  return out;
}

qwmix::Graph graph_arg(const std::string& kind, const std::string& params) {
  return qwmix::build_graph(qwmix::parse_graph_family(kind), parse_int_list(params));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum walk mixing experiments"};
  app.require_subcommand(1);

  qwmix::RunOverrides overrides;
  std::string config_path, cache_mode, out_dir;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  auto* run = app.add_subcommand("run", "Run an experiment grid from a JSON config");
  run->add_option("config", config_path, "Config file")->required();
  auto* jobs_opt = run->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
  auto* seed_opt = run->add_option("--seed", seed, "Seed override");
  auto* cache_opt = run->add_option("--cache", cache_mode, "use | ignore | refresh");
  auto* out_opt = run->add_option("--out", out_dir, "Output directory override");

  std::string report_dir;
  auto* report = app.add_subcommand("report", "Aggregate result JSON files into markdown and CSV");
  report->add_option("dir", report_dir, "Results directory")->required();

  auto* chain = app.add_subcommand("chain", "Chain utilities");
  chain->require_subcommand(1);
  std::string kind, params, out_csv, walk = "none", rule_name = "uniform_ct";
  double horizon = 1.0;
  auto* exp = chain->add_subcommand("export", "Write a chain as CSV");
  exp->add_option("kind", kind, "cycle | path | complete | hypercube | lattice")->required();
  exp->add_option("params", params, "Comma-separated integers, e.g. 4,2")->required();
  exp->add_option("out", out_csv, "Output CSV")->required();
  exp->add_option("--walk", walk, "Export the chain generated by this walk: none | ct | szegedy")
      ->check(CLI::IsMember({"none", "ct", "szegedy"}));
  exp->add_option("--rule", rule_name, "Measurement rule for --walk");
  exp->add_option("--T", horizon, "Measurement horizon for --walk");

  auto* walk_cmd = app.add_subcommand("walk", "Walk utilities");
  walk_cmd->require_subcommand(1);
  std::string spec_walk = "ct";
  auto* spectrum = walk_cmd->add_subcommand("spectrum", "Print the spectrum of a walk");
  spectrum->add_option("kind", kind, "Graph family")->required();
  spectrum->add_option("params", params, "Comma-separated integers")->required();
  spectrum->add_option("--walk", spec_walk, "ct | szegedy")->check(CLI::IsMember({"ct", "szegedy"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qwmix::kExitConfigError;
  }

  try {
    if (*run) {
      if (*jobs_opt) overrides.jobs = jobs;
      if (*seed_opt) overrides.seed = seed;
      if (*cache_opt) overrides.cache = qwmix::parse_cache_mode(cache_mode);
      if (*out_opt) overrides.out = out_dir;
      return qwmix::run_command(config_path, overrides, std::cout, std::cerr);
    }
    if (*report) {
      const auto r = qwmix::report(report_dir);
      std::cout << r.markdown;
      if (r.skipped) std::cerr << "warning: skipped " << r.skipped << " unreadable result file(s)\n";
      return r.results > 0 ? qwmix::kExitOk : qwmix::kExitConfigError;
    }
    if (*exp) {
      const auto p = qwmix::standard_chain(graph_arg(kind, params));
      if (walk == "none") {
        std::ofstream out(out_csv);
        if (!out) throw qwmix::Error("cannot write " + out_csv);
        qwmix::write_chain_csv(p, out);
        return 0;
      }
      const auto rule = qwmix::MeasurementRule::make(qwmix::parse_rule_family(rule_name), horizon);
      const auto g = walk == "ct" ? qwmix::generated_chain(qwmix::CTWalk(p), rule)
                                  : qwmix::generated_chain(qwmix::quantize_szegedy(p), rule);
      qwmix::write_generated_chain(g, out_csv);
      return 0;
    }
    if (*spectrum) {
      const auto p = qwmix::standard_chain(graph_arg(kind, params));
      if (spec_walk == "ct") {
        const qwmix::CTWalk w(p);
        std::printf("# eigenvalue multiplicity (H = D^-1 P D, %zu states)\n", w.size());
        for (const auto& c : w.clusters()) std::printf("%.12f %zu\n", c.value, c.members.size());
      } else {
        const auto w = qwmix::quantize_szegedy(p);
        const auto g = qwmix::phase_gap(w);
        if (g)
          std::printf("phase_gap %.12f\n", *g);
        else
          std::printf("phase_gap degenerate\n");
      }
      return 0;
    }
  } catch (const qwmix::InvalidParameter& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qwmix::kExitConfigError;
  } catch (const qwmix::DimensionCap& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qwmix::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
