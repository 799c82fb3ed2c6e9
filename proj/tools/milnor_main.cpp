#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "milnor/demos.hpp"
#include "milnor/report.hpp"
#include "milnor/verify.hpp"

namespace {

std::string default_out_dir() {
  const char* env = std::getenv("MILNOR_OUT_DIR");
  return env != nullptr ? env : ".";
}

/// Plain key=value file; '#' starts a comment. Unknown keys are rejected.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path);
  std::map<std::string, std::string> values;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line is not key=value: " + line);
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    static const std::map<std::string, int> known = {{"seed", 0}, {"grid", 0}, {"tol", 0},
                                                     {"step", 0}, {"out", 0},  {"N", 0}};
    if (known.find(key) == known.end())
      throw std::invalid_argument("unknown config key: " + key);
    values[key] = value;
  }
  return values;
}

int emit_report(const milnor::Report& report, const std::string& out_path, bool timings) {
  const std::string json = milnor::to_json(report, timings);
  if (out_path.empty()) {
    std::cout << json;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 2;
    }
    out << json;
  }
  int failed = 0;
  for (const auto& e : report.entries)
    if (!e.pass) ++failed;
  std::cerr << report.suite << ": " << report.entries.size() - failed << "/"
            << report.entries.size() << " checks passed\n";
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spherical Milnor geometry toolkit"};
  app.require_subcommand(1);

  milnor::VerifyConfig vcfg;
  std::string suite;
  std::string verify_out;
  std::string config_path;
  bool timings = false;

  auto* verify = app.add_subcommand("verify", "run a named invariant suite");
  verify->add_option("suite", suite,
                     "one of: liegroup sphere milnor metric laplace clifford dirac chern defect all")
      ->required()
      ->check(CLI::IsMember(milnor::verify_suite_names()));
  auto* v_seed = verify->add_option("--seed", vcfg.seed, "random seed (default 42)");
  auto* v_grid =
      verify->add_option("--grid", vcfg.grid, "grid size override (dirac/defect N, laplace step 1/N)");
  auto* v_tol = verify->add_option("--tol", vcfg.tol, "tolerance override for every check");
  auto* v_step = verify->add_option("--step", vcfg.step, "finite-difference step override");
  auto* v_out = verify->add_option("--out", verify_out, "write the JSON report to this path");
  verify->add_option("--config", config_path, "plain key=value configuration file");
  verify->add_flag("--timings", timings, "include per-check runtimes (breaks byte determinism)");

  milnor::DemoConfig dcfg;
  dcfg.out_dir = default_out_dir();
  std::string demo_name;
  auto* demo = app.add_subcommand("demo", "run a named demo, writing CSV + JSON summaries");
  demo->add_option("name", demo_name,
                   "one of: fisher-rao s3-laplacian geodesic chern-weil dirac-circle defect contraction")
      ->required()
      ->check(CLI::IsMember(milnor::demo_names()));
  auto* d_n = demo->add_option("--N", dcfg.n, "grid size (default 512)");
  auto* d_seed = demo->add_option("--seed", dcfg.seed, "random seed (default 42)");
  auto* d_out = demo->add_option("--out", dcfg.out_dir, "output directory");
  demo->add_option("--config", config_path, "plain key=value configuration file");

  std::string report_out;
  auto* report_cmd = app.add_subcommand("report", "run every suite and write the JSON report");
  report_cmd->add_option("--out", report_out, "report path")->required();
  report_cmd->add_option("--seed", vcfg.seed, "random seed (default 42)");
  report_cmd->add_flag("--timings", timings, "include per-check runtimes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!config_path.empty()) {
      // Command-line options take precedence over file values.
      const auto cfg = read_config(config_path);
      const auto apply = [&cfg](const CLI::Option* opt, const char* key, auto& target) {
        const auto it = cfg.find(key);
        if (it == cfg.end() || opt->count() > 0) return;
        std::istringstream is(it->second);
        is >> target;
        if (is.fail()) throw std::invalid_argument(std::string("bad config value for ") + key);
      };
      if (verify->parsed()) {
        apply(v_seed, "seed", vcfg.seed);
        apply(v_grid, "grid", vcfg.grid);
        apply(v_tol, "tol", vcfg.tol);
        apply(v_step, "step", vcfg.step);
        apply(v_out, "out", verify_out);
      }
      if (demo->parsed()) {
        apply(d_n, "N", dcfg.n);
        apply(d_seed, "seed", dcfg.seed);
        apply(d_out, "out", dcfg.out_dir);
      }
    }

    if (verify->parsed()) {
      return emit_report(milnor::run_verify(suite, vcfg), verify_out, timings);
    }
    if (demo->parsed()) {
      std::filesystem::create_directories(dcfg.out_dir);
      const bool ok = milnor::run_demo(demo_name, dcfg);
      std::cerr << "demo " << demo_name << (ok ? ": pass" : ": FAIL") << " (files in "
                << dcfg.out_dir << ")\n";
      return ok ? 0 : 1;
    }
    if (report_cmd->parsed()) {
      return emit_report(milnor::run_verify("all", vcfg), report_out, timings);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
