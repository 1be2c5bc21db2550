#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "reebscape/error.hpp"
#include "reebscape/runner.hpp"

using namespace reebscape;

namespace {

constexpr const char* kScenarioHelp =
    "Scenarios:\n"
    "  thm1            periodic strip between two parabola chains, x1 in [-1,1] (period 4)\n"
    "  thm1-truncated  the same region without the periodic quotient\n"
    "  thm3-case1      disk x1^2+x2^2 <= R0 cut by x1 >= c0(x2); not a graph\n"
    "  thm3-case2      squeezed and rotated cut, Z on two horizontal lines\n"
    "  thm3-case3      case1 rotated by theta, Z at the two height extremes\n"
    "  disk            the disk alone\n"
    "  custom          curves supplied in a config file\n"
    "Defaults: R0=1, R=0.01, m1=m2=1, theta=auto, t2=0.9, thm1 window x2 in [-6,6].\n"
    "Checks: reeb, accumulation, zgraph, remark1, manifold, properness, oracle-compare.";

struct RunFlags {
  std::vector<std::string> scenarios;
  std::string config;
  std::string out = "reebscape-out";
  std::string checks;
  int jobs = 1;
  bool serial = false;
  std::optional<int> m1, m2, samples, grid_x1, grid_x2;
  std::optional<double> R0, R, t1, t2, period;
  std::optional<std::uint64_t> seed;
  std::string theta, window, x1_window;
};

Scenario scenario_for(const std::string& name, const RunFlags& f) {
  Scenario s;
  if (!f.config.empty()) {
    s = scenario_from_config(toml::parse_file(f.config));
    if (!name.empty() && name != s.name) throw ConfigError("config names scenario " + s.name);
  } else {
    s.name = name;
    s.checks = all_checks();
  }
  ScenarioParams& p = s.params;
  if (f.m1) p.m1 = *f.m1;
  if (f.m2) p.m2 = *f.m2;
  if (f.samples) p.samples = *f.samples;
  if (f.grid_x1) p.grid_x1 = *f.grid_x1;
  if (f.grid_x2) p.grid_x2 = *f.grid_x2;
  if (f.R0) p.R0 = *f.R0;
  if (f.R) p.R = *f.R;
  if (f.t1) p.t1 = *f.t1;
  if (f.t2) p.t2 = *f.t2;
  if (f.period) p.period = *f.period;
  if (f.seed) p.seed = *f.seed;
  if (!f.theta.empty()) {
    if (f.theta == "auto") {
      p.theta.reset();
    } else {
      try {
        p.theta = std::stod(f.theta);
      } catch (const std::exception&) {
        throw ConfigError("--theta must be a number or auto");
      }
    }
  }
  if (!f.window.empty()) p.x2_window = parse_range(f.window);
  if (!f.x1_window.empty()) p.x1_window = parse_range(f.x1_window);
  if (!f.checks.empty()) {
    s.checks.clear();
    std::stringstream ss(f.checks);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) s.checks.push_back(check_from_string(item));
    }
  }
  const auto& names = scenario_names();
  if (std::find(names.begin(), names.end(), s.name) == names.end()) {
    throw ConfigError("unknown scenario '" + s.name + "'");
  }
  build_construction(s);
  return s;
}

int do_run(const RunFlags& f) {
  std::vector<Scenario> batch;
  if (f.scenarios.empty()) {
    if (f.config.empty()) throw ConfigError("run needs a scenario name or --config");
    batch.push_back(scenario_for("", f));
  }
  for (const auto& name : f.scenarios) batch.push_back(scenario_for(name, f));

  std::vector<RunReport> reports(batch.size());
  std::vector<std::string> errors(batch.size());
  std::atomic<std::size_t> next{0};
  std::mutex print;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < batch.size();) {
      RunOptions o;
      o.out_dir = std::filesystem::path(f.out) / batch[i].name;
      o.parallel = !f.serial;
      try {
        reports[i] = run_scenario(batch[i], o);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
      std::lock_guard<std::mutex> lock(print);
      if (!errors[i].empty()) {
        std::cout << batch[i].name << ": error: " << errors[i] << "\n";
        continue;
      }
      for (const auto& c : reports[i].checks) {
        const char* st = c.status == CheckResult::Status::pass   ? "pass"
                         : c.status == CheckResult::Status::fail ? "FAIL"
                                                                 : "skip";
        std::printf("%-15s %-15s %-4s %8.2fs\n", batch[i].name.c_str(), to_string(c.check), st,
                    c.seconds);
      }
      std::cout << batch[i].name << ": " << (reports[i].pass() ? "PASS" : "FAIL") << " -> "
                << o.out_dir.string() << "\n";
      std::cout.flush();
    }
  };
  const int jobs = std::max(1, std::min<int>(f.jobs, static_cast<int>(batch.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  bool ok = true;
  for (std::size_t i = 0; i < batch.size(); ++i) ok = ok && errors[i].empty() && reports[i].pass();
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reebscape: Reeb graphs of planar regions and their spherical suspensions"};
  app.footer(kScenarioHelp);
  app.require_subcommand(1);

  RunFlags f;
  auto* run = app.add_subcommand("run", "Run checks on named scenarios");
  run->add_option("scenario", f.scenarios, "Scenario names (several run as a batch)");
  run->add_option("--config", f.config, "TOML config mirroring the scenario fields");
  run->add_option("--out", f.out, "Output directory; each scenario writes to <out>/<name>");
  run->add_option("--checks", f.checks, "Comma separated checks (default: all)");
  run->add_option("--jobs", f.jobs, "Scenarios run concurrently")->check(CLI::PositiveNumber);
  run->add_flag("--serial", f.serial, "Use the serial reference kernels");
  run->add_option("--m1", f.m1, "Fibre dimension of the first sphere");
  run->add_option("--m2", f.m2, "Fibre dimension of the second sphere");
  run->add_option("--R0", f.R0, "Circle level x1^2+x2^2 = R0");
  run->add_option("--R", f.R, "Amplitude of the flat oscillating function");
  run->add_option("--theta", f.theta, "Rotation angle or 'auto'");
  run->add_option("--t1", f.t1, "Horizontal shift in case 2 (default: on the circle)");
  run->add_option("--t2", f.t2, "Vertical squeeze in case 2");
  run->add_option("--window", f.window, "x2 window as a..b");
  run->add_option("--x1-window", f.x1_window, "x1 window as a..b");
  run->add_option("--period", f.period, "Period in x2 (0 switches the quotient off)");
  run->add_option("--seed", f.seed, "Sampling seed");
  run->add_option("--samples", f.samples, "Zero set samples for the manifold check");
  run->add_option("--grid-x1", f.grid_x1, "Brute force raster cells along x1");
  run->add_option("--grid-x2", f.grid_x2, "Brute force raster cells along x2 (0: from aspect)");

  std::string graph_path, dot_out;
  auto* exp = app.add_subcommand("export-dot", "Convert graph.json to DOT");
  exp->add_option("graph", graph_path, "graph.json")->required()->check(CLI::ExistingFile);
  exp->add_option("-o,--output", dot_out, "Output file (default: stdout)");

  std::string config_path;
  auto* val = app.add_subcommand("validate", "Check a config file without running it");
  val->add_option("config", config_path, "config.toml")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return do_run(f);
    if (exp->parsed()) {
      std::ifstream in(graph_path);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("graph.json: ") + e.what());
      }
      const std::string dot = ReebGraph::from_json(j).to_dot();
      if (dot_out.empty()) {
        std::cout << dot;
      } else {
        std::ofstream(dot_out) << dot;
      }
      return 0;
    }
    if (val->parsed()) {
      const Scenario s = scenario_from_config(toml::parse_file(config_path));
      std::cout << "ok: scenario " << s.name << ", " << s.checks.size() << " checks\n";
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
