#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "reebscape/scenario.hpp"

namespace reebscape {

struct CheckResult {
  Check check = Check::reeb;
  enum class Status { pass, fail, skipped } status = Status::pass;
  nlohmann::json measured = nlohmann::json::object();
  /// Wall time; kept out of report.json so reports stay reproducible.
  double seconds = 0.0;

  bool ok() const { return status != Status::fail; }
};

struct RunReport {
  std::string scenario;
  std::vector<CheckResult> checks;
  nlohmann::json parameters = nlohmann::json::object();

  bool pass() const;
  nlohmann::json to_json() const;
};

struct RunOptions {
  /// Empty: write nothing.
  std::filesystem::path out_dir;
  bool parallel = true;
};

/// Runs the requested checks in dependency order and writes graph.json,
/// graph.dot, evidence.json, report.json (and samples.csv for the manifold
/// check) into out_dir.
RunReport run_scenario(const Scenario& s, const RunOptions& opts);

nlohmann::json parameters_to_json(const Scenario& s);

}  // namespace reebscape
