#pragma once

#include <string>
#include <vector>

#include "levi/json_io.hpp"

namespace levi {

/// Outcome of one acceptance experiment. `metric` is compared against the
/// tolerance fixed in code for that criterion.
struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double metric = 0.0;
  double tolerance = 0.0;
  /// "<=" when metric must not exceed the tolerance, ">=" for lower bounds.
  std::string comparator = "<=";
  std::string detail;
  double seconds = 0.0;
};

/// Runs the experiment described by a config object {"criterion": k, ...}.
/// Law and map entries are inline JSON or paths relative to `base_dir`.
CriterionResult run_criterion(const json& config, const std::string& base_dir);

/// Runs configs/accept/criterion_NN.json for NN = 01..12.
std::vector<CriterionResult> run_acceptance(const std::string& config_dir, const std::vector<int>& ids = {});

std::string format_result(const CriterionResult& r);
json to_json(const CriterionResult& r);

}  // namespace levi
