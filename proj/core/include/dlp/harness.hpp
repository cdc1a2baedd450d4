#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dlp/parallel.hpp"
#include "dlp/stats.hpp"

namespace dlp {

struct SuiteConfig {
  std::uint64_t seed = 42;
  std::optional<std::size_t> n;  // overrides every Monte-Carlo sample size
};

struct CaseResult {
  std::string id;
  std::string claim;
  double statistic = 0;
  double threshold = 0;
  std::string relation;  // "<=" or ">"
  bool pass = false;
  std::size_t instances = 0;
  double runtime_s = 0;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CaseResult> cases;
  double runtime_s = 0;

  bool pass() const;
};

struct SuiteInfo {
  std::string name;
  int criterion;
  std::string title;
};

const std::vector<SuiteInfo>& suites();
SuiteReport run_suite(const std::string& name, const SuiteConfig& config);
// Timings vary between runs and are left out unless asked for.
nlohmann::json report_json(const SuiteReport& r, bool with_timings = false);

}  // namespace dlp
