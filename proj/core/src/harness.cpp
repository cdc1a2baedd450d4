#include "dlp/harness.hpp"

#include <chrono>
#include <cmath>

#include "dlp/scalars.hpp"
#include "suites.hpp"

namespace dlp {

bool SuiteReport::pass() const {
  for (const CaseResult& c : cases)
    if (!c.pass) return false;
  return !cases.empty();
}

const std::vector<SuiteInfo>& suites() {
  static const std::vector<SuiteInfo> infos = [] {
    std::vector<SuiteInfo> v;
    for (const auto& s : detail::registry()) v.push_back(s.info);
    return v;
  }();
  return infos;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& config) {
  auto t0 = std::chrono::steady_clock::now();
  SuiteReport report{name, config.seed, {}, 0};
  bool found = false;
  for (const auto& s : detail::registry()) {
    if (name != "all" && name != s.info.name) continue;
    found = true;
    for (CaseResult c : s.run(config)) {
      if (name == "all") c.id = s.info.name + "/" + c.id;
      report.cases.push_back(std::move(c));
    }
  }
  if (!found) throw DomainError("unknown suite: " + name);
  report.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

namespace {

// JSON has no infinity; non-finite statistics are written as strings.
nlohmann::json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

}  // namespace

nlohmann::json report_json(const SuiteReport& r, bool with_timings) {
  nlohmann::json cases = nlohmann::json::array();
  for (const CaseResult& c : r.cases) {
    nlohmann::json j = {{"id", c.id},
                        {"claim", c.claim},
                        {"statistic", number(c.statistic)},
                        {"threshold", number(c.threshold)},
                        {"relation", c.relation},
                        {"pass", c.pass},
                        {"instances", c.instances}};
    if (with_timings) j["runtime_s"] = c.runtime_s;
    cases.push_back(j);
  }
  nlohmann::json j = {{"suite", r.suite}, {"seed", r.seed}, {"pass", r.pass()}, {"cases", cases}};
  if (with_timings) j["runtime_s"] = r.runtime_s;
  return j;
}

}  // namespace dlp
