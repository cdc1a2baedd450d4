// Runs acceptance criteria 1-10 and prints one line per criterion.
// Usage: dlp_acceptance <path-to-dlp-cli> <scratch-dir>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "dlp/harness.hpp"

namespace {

const std::map<std::string, double> kBudgetSeconds = {
    {"dpp-core", 30},   {"quaternion", 60},    {"density", 30},
    {"sampler-law", 300}, {"mean-projection", 300}, {"transforms", 180},
    {"inequalities", 120}, {"qsf", 300},      {"scalar-restriction", 120},
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool verify_run(const std::string& cli, const std::string& threads, const std::string& report) {
  std::string cmd = "DLP_THREADS=" + threads + " \"" + cli + "\" verify --suite all --seed 42 --report \"" + report +
                    "\" > /dev/null";
  return std::system(cmd.c_str()) != -1;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s <dlp-cli> <scratch-dir>\n", argv[0]);
    return 2;
  }
  std::string cli = argv[1], scratch = argv[2];
  bool all = true;

  for (const dlp::SuiteInfo& info : dlp::suites()) {
    dlp::SuiteReport r = dlp::run_suite(info.name, {});
    double budget = kBudgetSeconds.at(info.name);
    bool pass = r.pass() && r.runtime_s < budget;
    all = all && pass;
    std::printf("criterion %d (%s): %s  runtime %.1fs / %.0fs\n", info.criterion, info.name.c_str(),
                pass ? "PASS" : "FAIL", r.runtime_s, budget);
    for (const dlp::CaseResult& c : r.cases)
      if (!c.pass)
        std::printf("    failed %s: %.6g %s %.6g\n", c.id.c_str(), c.statistic, c.relation.c_str(), c.threshold);
    std::fflush(stdout);
  }

  std::string a = scratch + "/report_t1.json", b = scratch + "/report_t4.json";
  std::remove(a.c_str());
  std::remove(b.c_str());
  bool ran = verify_run(cli, "1", a) && verify_run(cli, "4", b);
  std::string ra = slurp(a), rb = slurp(b);
  bool same = ran && !ra.empty() && ra == rb;
  all = all && same;
  std::printf("criterion 10 (determinism): %s  %zu bytes, DLP_THREADS=1 vs 4\n", same ? "PASS" : "FAIL", ra.size());
  return all ? 0 : 1;
}
