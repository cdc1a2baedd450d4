#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dlp/harness.hpp"
#include "dlp/io.hpp"

namespace {

int run_sample(const std::string& model_path, std::size_t n, std::uint64_t seed, const std::string& out_path) {
  dlp::DlpModel model = dlp::io::load_model(model_path);
  auto blocks = dlp::parallel_blocks(n, [&](std::size_t b, std::size_t begin, std::size_t end) {
    dlp::Rng rng = dlp::stream(seed, dlp::tag_of("sample"), b);
    std::string text;
    for (std::size_t i = begin; i < end; ++i) text += dlp::io::encode_sample(dlp::sample(model, rng)).dump() + "\n";
    return text;
  });
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw dlp::DomainError("cannot write " + out_path);
  for (const auto& t : blocks) out << t;
  return 0;
}

int run_verify(const std::string& suite, std::optional<std::size_t> n, std::uint64_t seed, const std::string& report_path,
               bool timings) {
  dlp::SuiteReport r = dlp::run_suite(suite, {seed, n});
  for (const auto& c : r.cases) {
    std::printf("%-4s %-40s %.6g %s %.6g", c.pass ? "PASS" : "FAIL", c.id.c_str(), c.statistic, c.relation.c_str(),
                c.threshold);
    if (timings) std::printf("  %.2fs", c.runtime_s);
    std::printf("\n");
  }
  if (!report_path.empty()) {
    std::ofstream out(report_path, std::ios::binary);
    if (!out) throw dlp::DomainError("cannot write " + report_path);
    out << dlp::report_json(r, timings).dump(2) << "\n";
  }
  return r.pass() ? 0 : 1;
}

int run_qsf(const std::string& graph, int rank, const std::string& group, std::uint64_t seed, const std::string& svg) {
  dlp::WeightedGraph g = dlp::io::load_graph(graph);
  dlp::Rng rng = dlp::stream(seed, dlp::tag_of("qsf"), 0);
  dlp::Group grp = dlp::parse_group(group);
  dlp::Connection h = grp == dlp::Group::Trivial ? dlp::trivial_connection(g, rank)
                                                 : dlp::sample_haar_connection(g, grp, rank, rng);
  dlp::DlpSample s = dlp::sample_qsf(g, h, rng);
  dlp::Stratum occ = dlp::split_dimension(s.subspace);
  nlohmann::json j = {{"edges", g.edges.size()}, {"rank", rank}, {"total", dlp::total(occ)}, {"occupation", occ}};
  std::cout << j.dump() << "\n";
  if (!svg.empty()) {
    std::ofstream out(svg, std::ios::binary);
    if (!out) throw dlp::DomainError("cannot write " + svg);
    out << dlp::render_svg(g, occ, rank);
  }
  return 0;
}

int run_strata(const std::string& model_path) {
  dlp::DlpModel model = dlp::io::load_model(model_path);
  auto strata = dlp::enumerate_strata(model.space);
  auto masses = dlp::strata_masses(model);
  std::printf("%-24s %s\n", "stratum", "mass");
  for (std::size_t i = 0; i < strata.size(); ++i) {
    std::ostringstream name;
    for (std::size_t b = 0; b < strata[i].size(); ++b) name << (b ? "," : "") << strata[i][b];
    std::printf("%-24s %.12f\n", name.str().c_str(), masses[i]);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"determinantal linear processes"};
  app.require_subcommand(1);

  std::string model, out, suite, report, graph, group = "trivial", svg;
  std::size_t n = 1000;
  std::uint64_t seed = 42;
  std::optional<std::size_t> verify_n;
  bool timings = false;
  int rank = 1;

  auto* sample = app.add_subcommand("sample", "draw samples of a model as JSON lines");
  sample->add_option("--model", model, "model JSON file")->required();
  sample->add_option("--n", n, "number of samples");
  sample->add_option("--seed", seed, "master seed");
  sample->add_option("--out", out, "output .jsonl file")->required();

  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", suite, "suite name or 'all'")->required();
  verify->add_option("--n", verify_n, "Monte-Carlo sample size override");
  verify->add_option("--seed", seed, "master seed");
  verify->add_option("--report", report, "JSON report path");
  verify->add_flag("--timings", timings, "include runtimes in the report");
  verify->add_flag_callback("--list", [] {
    for (const auto& s : dlp::suites()) std::printf("%d %-20s %s\n", s.criterion, s.name.c_str(), s.title.c_str());
    std::exit(0);
  }, "list suites");

  auto* qsf = app.add_subcommand("qsf", "sample a quantum spanning forest");
  qsf->add_option("--graph", graph, "grid:WxH, complete:N, cycle:N or a graph JSON file")->required();
  qsf->add_option("--rank", rank, "bundle rank");
  qsf->add_option("--group", group, "trivial, orthogonal, unitary or symplectic");
  qsf->add_option("--seed", seed, "master seed");
  qsf->add_option("--svg", svg, "SVG output path");

  auto* strata = app.add_subcommand("strata", "print stratum masses of a model");
  strata->add_option("--model", model, "model JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sample) return run_sample(model, n, seed, out);
    if (*verify) return run_verify(suite, verify_n, seed, report, timings);
    if (*qsf) return run_qsf(graph, rank, group, seed, svg);
    if (*strata) return run_strata(model);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "dlp: %s\n", e.what());
    return 2;
  }
  return 0;
}
