#include "suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "dlp/dlp.hpp"
#include "dlp/generators.hpp"
#include "dlp/qsf.hpp"

namespace dlp::detail {

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t tag(const char* name, std::uint64_t i) { return mix64(tag_of(name) ^ mix64(i + 1)); }
Rng instance_rng(const SuiteConfig& c, const char* name, std::uint64_t i) { return stream(c.seed, tag(name, i), 0); }
std::size_t pick(const SuiteConfig& c, std::size_t def) { return c.n ? *c.n : def; }

CaseResult at_most(std::string id, std::string claim, double stat, double thr, std::size_t inst) {
  return {std::move(id), std::move(claim), stat, thr, "<=", stat <= thr, inst, 0};
}

CaseResult above(std::string id, std::string claim, double stat, double thr, std::size_t inst) {
  return {std::move(id), std::move(claim), stat, thr, ">", stat > thr, inst, 0};
}

template <class F>
CaseResult timed(F f) {
  auto t0 = Clock::now();
  CaseResult r = f();
  r.runtime_s = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

// |diff| / se, treating a vanishing standard error as an exact comparison.
double zscore(double diff, double se) {
  if (se < 1e-12) return std::abs(diff) <= 1e-9 ? 0.0 : kInf;
  return std::abs(diff) / se;
}

template <class F>
std::vector<double> histogram(std::size_t n, std::uint64_t seed, std::uint64_t tg, std::size_t bins, F draw) {
  auto parts = parallel_blocks(n, [&](std::size_t b, std::size_t begin, std::size_t end) {
    Rng rng = stream(seed, tg, b);
    std::vector<double> h(bins, 0.0);
    for (std::size_t i = begin; i < end; ++i) h.at(draw(rng)) += 1;
    return h;
  });
  std::vector<double> out(bins, 0.0);
  for (const auto& h : parts)
    for (std::size_t i = 0; i < bins; ++i) out[i] += h[i];
  return out;
}

std::vector<double> clean_probabilities(std::vector<double> p) {
  for (double& x : p)
    if (x < 0 && x > -1e-9) x = 0;
  return p;
}

std::size_t strata_count(const SplitSpace& s) { return enumerate_strata(s).size(); }

SplitSpace random_space(Field f, int d, int min_blocks, Rng& rng) {
  std::vector<int> blocks;
  do blocks = random_blocks(d, rng);
  while (static_cast<int>(blocks.size()) < min_blocks);
  return SplitSpace(f, blocks);
}

double falling_factorial(int n, int m) {
  double r = 1;
  for (int i = 0; i < m; ++i) r *= n - i;
  return r;
}

// ---------------------------------------------------------------- criterion 1

std::vector<CaseResult> suite_dpp_core(const SuiteConfig& c) {
  const std::size_t n = pick(c, 200000);
  const int count = 20, d = 4;
  std::vector<Kernel> kernels;
  for (int i = 0; i < count; ++i) {
    Rng rng = instance_rng(c, "dpp-core/kernel", i);
    kernels.push_back(random_kernel(SplitSpace::lines(i < count / 2 ? Field::Real : Field::Complex, d), rng));
  }
  std::vector<CaseResult> out;
  out.push_back(timed([&] {
    double err = 0;
    for (const Kernel& k : kernels) {
      auto t = density_table(k);
      err = std::max(err, std::abs(std::accumulate(t.begin(), t.end(), 0.0) - 1));
    }
    return at_most("density-sum", "subset densities sum to one", err, 1e-9, count);
  }));
  out.push_back(timed([&] {
    double err = 0;
    for (const Kernel& k : kernels) {
      auto law = density_table(k);
      auto inv = mobius_invert(incidence_table(k), d);
      for (std::size_t s = 0; s < law.size(); ++s) err = std::max(err, std::abs(inv[s] - law[s]));
    }
    return at_most("mobius", "Moebius inversion of incidence minors equals the subset law", err, 1e-9, count);
  }));
  out.push_back(timed([&] {
    double min_p = 1;
    for (int i = 0; i < count; ++i) {
      const Kernel& k = kernels[i];
      auto h = histogram(n, c.seed, tag("dpp-core/recursive", i), 16,
                         [&](Rng& r) { return static_cast<std::size_t>(sample_recursive(k, r)); });
      min_p = std::min(min_p, chi_square(h, clean_probabilities(density_table(k))).p_value);
    }
    return above("recursive-chi2", "recursive sampler matches the subset law (min p)", min_p, 1e-3, count);
  }));
  return out;
}

// ---------------------------------------------------------------- criterion 2

std::vector<CaseResult> suite_quaternion(const SuiteConfig& c) {
  std::vector<CaseResult> out;
  out.push_back(timed([&] {
    double err = 0;
    const int count = 50;
    for (int i = 0; i < count; ++i) {
      Rng rng = instance_rng(c, "quaternion/hermitian", i);
      Matrix k = random_hermitian(1 + i % 6, Field::Quaternion, rng);
      double q = qdet(k);
      double det = Eigen::PartialPivLU<CMatrix>(complexify(k)).determinant().real();
      err = std::max(err, std::abs(q * q - det) / std::max(1.0, std::abs(det)));
    }
    return at_most("qdet-square", "qdet(K)^2 equals det of the complex representation", err, 1e-9, count);
  }));

  std::vector<Matrix> projections;
  std::vector<int> ranks;
  for (int i = 0; i < 15; ++i) {
    Rng rng = instance_rng(c, "quaternion/projection", i);
    int d = 2 + i % 5;
    int r = std::uniform_int_distribution<int>(1, d)(rng);
    projections.push_back(projection(haar_frame(d, r, Field::Quaternion, rng)));
    ranks.push_back(r);
  }
  out.push_back(timed([&] {
    double err = 0;
    std::size_t checks = 0;
    for (std::size_t p = 0; p < projections.size(); ++p) {
      const Matrix& k = projections[p];
      int d = k.rows(), n = ranks[p];
      Rng rng = instance_rng(c, "quaternion/dyson", p);
      std::uniform_int_distribution<int> idx(0, d - 1);
      for (int size = 1; size <= n + 1; ++size)
        for (int rep = 0; rep < 4; ++rep) {
          std::vector<int> base(size - 1);
          for (int& x : base) x = idx(rng);
          double sum = 0;
          for (int i = 0; i < d; ++i) {
            auto ext = base;
            ext.push_back(i);
            sum += multiset_minor(k, ext);
          }
          err = std::max(err, std::abs(sum - (n - size + 1) * multiset_minor(k, base)));
          ++checks;
        }
    }
    return at_most("dyson", "sum over the last index equals (n - k + 1) times the smaller minor", err, 1e-9, checks);
  }));
  out.push_back(timed([&] {
    double err = 0;
    std::size_t checks = 0;
    for (std::size_t p = 0; p < projections.size(); ++p) {
      const Matrix& k = projections[p];
      int d = k.rows(), n = ranks[p];
      for (int m = 1; m <= n; ++m) {
        if (std::pow(d, m) > 20000) break;
        std::vector<int> tuple(m, 0);
        double sum = 0;
        while (true) {
          sum += multiset_minor(k, tuple);
          int i = m - 1;
          while (i >= 0 && tuple[i] == d - 1) tuple[i--] = 0;
          if (i < 0) break;
          ++tuple[i];
        }
        err = std::max(err, std::abs(sum - falling_factorial(n, m)));
        ++checks;
      }
    }
    return at_most("dyson-sum", "sum of all m-tuple minors equals the falling factorial", err, 1e-9, checks);
  }));
  out.push_back(timed([&] {
    double err = 0;
    std::size_t checks = 0;
    for (std::size_t p = 0; p < projections.size(); ++p) {
      const Matrix& k = projections[p];
      int d = k.rows();
      double sum = 0;
      for (Subset s = 0; s < (Subset(1) << d); ++s)
        if (subset_size(s) == ranks[p]) {
          auto idx = subset_indices(s, d);
          sum += qdet(k.select(idx, idx));
        }
      err = std::max(err, std::abs(sum - 1));
      ++checks;
    }
    for (int i = 0; i < 10; ++i) {
      Rng rng = instance_rng(c, "quaternion/kernel", i);
      Kernel k = random_kernel(SplitSpace::lines(Field::Quaternion, 1 + i % 6), rng);
      auto t = density_table(k);
      err = std::max(err, std::abs(std::accumulate(t.begin(), t.end(), 0.0) - 1));
      ++checks;
    }
    return at_most("qdpp-sum", "quaternion DPP densities sum to one", err, 1e-9, checks);
  }));
  return out;
}

// ---------------------------------------------------------------- criterion 3

std::vector<CaseResult> suite_density(const SuiteConfig& c) {
  return {timed([&] {
    double err = 0;
    const int count = 100;
    for (int i = 0; i < count; ++i) {
      Rng rng = instance_rng(c, "density/pair", i);
      int d = std::uniform_int_distribution<int>(1, 6)(rng);
      SplitSpace space = random_space(i % 2 ? Field::Complex : Field::Real, d, 1, rng);
      Kernel k = random_kernel(space, rng);
      auto strata = enumerate_strata(space);
      const Stratum& n = strata[std::uniform_int_distribution<std::size_t>(0, strata.size() - 1)(rng)];
      AdaptedSubspace q = sample_uniform_adapted(space, n, rng);
      Frame f = join_frame(q);
      double a = schur_density_direct(k.matrix, f);
      double b = schur_density(k.matrix, f);
      double t = dlp_prob_trace(k, q);
      err = std::max({err, std::abs(a - b), std::abs(a - t), std::abs(b - t)});
    }
    return at_most("density-routes", "direct, Hermitian and exterior-algebra densities agree", err, 1e-9, count);
  })};
}

// ---------------------------------------------------------------- criterion 4

std::vector<CaseResult> suite_sampler_law(const SuiteConfig& c) {
  const std::size_t n = pick(c, 100000);
  const int count = 10, laplace_points = 5;
  double min_p_masses = 1, min_p_mixture = 1, max_z_laplace = 0, max_z_quaternion = 0;
  auto t0 = Clock::now();
  for (int i = 0; i < count; ++i) {
    Rng rng = instance_rng(c, "sampler-law/model", i);
    SplitSpace space = random_space(i % 2 ? Field::Complex : Field::Real, 5, 2, rng);
    DlpModel model(random_kernel(space, rng));
    std::size_t bins = strata_count(space);
    std::vector<std::vector<double>> ts(laplace_points, std::vector<double>(space.blocks_count()));
    for (auto& t : ts)
      for (double& x : t) x = std::uniform_real_distribution<double>(-1, 1)(rng);

    struct Acc {
      std::vector<double> direct, mixture;
      std::vector<Moments> laplace;
    };
    auto parts = parallel_blocks(n, [&](std::size_t b, std::size_t begin, std::size_t end) {
      Rng r1 = stream(c.seed, tag("sampler-law/sample", i), b);
      Rng r2 = stream(c.seed, tag("sampler-law/mixture", i), b);
      Acc a{std::vector<double>(bins), std::vector<double>(bins), std::vector<Moments>(laplace_points)};
      for (std::size_t j = begin; j < end; ++j) {
        Stratum s = split_dimension(sample(model, r1, {false}).subspace);
        a.direct[stratum_index(space, s)] += 1;
        for (int p = 0; p < laplace_points; ++p) {
          double e = 0;
          for (int q = 0; q < space.blocks_count(); ++q) e += ts[p][q] * s[q];
          a.laplace[p].add(std::exp(e));
        }
        a.mixture[stratum_index(space, split_dimension(sample_via_mixture(model, r2, {false}).subspace))] += 1;
      }
      return a;
    });
    Acc tot{std::vector<double>(bins), std::vector<double>(bins), std::vector<Moments>(laplace_points)};
    for (const Acc& a : parts) {
      for (std::size_t j = 0; j < bins; ++j) {
        tot.direct[j] += a.direct[j];
        tot.mixture[j] += a.mixture[j];
      }
      for (int p = 0; p < laplace_points; ++p) tot.laplace[p].merge(a.laplace[p]);
    }
    min_p_masses = std::min(min_p_masses, chi_square(tot.direct, clean_probabilities(strata_masses(model))).p_value);
    min_p_mixture = std::min(min_p_mixture, chi_square_two_sample(tot.direct, tot.mixture).p_value);
    for (int p = 0; p < laplace_points; ++p) {
      Band band = tot.laplace[p].band();
      max_z_laplace = std::max(max_z_laplace, zscore(band.mean - laplace_transform(model, ts[p]), band.se));
    }
  }
  double mc_time = std::chrono::duration<double>(Clock::now() - t0).count();

  const int qcount = 3;
  auto t1 = Clock::now();
  for (int i = 0; i < qcount; ++i) {
    Rng rng = instance_rng(c, "sampler-law/quaternion", i);
    SplitSpace space = random_space(Field::Quaternion, 4, 2, rng);
    DlpModel model(random_kernel(space, rng));
    auto masses = strata_masses_polynomial(model);
    auto h = histogram(n, c.seed, tag("sampler-law/quaternion-sample", i), masses.size(), [&](Rng& r) {
      return static_cast<std::size_t>(stratum_index(space, split_dimension(sample(model, r, {false}).subspace)));
    });
    double total = static_cast<double>(n);
    for (std::size_t j = 0; j < masses.size(); ++j) {
      double p = std::clamp(masses[j], 0.0, 1.0);
      max_z_quaternion = std::max(max_z_quaternion, zscore(h[j] / total - p, std::sqrt(p * (1 - p) / total)));
    }
  }
  double q_time = std::chrono::duration<double>(Clock::now() - t1).count();

  std::vector<CaseResult> out{
      above("strata-chi2", "stratum histogram matches exterior-algebra masses (min p)", min_p_masses, 1e-3, count),
      above("mixture-chi2", "basis sampler and mixture sampler agree (min p)", min_p_mixture, 1e-3, count),
      at_most("laplace", "Laplace transform matches the Monte-Carlo MGF (max |z|)", max_z_laplace, 4.0,
              count * laplace_points),
      at_most("quaternion-masses", "quaternion stratum frequencies match qdet coefficients (max |z|)",
              max_z_quaternion, 4.0, qcount)};
  for (int j = 0; j < 3; ++j) out[j].runtime_s = mc_time / 3;
  out[3].runtime_s = q_time;
  return out;
}

// ---------------------------------------------------------------- criterion 5

std::vector<CaseResult> suite_mean_projection(const SuiteConfig& c) {
  const std::size_t n_unique = pick(c, 10000), n_mean = pick(c, 20000);
  std::vector<CaseResult> out;

  out.push_back(timed([&] {
    std::size_t failures = 0;
    const Field fields[] = {Field::Real, Field::Complex, Field::Quaternion};
    for (int i = 0; i < 3; ++i) {
      Rng rng = instance_rng(c, "mean-projection/unique", i);
      SplitSpace space = random_space(fields[i], 4, 2, rng);
      Frame h = haar_frame(4, 2, fields[i], rng);
      DlpModel model = projection_model(space, h);
      auto parts = parallel_blocks(n_unique, [&](std::size_t b, std::size_t begin, std::size_t end) {
        Rng r = stream(c.seed, tag("mean-projection/unique-sample", i), b);
        std::size_t f = 0;
        for (std::size_t j = begin; j < end; ++j) {
          Frame q = join_frame(sample(model, r, {false}).subspace);
          try {
            oblique_projector(q, h);
          } catch (const NumericError&) {
            ++f;
          }
        }
        return f;
      });
      for (std::size_t f : parts) failures += f;
    }
    return at_most("uniqueness", "samples are transversal to H^perp (failure count)", double(failures), 0.0, 3);
  }));

  auto mean_case = [&](const char* id, const char* claim, bool wedge, std::vector<std::pair<SplitSpace, int>> setups) {
    return timed([&] {
      double worst = 0;
      for (std::size_t i = 0; i < setups.size(); ++i) {
        Rng rng = instance_rng(c, id, i);
        const SplitSpace& space = setups[i].first;
        Frame h = haar_frame(space.dim(), setups[i].second, space.field(), rng);
        MeanProjection mp = mean_projection_estimate(space, h, n_mean, stream_seed(c.seed, tag(id, i), 1), wedge);
        CMatrix target = projection(h).rep();
        if (space.field() == Field::Quaternion) target *= 2.0;
        const CMatrix& mean = mp.mean.rep();
        const RMatrix* se_re = &mp.se_re;
        const RMatrix* se_im = &mp.se_im;
        CMatrix wt;
        if (wedge) {
          wt = wedge_operator(projection(h)).m;
          target = wt;
        }
        const CMatrix& est = wedge ? mp.wedge_mean : mean;
        if (wedge) {
          se_re = &mp.wedge_se_re;
          se_im = &mp.wedge_se_im;
        }
        for (Eigen::Index r = 0; r < est.rows(); ++r)
          for (Eigen::Index s = 0; s < est.cols(); ++s) {
            worst = std::max(worst, zscore(est(r, s).real() - target(r, s).real(), (*se_re)(r, s)));
            worst = std::max(worst, zscore(est(r, s).imag() - target(r, s).imag(), (*se_im)(r, s)));
          }
      }
      return at_most(id, claim, worst, 5.0, setups.size());
    });
  };
  out.push_back(mean_case("mean-projection", "mean oblique projector equals Pi_H (max |z|, R and C)", false,
                          {{SplitSpace::lines(Field::Real, 3), 2},
                           {SplitSpace(Field::Real, {2, 2}), 2},
                           {SplitSpace(Field::Complex, {1, 2, 1}), 2},
                           {SplitSpace::lines(Field::Complex, 3), 1}}));
  out.push_back(mean_case("mean-projection-h", "mean of P + P* equals 2 Pi_H over H (max |z|)", false,
                          {{SplitSpace::lines(Field::Quaternion, 3), 2}, {SplitSpace(Field::Quaternion, {1, 2}), 1}}));
  out.push_back(mean_case("wedge-mean", "mean of wedge(P) equals wedge(Pi_H) minor-wise (max |z|)", true,
                          {{SplitSpace::lines(Field::Real, 4), 2}, {SplitSpace(Field::Complex, {2, 1, 2}), 3}}));

  out.push_back(timed([&] {
    std::size_t mismatches = 0;
    const int count = 20;
    for (int i = 0; i < count; ++i) {
      Rng rng = instance_rng(c, "mean-projection/matroid", i);
      int d = std::uniform_int_distribution<int>(2, 6)(rng);
      SplitSpace space = random_space(i % 2 ? Field::Complex : Field::Real, d, 2, rng);
      int dim = std::uniform_int_distribution<int>(1, d - 1)(rng);
      Frame h = random_sparse_frame(space, dim, rng);
      auto support = matroid_support(space, h);
      auto masses = strata_masses(projection_model(space, h));
      auto strata = enumerate_strata(space);
      for (std::size_t j = 0; j < strata.size(); ++j) {
        bool in_support = std::find(support.begin(), support.end(), strata[j]) != support.end();
        if (in_support != (masses[j] > 1e-9)) ++mismatches;
      }
    }
    return at_most("matroid-support", "rank inequalities describe the positive-mass strata (mismatches)",
                   double(mismatches), 0.0, count);
  }));
  return out;
}

// ---------------------------------------------------------------- criterion 6

std::vector<CaseResult> suite_transforms(const SuiteConfig& c) {
  const std::size_t n = pick(c, 100000);
  const int count = 5;
  double p_comp = 1, p_scale3 = 1, p_scale7 = 1, p_restrict = 1;
  auto t0 = Clock::now();
  for (int i = 0; i < count; ++i) {
    Rng rng = instance_rng(c, "transforms/model", i);
    SplitSpace space = random_space(i % 2 ? Field::Complex : Field::Real, 5, 2, rng);
    DlpModel model(random_kernel(space, rng));
    int t = std::uniform_int_distribution<int>(1, space.blocks_count() - 1)(rng);
    DlpModel comp = complement_model(model), s3 = scale_model(model, 0.3), s7 = scale_model(model, 0.7);
    DlpModel sub = restrict(model, t);
    std::size_t bins = strata_count(space), sub_bins = strata_count(sub.space);

    struct Acc {
      std::vector<double> comp_a, comp_b, s3_a, s3_b, s7_a, s7_b, r_a, r_b;
    };
    auto parts = parallel_blocks(n, [&](std::size_t b, std::size_t begin, std::size_t end) {
      Rng base = stream(c.seed, tag("transforms/base", i), b);
      Rng direct = stream(c.seed, tag("transforms/direct", i), b);
      Acc a{std::vector<double>(bins), std::vector<double>(bins), std::vector<double>(bins),
            std::vector<double>(bins),  std::vector<double>(bins), std::vector<double>(bins),
            std::vector<double>(sub_bins), std::vector<double>(sub_bins)};
      for (std::size_t j = begin; j < end; ++j) {
        AdaptedSubspace q = sample(model, base, {false}).subspace;
        Stratum ns = split_dimension(q);
        Stratum perp(ns.size());
        for (std::size_t k = 0; k < ns.size(); ++k) perp[k] = space.blocks()[k] - ns[k];
        a.comp_a[stratum_index(space, perp)] += 1;
        a.s3_a[stratum_index(space, split_dimension(thin(q, 0.3, base)))] += 1;
        a.s7_a[stratum_index(space, split_dimension(thin(q, 0.7, base)))] += 1;
        a.r_a[stratum_index(sub.space, split_dimension(restrict_subspace(q, t)))] += 1;
        a.comp_b[stratum_index(space, split_dimension(sample(comp, direct, {false}).subspace))] += 1;
        a.s3_b[stratum_index(space, split_dimension(sample(s3, direct, {false}).subspace))] += 1;
        a.s7_b[stratum_index(space, split_dimension(sample(s7, direct, {false}).subspace))] += 1;
        a.r_b[stratum_index(sub.space, split_dimension(sample(sub, direct, {false}).subspace))] += 1;
      }
      return a;
    });
    Acc tot{std::vector<double>(bins), std::vector<double>(bins), std::vector<double>(bins),
            std::vector<double>(bins),  std::vector<double>(bins), std::vector<double>(bins),
            std::vector<double>(sub_bins), std::vector<double>(sub_bins)};
    auto add = [](std::vector<double>& x, const std::vector<double>& y) {
      for (std::size_t k = 0; k < x.size(); ++k) x[k] += y[k];
    };
    for (const Acc& a : parts) {
      add(tot.comp_a, a.comp_a);
      add(tot.comp_b, a.comp_b);
      add(tot.s3_a, a.s3_a);
      add(tot.s3_b, a.s3_b);
      add(tot.s7_a, a.s7_a);
      add(tot.s7_b, a.s7_b);
      add(tot.r_a, a.r_a);
      add(tot.r_b, a.r_b);
    }
    p_comp = std::min(p_comp, chi_square_two_sample(tot.comp_a, tot.comp_b).p_value);
    p_scale3 = std::min(p_scale3, chi_square_two_sample(tot.s3_a, tot.s3_b).p_value);
    p_scale7 = std::min(p_scale7, chi_square_two_sample(tot.s7_a, tot.s7_b).p_value);
    // A one-block restriction of a fixed-dimension law can be a point mass.
    auto nonzero = std::count_if(tot.r_a.begin(), tot.r_a.end(), [](double x) { return x > 0; }) +
                   std::count_if(tot.r_b.begin(), tot.r_b.end(), [](double x) { return x > 0; });
    if (nonzero > 2 || tot.r_a != tot.r_b)
      p_restrict = std::min(p_restrict, chi_square_two_sample(tot.r_a, tot.r_b).p_value);
  }
  double dt = std::chrono::duration<double>(Clock::now() - t0).count() / 4;
  std::vector<CaseResult> out{
      above("orthocomplement", "complements of samples follow the 1 - k law (min p)", p_comp, 1e-3, count),
      above("scaling-0.3", "thinned samples follow the 0.3 k law (min p)", p_scale3, 1e-3, count),
      above("scaling-0.7", "thinned samples follow the 0.7 k law (min p)", p_scale7, 1e-3, count),
      above("restriction", "Q cap F follows the compressed-kernel law (min p)", p_restrict, 1e-3, count)};
  for (auto& r : out) r.runtime_s = dt;
  return out;
}

// ---------------------------------------------------------------- criterion 7

std::vector<CaseResult> suite_inequalities(const SuiteConfig& c) {
  const std::size_t n = pick(c, 100000);
  const int count = 10;
  std::vector<CaseResult> out;

  out.push_back(timed([&] {
    double worst = -kInf;
    for (int i = 0; i < count; ++i) {
      Rng rng = instance_rng(c, "inequalities/association", i);
      SplitSpace space = random_space(i % 2 ? Field::Complex : Field::Real, 5, 2, rng);
      DlpModel model(random_kernel(space, rng));
      int s = space.blocks_count();
      std::uint64_t r_mask = std::uniform_int_distribution<std::uint64_t>(1, (std::uint64_t(1) << s) - 2)(rng);
      int d = space.dim();
      auto joint = histogram(n, c.seed, tag("inequalities/association-sample", i), (d + 1) * (d + 1), [&](Rng& r) {
        Stratum ns = split_dimension(sample(model, r, {false}).subspace);
        int f = 0, g = 0;
        for (int b = 0; b < s; ++b) (r_mask >> b & 1 ? f : g) += ns[b];
        return static_cast<std::size_t>(f * (d + 1) + g);
      });
      double N = static_cast<double>(n), ef = 0, eg = 0;
      for (int f = 0; f <= d; ++f)
        for (int g = 0; g <= d; ++g) {
          double w = joint[f * (d + 1) + g] / N;
          ef += w * f;
          eg += w * g;
        }
      double cov = 0, m2 = 0;
      for (int f = 0; f <= d; ++f)
        for (int g = 0; g <= d; ++g) {
          double w = joint[f * (d + 1) + g] / N, x = (f - ef) * (g - eg);
          cov += w * x;
          m2 += w * x * x;
        }
      double se = std::sqrt(std::max(0.0, m2 - cov * cov) / (N - 1));
      worst = std::max(worst, se > 1e-12 ? cov / se : (cov <= 1e-9 ? 0.0 : kInf));
    }
    return at_most("negative-association", "Cov(dim Q cap R, dim Q cap R^perp) <= 0 (max z)", worst, 4.0, count);
  }));

  out.push_back(timed([&] {
    double worst = -kInf;
    for (int i = 0; i < count; ++i) {
      Rng rng = instance_rng(c, "inequalities/domination", i);
      SplitSpace space = random_space(i % 2 ? Field::Complex : Field::Real, 5, 2, rng);
      Kernel k2 = random_kernel(space, rng);
      Eigensystem es = hermitian_eig(k2.matrix);
      RVector root = es.values.cwiseMax(0.0).cwiseSqrt();
      CMatrix half = es.vectors.rep() * root.cast<cplx>().asDiagonal() * es.vectors.rep().adjoint();
      Matrix contraction = random_spectral(space.dim(), space.field(), 0.0, 1.0, rng);
      Kernel k1(space, Matrix(space.field(), half * contraction.rep() * half));
      DlpModel m1(k1), m2(k2);
      int s = space.blocks_count();
      auto run = [&](const DlpModel& m, const char* name) {
        auto parts = parallel_blocks(n, [&](std::size_t b, std::size_t begin, std::size_t end) {
          Rng r = stream(c.seed, tag(name, i), b);
          std::vector<Moments> acc(s);
          for (std::size_t j = begin; j < end; ++j) {
            Stratum ns = split_dimension(sample(m, r, {false}).subspace);
            for (int q = 0; q < s; ++q) acc[q].add(ns[q]);
          }
          return acc;
        });
        std::vector<Moments> tot(s);
        for (const auto& p : parts)
          for (int q = 0; q < s; ++q) tot[q].merge(p[q]);
        return tot;
      };
      auto a = run(m1, "inequalities/domination-low"), b = run(m2, "inequalities/domination-high");
      for (int q = 0; q < s; ++q) {
        Band x = a[q].band(), y = b[q].band();
        double se = std::sqrt(x.se * x.se + y.se * y.se);
        double diff = x.mean - y.mean;
        worst = std::max(worst, se > 1e-12 ? diff / se : (diff <= 1e-9 ? 0.0 : kInf));
      }
    }
    return at_most("domination", "E dim(Q1 cap E_i) <= E dim(Q2 cap E_i) for k1 <= k2 (max z)", worst, 4.0, count);
  }));

  out.push_back(timed([&] {
    double worst = -kInf;
    const int fcount = 100;
    for (int i = 0; i < fcount; ++i) {
      Rng rng = instance_rng(c, "inequalities/fischer", i);
      int d = std::uniform_int_distribution<int>(2, 6)(rng);
      Field f = i % 2 ? Field::Complex : Field::Real;
      Matrix k = random_spectral(d, f, 0.0, 1.0, rng);
      // Disjoint non-empty coordinate sets, not necessarily covering.
      std::vector<int> order(d);
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      int a = std::uniform_int_distribution<int>(1, d - 1)(rng);
      int b = std::uniform_int_distribution<int>(1, d - a)(rng);
      std::vector<int> r1(order.begin(), order.begin() + a), r2(order.begin() + a, order.begin() + a + b);
      std::vector<int> both = r1;
      both.insert(both.end(), r2.begin(), r2.end());
      double lhs = hermitian_det(k.select(both, both));
      double rhs = hermitian_det(k.select(r1, r1)) * hermitian_det(k.select(r2, r2));
      worst = std::max(worst, lhs - rhs);
    }
    return at_most("fischer", "det K on R1+R2 minus det K on R1 times det K on R2", worst, 1e-12, fcount);
  }));
  return out;
}

// ---------------------------------------------------------------- criterion 8

std::vector<CaseResult> suite_qsf(const SuiteConfig& c) {
  std::vector<CaseResult> out;
  WeightedGraph k3 = complete_graph(3);

  out.push_back(timed([&] {
    const std::size_t n = pick(c, 100000);
    DlpModel model = qsf_model(k3, trivial_connection(k3, 1));
    auto h = histogram(n, c.seed, tag("qsf/k3", 0), 4, [&](Rng& r) {
      Stratum s = split_dimension(sample(model, r, {false}).subspace);
      if (total(s) != 2) return std::size_t(3);
      for (std::size_t e = 0; e < 3; ++e)
        if (!s[e]) return e;
      return std::size_t(3);
    });
    double p = chi_square(h, {1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0}).p_value;
    return above("k3-trees", "the three spanning trees of K3 are equally likely (p)", p, 1e-3, 1);
  }));

  out.push_back(timed([&] {
    Kernel t = transfer_current(k3);
    double err = 0;
    for (int e = 0; e < 3; ++e) err = std::max(err, std::abs(t.matrix.rep()(e, e).real() - 2.0 / 3));
    return at_most("k3-transfer", "transfer-current diagonal on K3 equals 2/3", err, 1e-10, 1);
  }));

  out.push_back(timed([&] {
    const std::size_t n = pick(c, 10000);
    WeightedGraph g = grid_graph(5, 5);
    DlpModel model = qsf_model(g, trivial_connection(g, 1));
    auto parts = parallel_blocks(n, [&](std::size_t b, std::size_t begin, std::size_t end) {
      Rng r = stream(c.seed, tag("qsf/ust", 0), b);
      std::size_t bad = 0;
      for (std::size_t j = begin; j < end; ++j)
        if (!is_spanning_tree(g, split_dimension(sample(model, r, {false}).subspace))) ++bad;
      return bad;
    });
    double bad = 0;
    for (std::size_t x : parts) bad += x;
    return at_most("ust-spanning", "grid 5x5 samples are spanning trees (failure count)", bad, 0.0, 1);
  }));

  out.push_back(timed([&] {
    const std::size_t n = pick(c, 20000);
    WeightedGraph g = grid_graph(3, 3);
    const int rank = 3;
    DlpModel model = qsf_model(g, trivial_connection(g, rank));
    Kernel t = transfer_current(g);
    std::size_t m = g.edges.size();
    auto parts = parallel_blocks(n, [&](std::size_t b, std::size_t begin, std::size_t end) {
      Rng r = stream(c.seed, tag("qsf/rank3", 0), b);
      std::vector<Moments> acc(m);
      for (std::size_t j = begin; j < end; ++j) {
        Stratum s = split_dimension(sample(model, r, {false}).subspace);
        for (std::size_t e = 0; e < m; ++e) acc[e].add(s[e]);
      }
      return acc;
    });
    std::vector<Moments> tot(m);
    for (const auto& p : parts)
      for (std::size_t e = 0; e < m; ++e) tot[e].merge(p[e]);
    double worst = 0;
    for (std::size_t e = 0; e < m; ++e) {
      Band band = tot[e].band();
      worst = std::max(worst, zscore(band.mean - rank * t.matrix.rep()(e, e).real(), band.se));
    }
    return at_most("rank3-marginals", "rank-3 edge occupation equals 3 x UST marginals (max |z|)", worst, 4.0, m);
  }));

  out.push_back(timed([&] {
    const std::size_t n = pick(c, 20000);
    WeightedGraph cycle = cycle_graph(4);
    WeightedGraph diamond = cycle_graph(4);
    diamond.edges.push_back({0, 2, 1.0});
    double min_p = 1;
    int idx = 0;
    for (const WeightedGraph* g : {&cycle, &diamond}) {
      Rng rng = instance_rng(c, "qsf/quaternion", idx);
      Connection h = sample_haar_connection(*g, Group::Symplectic, 1, rng);
      DlpModel model = qsf_model(*g, h);
      auto law = clean_probabilities(density_table(model.kernel));
      std::size_t outcomes = law.size();
      auto hist = histogram(n, c.seed, tag("qsf/quaternion-sample", idx), outcomes, [&](Rng& r) {
        Stratum s = split_dimension(sample(model, r, {false}).subspace);
        Subset x = 0;
        for (std::size_t e = 0; e < s.size(); ++e)
          if (s[e]) x |= Subset(1) << e;
        return static_cast<std::size_t>(x);
      });
      std::size_t support = std::count_if(law.begin(), law.end(), [](double p) { return p > 1e-12; });
      if (support == 1) {
        // Full-rank twisted derivative: every sample is the whole edge set.
        std::size_t only = std::max_element(law.begin(), law.end()) - law.begin();
        if (hist[only] != static_cast<double>(n)) min_p = 0;
      } else {
        min_p = std::min(min_p, chi_square(hist, law).p_value);
      }
      ++idx;
    }
    return above("quaternion-qsf", "Sp(1) forests on the 4-cycle and the diamond match the qdet law (min p)", min_p,
                    1e-3, 2);
  }));
  return out;
}

// ---------------------------------------------------------------- criterion 9

std::vector<CaseResult> suite_scalar_restriction(const SuiteConfig& c) {
  const std::size_t n = pick(c, 100000);
  std::vector<CaseResult> out;
  auto run = [&](const char* id, const char* claim, Field f) {
    return timed([&] {
      double min_p = 1;
      const int count = 3;
      for (int i = 0; i < count; ++i) {
        Rng rng = instance_rng(c, id, i);
        SplitSpace space = random_space(f, 2 + i, 1, rng);
        DlpModel model(random_kernel(space, rng));
        auto masses = f == Field::Quaternion ? strata_masses_polynomial(model) : strata_masses(model);
        auto strata = enumerate_strata(space);
        auto [rspace, rkernel] = restrict_scalars(space, model.kernel);
        DlpModel restricted(rkernel);
        std::vector<double> expected(strata_count(rspace), 0.0);
        for (std::size_t a = 0; a < strata.size(); ++a)
          for (std::size_t b = 0; b < strata.size(); ++b) {
            Stratum sum(strata[a].size());
            for (std::size_t q = 0; q < sum.size(); ++q) sum[q] = strata[a][q] + strata[b][q];
            expected[stratum_index(rspace, sum)] += masses[a] * masses[b];
          }
        auto h = histogram(n, c.seed, tag(id, i + 100), expected.size(), [&](Rng& r) {
          return static_cast<std::size_t>(
              stratum_index(rspace, split_dimension(sample(restricted, r, {false}).subspace)));
        });
        min_p = std::min(min_p, chi_square(h, clean_probabilities(expected)).p_value);
      }
      return above(id, claim, min_p, 1e-3, count);
    });
  };
  out.push_back(run("complex-to-real", "restricted real law is the convolution of two complex copies (min p)",
                    Field::Complex));
  out.push_back(run("quaternion-to-complex",
                    "restricted complex law is the convolution of two quaternion copies (min p)", Field::Quaternion));
  return out;
}

}  // namespace

const std::vector<RegisteredSuite>& registry() {
  static const std::vector<RegisteredSuite> r{
      {{"dpp-core", 1, "DPP exactness"}, suite_dpp_core},
      {{"quaternion", 2, "Quaternion determinant identities"}, suite_quaternion},
      {{"density", 3, "DLP density consistency"}, suite_density},
      {{"sampler-law", 4, "Sampler law"}, suite_sampler_law},
      {{"mean-projection", 5, "Projection-kernel geometry"}, suite_mean_projection},
      {{"transforms", 6, "Transform laws"}, suite_transforms},
      {{"inequalities", 7, "Structural inequalities"}, suite_inequalities},
      {{"qsf", 8, "Quantum spanning forests"}, suite_qsf},
      {{"scalar-restriction", 9, "Scalar restriction laws"}, suite_scalar_restriction},
  };
  return r;
}

}  // namespace dlp::detail
