#include <cmath>
#include <cstdio>

#include "dlp/dpp.hpp"
#include "dlp/generators.hpp"
#include "dlp/stats.hpp"
#include "testing.hpp"

namespace dlp {
namespace {

using testing::bits;
using testing::leibniz_det;
using testing::sub;

Kernel diag_kernel(const std::vector<double>& p) {
  int d = static_cast<int>(p.size());
  RMatrix m = RMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) m(i, i) = p[i];
  return Kernel(SplitSpace::lines(Field::Real, d), Matrix::from_real(m));
}

// Inclusion-exclusion over principal minors, with Leibniz determinants.
double density_oracle(const Kernel& k, Subset s) {
  int d = k.dim();
  double total = 0;
  for (Subset j = 0; j < (Subset(1) << d); ++j) {
    if ((j & s) != s) continue;
    auto idx = bits(j, d);
    double minor = leibniz_det(sub(k.matrix.rep(), idx, idx)).real();
    total += (subset_size(j ^ s) % 2 ? -1 : 1) * minor;
  }
  return total;
}

TEST(IncidenceProb, Cases) {
  Kernel k = diag_kernel({0.3, 0.6, 0.9});
  EXPECT_DOUBLE_EQ(incidence_prob(k, 0), 1.0);
  EXPECT_NEAR(incidence_prob(k, 0b011), 0.18, 1e-15);
  EXPECT_NEAR(incidence_prob(k, 0b111), 0.162, 1e-15);
}

TEST(IncidenceProb, MatchesSamplerFrequency) {
  Rng rng(40);
  Kernel k = random_kernel(SplitSpace::lines(Field::Complex, 4), rng);
  const int n = 100000;
  std::vector<Moments> hits(16);
  for (int t = 0; t < n; ++t) {
    Subset x = sample_recursive(k, rng);
    for (Subset j = 0; j < 16; ++j) hits[j].add((x & j) == j);
  }
  for (Subset j = 1; j < 16; ++j) {
    Band b = hits[j].band();
    EXPECT_LE(std::abs(b.mean - incidence_prob(k, j)), 4 * b.se + 1e-12) << j;
  }
}

TEST(SubsetDensity, Cases) {
  Rng rng(41);
  Kernel zero = diag_kernel({0, 0, 0});
  EXPECT_DOUBLE_EQ(subset_density(zero, 0), 1.0);
  SplitSpace lines = SplitSpace::lines(Field::Complex, 5);
  Kernel proj(lines, projection(haar_frame(5, 2, Field::Complex, rng)));
  for (Subset s = 0; s < 32; ++s)
    if (subset_size(s) != 2) EXPECT_NEAR(subset_density(proj, s), 0.0, 1e-12);
}

TEST(SubsetDensity, MatchesInclusionExclusion) {
  Rng rng(42);
  for (Field f : {Field::Real, Field::Complex}) {
    Kernel k = random_kernel(SplitSpace::lines(f, 4), rng);
    for (Subset s = 0; s < 16; ++s) EXPECT_NEAR(subset_density(k, s), density_oracle(k, s), 1e-12);
  }
}

TEST(SubsetDensity, QuaternionProjectionSums) {
  Rng rng(43);
  SplitSpace lines = SplitSpace::lines(Field::Quaternion, 3);
  for (int n = 1; n <= 3; ++n) {
    Kernel k(lines, projection(haar_frame(3, n, Field::Quaternion, rng)));
    double total = 0;
    for (Subset s = 0; s < 8; ++s)
      if (subset_size(s) == n) {
        auto idx = bits(s, 3);
        total += qdet(k.matrix.select(idx, idx));
        EXPECT_NEAR(subset_density(k, s), qdet(k.matrix.select(idx, idx)), 1e-12);
      }
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
}

TEST(SubsetDensity, QuaternionRankOneLine) {
  // Frame (cos t, sin t j): P({1}) = cos^2 t.
  double t = 0.4;
  Frame v = Matrix::from_quaternions({{Quaternion(std::cos(t))}, {Quaternion(0, 0, std::sin(t), 0)}});
  Kernel k(SplitSpace::lines(Field::Quaternion, 2), projection(v));
  auto table = density_table(k);
  EXPECT_NEAR(table[0b01], std::cos(t) * std::cos(t), 1e-15);
  EXPECT_NEAR(table[0b10], std::sin(t) * std::sin(t), 1e-15);
  EXPECT_NEAR(table[0b01], k.matrix.at(0, 0).re(), 1e-15);
  EXPECT_NEAR(table[0b00] + table[0b11], 0.0, 1e-15);
}

TEST(SampleRecursive, Degenerate) {
  Rng rng(44);
  for (int t = 0; t < 10; ++t) {
    EXPECT_EQ(sample_recursive(diag_kernel({0, 0, 0, 0}), rng), 0u);
    EXPECT_EQ(sample_recursive(diag_kernel({1, 1, 1, 1}), rng), 0b1111u);
  }
}

TEST(SampleRecursive, ChiSquareAgainstDensity) {
  Rng rng(45);
  Kernel k = random_kernel(SplitSpace::lines(Field::Complex, 4), rng);
  std::vector<double> counts(16);
  for (int t = 0; t < 200000; ++t) counts[sample_recursive(k, rng)] += 1;
  EXPECT_GT(chi_square(counts, density_table(k)).p_value, 1e-3);
}

TEST(SampleRecursive, IndicatorForLargeDimension) {
  Rng rng(46);
  Frame h = haar_frame(80, 30, Field::Real, rng);
  for (int t = 0; t < 5; ++t) {
    auto x = sample_recursive_indicator(projection(h), rng);
    EXPECT_EQ(std::count(x.begin(), x.end(), 1), 30);
  }
  EXPECT_THROW(sample_recursive(projection(h), rng), BudgetError);
}

// Exact law of the Schur-complement recursion run on a quaternion kernel.
void recursion_law(const Matrix& k, int offset, Subset acc, double mass, std::vector<double>& law) {
  if (k.rows() == 0) {
    law[acc] += mass;
    return;
  }
  int r = k.rows() - 1;
  double p = k.at(0, 0).re();
  Matrix rest = k.block(1, 1, r, r), col = k.block(1, 0, r, 1), row = k.block(0, 1, 1, r);
  if (p > 1e-12) recursion_law(rest - (col * row) * (1 / p), offset + 1, acc | Subset(1) << offset, mass * p, law);
  if (p < 1 - 1e-12) recursion_law(rest + (col * row) * (1 / (1 - p)), offset + 1, acc, mass * (1 - p), law);
}

TEST(SampleRecursive, QuaternionRecursionReport) {
  // Open question: is the recursion exact for qdet? Reported, not asserted.
  Rng rng(50);
  double worst = 0;
  for (int t = 0; t < 5; ++t) {
    Kernel k = random_kernel(SplitSpace::lines(Field::Quaternion, 4), rng);
    std::vector<double> law(16);
    recursion_law(k.matrix, 0, 0, 1.0, law);
    auto want = density_table(k);
    double tv = 0;
    for (Subset s = 0; s < 16; ++s) tv += std::abs(law[s] - want[s]) / 2;
    worst = std::max(worst, tv);
  }
  RecordProperty("quaternion_recursion_max_tv", std::to_string(worst));
  std::printf("quaternion recursion vs enumeration: max total variation %.3g\n", worst);
}

TEST(SampleEnumerated, UniformForHalfDiagonal) {
  auto table = density_table(diag_kernel({0.5, 0.5, 0.5, 0.5}));
  for (double p : table) EXPECT_NEAR(p, 1.0 / 16, 1e-15);
}

TEST(SampleEnumerated, AgreesWithRecursive) {
  Rng rng(47);
  Kernel k = random_kernel(SplitSpace::lines(Field::Complex, 4), rng);
  std::vector<double> a(16), b(16);
  for (int t = 0; t < 100000; ++t) {
    a[sample_recursive(k, rng)] += 1;
    b[sample_enumerated(k, rng)] += 1;
  }
  EXPECT_GT(chi_square_two_sample(a, b).p_value, 1e-3);
}

TEST(Mobius, PointMasses) {
  std::vector<double> ones(16, 1.0);
  auto full = mobius_invert(ones, 4);
  for (Subset s = 0; s < 16; ++s) EXPECT_DOUBLE_EQ(full[s], s == 15 ? 1.0 : 0.0);
  std::vector<double> empty(16, 0.0);
  empty[0] = 1;
  auto none = mobius_invert(empty, 4);
  for (Subset s = 0; s < 16; ++s) EXPECT_DOUBLE_EQ(none[s], s == 0 ? 1.0 : 0.0);
}

TEST(Mobius, InvertsIncidence) {
  Rng rng(48);
  Kernel k = random_kernel(SplitSpace::lines(Field::Complex, 4), rng);
  auto law = density_table(k);
  auto inv = mobius_invert(incidence_table(k), 4);
  for (Subset s = 0; s < 16; ++s) EXPECT_NEAR(inv[s], law[s], 1e-9);
  auto back = incidence_transform(law, 4);
  auto inc = incidence_table(k);
  for (Subset s = 0; s < 16; ++s) EXPECT_NEAR(back[s], inc[s], 1e-10);
}

TEST(MultisetMinor, DistinctIndicesArePrincipalMinors) {
  Rng rng(49);
  Matrix k = projection(haar_frame(4, 2, Field::Quaternion, rng));
  EXPECT_NEAR(multiset_minor(k, {0, 2, 3}), qdet(k.select({0, 2, 3}, {0, 2, 3})), 1e-12);
  // A repeated index gives two equal rows with a real diagonal entry.
  EXPECT_NEAR(multiset_minor(k, {1, 1}), 0.0, 1e-12);
}

TEST(Budgets, Enumeration) {
  Kernel big = diag_kernel(std::vector<double>(21, 0.5));
  EXPECT_THROW(density_table(big), BudgetError);
}

}  // namespace
}  // namespace dlp
