#include <cmath>
#include <numbers>

#include "dlp/generators.hpp"
#include "dlp/splitspace.hpp"
#include "dlp/stats.hpp"
#include "testing.hpp"

namespace dlp {
namespace {

using testing::max_diff;

TEST(SplitSpace, Layout) {
  SplitSpace s(Field::Complex, {2, 1, 3});
  EXPECT_EQ(s.dim(), 6);
  EXPECT_EQ(s.blocks_count(), 3);
  EXPECT_EQ(s.offset(2), 3);
  EXPECT_EQ(s.block_of(0), 0);
  EXPECT_EQ(s.block_of(2), 1);
  EXPECT_EQ(s.block_of(5), 2);
  EXPECT_THROW(SplitSpace(Field::Real, {}), DomainError);
  EXPECT_THROW(SplitSpace(Field::Real, {2, 0}), DomainError);
}

TEST(SplitDimension, Cases) {
  SplitSpace s(Field::Real, {2, 2, 1});
  EXPECT_EQ(split_dimension(zero_subspace(s)), (Stratum{0, 0, 0}));
  EXPECT_EQ(split_dimension(full_subspace(s)), (Stratum{2, 2, 1}));
  EXPECT_EQ(split_dimension(coordinate_subspace(s, 1u << 2)), (Stratum{0, 1, 0}));
}

TEST(UniformAdapted, Extremes) {
  Rng rng(30);
  SplitSpace s(Field::Quaternion, {2, 3});
  EXPECT_EQ(split_dimension(sample_uniform_adapted(s, {0, 0}, rng)), (Stratum{0, 0}));
  AdaptedSubspace e = sample_uniform_adapted(s, {2, 3}, rng);
  EXPECT_LT(max_diff(projection(join_frame(e)).rep(), CMatrix::Identity(10, 10)), 1e-12);
  EXPECT_THROW(sample_uniform_adapted(s, {3, 0}, rng), DomainError);
}

TEST(UniformAdapted, LineAngleIsUniform) {
  Rng rng(31);
  SplitSpace s(Field::Real, {2});
  std::vector<double> angles;
  for (int t = 0; t < 100000; ++t) {
    CMatrix x = sample_uniform_adapted(s, {1}, rng).block_frames[0].rep();
    double a = std::atan2(x(1, 0).real(), x(0, 0).real());
    if (a < 0) a += std::numbers::pi;
    if (a >= std::numbers::pi) a -= std::numbers::pi;
    angles.push_back(a);
  }
  EXPECT_GT(ks_uniform(angles, 0, std::numbers::pi), 1e-3);
}

TEST(UniformAdapted, BlockIsometryEquivariance) {
  Rng rng(32);
  SplitSpace s(Field::Complex, {2, 3});
  Frame u = Matrix::zero(Field::Complex, 5, 5);
  u.rep().block(0, 0, 2, 2) = haar_frame(2, 2, Field::Complex, rng).rep();
  u.rep().block(2, 2, 3, 3) = haar_frame(3, 3, Field::Complex, rng).rep();
  Frame probe = haar_frame(5, 2, Field::Complex, rng);
  std::vector<double> a, b;
  for (int t = 0; t < 20000; ++t) {
    a.push_back(cos2(join_frame(sample_uniform_adapted(s, {1, 1}, rng)), probe));
    b.push_back(cos2(u * join_frame(sample_uniform_adapted(s, {1, 1}, rng)), probe));
  }
  EXPECT_GT(ks_two_sample(a, b), 1e-3);
}

TEST(Orthocomplement, Cases) {
  Rng rng(33);
  SplitSpace s(Field::Complex, {2, 3, 1});
  EXPECT_EQ(split_dimension(orthocomplement(full_subspace(s))), (Stratum{0, 0, 0}));
  EXPECT_EQ(split_dimension(orthocomplement(zero_subspace(s))), (Stratum{2, 3, 1}));
  AdaptedSubspace q = sample_uniform_adapted(s, {1, 2, 0}, rng);
  AdaptedSubspace p = orthocomplement(q);
  EXPECT_EQ(split_dimension(p), (Stratum{1, 1, 1}));
  EXPECT_LT(max_diff(projection(join_frame(q)).rep() + projection(join_frame(p)).rep(), CMatrix::Identity(6, 6)), 1e-10);
  EXPECT_LT(projection_distance(join_frame(orthocomplement(p)), join_frame(q)), 1e-9);
}

TEST(JoinFrame, Cases) {
  Rng rng(34);
  SplitSpace one(Field::Real, {3});
  EXPECT_LT(max_diff(join_frame(coordinate_subspace(one, 0b111)).rep(), CMatrix::Identity(3, 3)), 1e-15);
  EXPECT_EQ(join_frame(zero_subspace(one)).cols(), 0);
  SplitSpace s(Field::Quaternion, {2, 2, 2});
  Frame f = join_frame(sample_uniform_adapted(s, {1, 2, 1}, rng));
  EXPECT_EQ(f.rows(), 6);
  EXPECT_EQ(f.cols(), 4);
  EXPECT_TRUE(is_orthonormal(f, 1e-10));
}

TEST(Strata, MassBookkeeping) {
  for (const std::vector<int>& blocks : {std::vector<int>{1, 1, 1, 1}, {2, 3}, {4, 1, 2}, {6}}) {
    SplitSpace s(Field::Real, blocks);
    double mass = 0;
    auto strata = enumerate_strata(s);
    for (std::size_t i = 0; i < strata.size(); ++i) {
      EXPECT_EQ(stratum_index(s, strata[i]), static_cast<int>(i));
      mass += stratum_volume(s, strata[i]);
    }
    EXPECT_EQ(mass, std::ldexp(1.0, s.dim()));
  }
}

TEST(Kernel, Validation) {
  SplitSpace s(Field::Real, {2});
  RMatrix bad(2, 2);
  bad << 1.5, 0, 0, 0.2;
  EXPECT_THROW(Kernel(s, Matrix::from_real(bad)), DomainError);
  bad << 0.5, 0.1, 0.2, 0.5;
  EXPECT_THROW(Kernel(s, Matrix::from_real(bad)), DomainError);
  bad << 1 + 1e-12, 0, 0, -1e-12;
  Kernel k(s, Matrix::from_real(bad));
  Eigensystem es = hermitian_eig(k.matrix);
  EXPECT_GE(es.values.minCoeff(), 0.0);
  EXPECT_LE(es.values.maxCoeff(), 1.0);
}

TEST(RestrictScalars, ComplexIdentity) {
  SplitSpace s(Field::Complex, {2});
  auto [rs, rk] = restrict_scalars(s, Kernel(s, Matrix::identity(Field::Complex, 2)));
  EXPECT_EQ(rs.field(), Field::Real);
  EXPECT_EQ(rs.blocks(), std::vector<int>{4});
  EXPECT_LT(max_diff(rk.matrix.rep(), CMatrix::Identity(4, 4)), 1e-15);
}

TEST(RestrictScalars, QuaternionRankOneProjection) {
  Rng rng(35);
  SplitSpace s(Field::Quaternion, {1, 2});
  Kernel k(s, projection(haar_frame(3, 1, Field::Quaternion, rng)));
  auto [rs, rk] = restrict_scalars(s, k);
  EXPECT_EQ(rs.field(), Field::Complex);
  EXPECT_EQ(rs.blocks(), (std::vector<int>{2, 4}));
  Eigensystem es = hermitian_eig(rk.matrix);
  int ones = 0;
  for (int i = 0; i < es.values.size(); ++i) ones += std::abs(es.values(i) - 1) < 1e-9;
  EXPECT_EQ(ones, 2);
}

TEST(RestrictScalars, SpectrumDoubled) {
  Rng rng(36);
  for (Field f : {Field::Complex, Field::Quaternion}) {
    SplitSpace s(f, {1, 2});
    Kernel k = random_kernel(s, rng);
    RVector lambda = hermitian_eig(k.matrix).values;
    RVector mu = hermitian_eig(restrict_scalars(s, k).second.matrix).values;
    ASSERT_EQ(mu.size(), 2 * lambda.size());
    for (int i = 0; i < lambda.size(); ++i) {
      EXPECT_NEAR(mu(2 * i), lambda(i), 1e-10);
      EXPECT_NEAR(mu(2 * i + 1), lambda(i), 1e-10);
    }
  }
  SplitSpace r(Field::Real, {2});
  EXPECT_THROW(restrict_scalars(r, Kernel(r, Matrix::identity(Field::Real, 2))), DomainError);
}

}  // namespace
}  // namespace dlp
