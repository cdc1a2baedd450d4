#include "dlp/generators.hpp"
#include "dlp/linalg.hpp"
#include "testing.hpp"

namespace dlp {
namespace {

using testing::leibniz_det;
using testing::max_diff;

Quaternion random_quaternion(Rng& rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng), g(rng), g(rng)};
}

TEST(Quaternion, HamiltonRelations) {
  Quaternion i(0, 1, 0, 0), j(0, 0, 1, 0), k(0, 0, 0, 1);
  EXPECT_EQ(i * j, k);
  EXPECT_EQ(j * k, i);
  EXPECT_EQ(k * i, j);
  EXPECT_EQ(i * i, Quaternion(-1));
  EXPECT_EQ(i * j * k, Quaternion(-1));
}

TEST(Quaternion, RealPartIsCentral) {
  Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    Quaternion p = random_quaternion(rng), q = random_quaternion(rng);
    EXPECT_NEAR((p * q).re(), (q * p).re(), 1e-12);
  }
}

TEST(Quaternion, BlockRoundTrip) {
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    Quaternion p = random_quaternion(rng), q = random_quaternion(rng);
    Quaternion back = quaternion_from_block(quaternion_block(p) * quaternion_block(q));
    Quaternion pq = p * q;
    EXPECT_NEAR(back.a, pq.a, 1e-12);
    EXPECT_NEAR(back.b, pq.b, 1e-12);
    EXPECT_NEAR(back.c, pq.c, 1e-12);
    EXPECT_NEAR(back.d, pq.d, 1e-12);
  }
}

TEST(TauDet, QuaternionIdentity) {
  EXPECT_DOUBLE_EQ(qdet(Matrix::identity(Field::Quaternion, 1)), 1.0);
}

TEST(TauDet, RealMatrixIsOrdinaryDeterminant) {
  std::vector<double> m{2, 1, 0, 1, 3, 1, 0, 1, 4};
  EXPECT_DOUBLE_EQ(tau_det(m, 3, [](double x) { return x; }), 18.0);
  std::vector<double> n{1, 2, 3, 4, 5, 6, 7, 8, 10};
  EXPECT_NEAR(tau_det(n, 3, [](double x) { return x; }), -3.0, 1e-12);
}

TEST(TauDet, QuaternionTwoByTwo) {
  Quaternion q(1, 0.5, -0.25, 0.75);
  Matrix m = Matrix::from_quaternions({{Quaternion(2), q}, {q.conj(), Quaternion(3)}});
  // ab - |q|^2 = 6 - 1.875
  EXPECT_NEAR(qdet(m), 4.125, 1e-12);
  EXPECT_NEAR(tau_det_re(m), 4.125, 1e-12);
}

TEST(TauDet, BudgetExceeded) {
  std::vector<double> m(13 * 13, 0.0);
  EXPECT_THROW(tau_det(m, 13, [](double x) { return x; }), BudgetError);
}

TEST(TauDet, ZeroColumnGivesZero) {
  Rng rng(3);
  Matrix m = gaussian_matrix(4, 4, Field::Quaternion, rng);
  for (int i = 0; i < 4; ++i) m.set(i, 2, Scalar::quaternion(Quaternion()));
  EXPECT_NEAR(tau_det_re(m), 0.0, 1e-12);
}

TEST(Qdet, DiagonalIsProduct) {
  Matrix m = Matrix::zero(Field::Quaternion, 3, 3);
  m.set(0, 0, Scalar::real(0.5));
  m.set(1, 1, Scalar::real(-2.0));
  m.set(2, 2, Scalar::real(3.0));
  EXPECT_NEAR(qdet(m), -3.0, 1e-12);
  EXPECT_NEAR(qdet_spectral(m), -3.0, 1e-12);
}

TEST(Qdet, SquareIsComplexDeterminant) {
  Rng rng(4);
  for (int t = 0; t < 10; ++t) {
    Matrix k = random_hermitian(5, Field::Quaternion, rng);
    double q = qdet(k);
    double det = leibniz_det(complexify(k)).real();
    EXPECT_NEAR(q * q, det, 1e-9 * std::max(1.0, std::abs(det)));
  }
}

TEST(Qdet, SymplecticInvariance) {
  Rng rng(5);
  for (int t = 0; t < 5; ++t) {
    Matrix d = Matrix::zero(Field::Quaternion, 4, 4);
    double product = 1;
    for (int i = 0; i < 4; ++i) {
      double x = std::uniform_real_distribution<double>(-2, 2)(rng);
      d.set(i, i, Scalar::real(x));
      product *= x;
    }
    Frame u = haar_frame(4, 4, Field::Quaternion, rng);
    Matrix k = u * d * u.adjoint();
    EXPECT_NEAR(qdet(k), product, 1e-9);
    EXPECT_NEAR(qdet_spectral(k), product, 1e-9);
  }
}

TEST(Qdet, SpectralRouteMatchesEnumeration) {
  Rng rng(6);
  for (int d = 1; d <= 6; ++d) {
    Matrix k = random_hermitian(d, Field::Quaternion, rng);
    EXPECT_NEAR(qdet_spectral(k), qdet(k), 1e-9);
  }
}

TEST(Qdet, RejectsNonHermitian) {
  Matrix m = Matrix::from_quaternions({{Quaternion(1), Quaternion(0, 1, 0, 0)}, {Quaternion(0, 1, 0, 0), Quaternion(1)}});
  EXPECT_THROW(qdet(m), DomainError);
}

TEST(Complexify, UnitI) {
  CMatrix c = complexify(Matrix::from_quaternions({{Quaternion(0, 1, 0, 0)}}));
  CMatrix want(2, 2);
  want << 0, -1, 1, 0;
  EXPECT_LT(max_diff(c, want), 1e-15);
}

TEST(Complexify, Identity) {
  EXPECT_LT(max_diff(complexify(Matrix::identity(Field::Quaternion, 3)), CMatrix::Identity(6, 6)), 1e-15);
}

TEST(Complexify, AlgebraMorphism) {
  Rng rng(7);
  Matrix m = gaussian_matrix(3, 3, Field::Quaternion, rng), n = gaussian_matrix(3, 3, Field::Quaternion, rng);
  // Product computed entrywise in quaternions, not through the representation.
  std::vector<std::vector<Quaternion>> prod(3, std::vector<Quaternion>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int l = 0; l < 3; ++l) prod[i][j] += m.quat(i, l) * n.quat(l, j);
  EXPECT_LT(max_diff(complexify(Matrix::from_quaternions(prod)), complexify(m) * complexify(n)), 1e-12);
  EXPECT_LT(max_diff(complexify(m.adjoint()), complexify(m).adjoint()), 1e-15);
}

TEST(Realify, UnitI) {
  CMatrix m(1, 1);
  m << cplx(0, 1);
  Eigen::MatrixXd want(2, 2);
  want << 0, -1, 1, 0;
  EXPECT_LT((realify(m) - want).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((realify(CMatrix::Identity(3, 3)) - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Realify, DeterminantIsModulusSquared) {
  Rng rng(8);
  CMatrix m = gaussian_matrix(4, 4, Field::Complex, rng).rep();
  double want = std::norm(leibniz_det(m));
  EXPECT_NEAR(realify(m).determinant(), want, 1e-10 * std::max(1.0, want));
  CMatrix n = gaussian_matrix(4, 4, Field::Complex, rng).rep();
  EXPECT_LT((realify(m * n) - realify(m) * realify(n)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Fields, ParseAndName) {
  for (Field f : {Field::Real, Field::Complex, Field::Quaternion}) EXPECT_EQ(parse_field(field_name(f)), f);
  EXPECT_THROW(parse_field("octonion"), DomainError);
}

}  // namespace
}  // namespace dlp
