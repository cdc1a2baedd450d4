#include "dlp/linalg.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace dlp {

namespace {

// Second complex column of a quaternion column given its first one.
CVector structure_map(const CVector& u) {
  CVector t(u.size());
  for (Eigen::Index i = 0; i + 1 < u.size(); i += 2) {
    t[i] = -std::conj(u[i + 1]);
    t[i + 1] = std::conj(u[i]);
  }
  return t;
}

}  // namespace

Frame gram_schmidt(const Matrix& raw) {
  int w = field_width(raw.field());
  const CMatrix& a = raw.rep();
  CMatrix q(a.rows(), a.cols());
  double largest = 0;
  for (Eigen::Index j = 0; j < a.cols(); j += w) largest = std::max(largest, a.col(j).norm());
  for (Eigen::Index j = 0; j < a.cols(); j += w) {
    CMatrix v = a.middleCols(j, w);
    for (int pass = 0; pass < 2; ++pass) {
      if (j == 0) break;
      auto u = q.leftCols(j);
      v -= u * (u.adjoint() * v);
    }
    double nrm = v.col(0).norm();
    if (!(nrm > 1e-10 * largest) || largest == 0)
      throw NumericError("gram_schmidt: columns are linearly dependent");
    q.middleCols(j, w) = v / nrm;
  }
  return {raw.field(), std::move(q)};
}

Matrix gaussian_matrix(int rows, int cols, Field f, Rng& rng) {
  std::normal_distribution<double> g;
  Matrix m = Matrix::zero(f, rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      switch (f) {
        case Field::Real: m.set(i, j, Scalar::real(g(rng))); break;
        case Field::Complex: {
          double x = g(rng), y = g(rng);
          m.set(i, j, Scalar::complex({x, y}));
          break;
        }
        case Field::Quaternion: {
          double a = g(rng), b = g(rng), c = g(rng), d = g(rng);
          m.set(i, j, Scalar::quaternion({a, b, c, d}));
          break;
        }
      }
    }
  return m;
}

Frame haar_frame(int d, int n, Field f, Rng& rng) {
  if (n < 0 || n > d) throw DomainError("haar_frame: need 0 <= n <= d");
  if (n == 0) return Matrix::zero(f, d, 0);
  // Gram-Schmidt leaves a positive real diagonal in the triangular factor,
  // which is the normalization that makes the result Haar distributed.
  return gram_schmidt(gaussian_matrix(d, n, f, rng));
}

bool is_orthonormal(const Frame& f, double tol) {
  const CMatrix& r = f.rep();
  if (r.cols() == 0) return true;
  return (r.adjoint() * r - CMatrix::Identity(r.cols(), r.cols())).cwiseAbs().maxCoeff() <= tol;
}

Matrix projection(const Frame& f) { return {f.field(), f.rep() * f.rep().adjoint()}; }

Frame complement_frame(const Frame& f) {
  int d = f.rows(), n = f.cols();
  if (n == 0) return Matrix::identity(f.field(), d);
  if (n == d) return Matrix::zero(f.field(), d, 0);
  Matrix perp = Matrix::identity(f.field(), d) - projection(f);
  Eigensystem es = hermitian_eig(perp);
  return es.vectors.col_range(n, d - n);
}

Matrix compress(const Matrix& a, const Frame& q, const Frame& r) { return q.adjoint() * a * r; }

double cos2(const Frame& f, const Frame& g) {
  if (f.rows() != g.rows()) throw DomainError("cos2: ambient dimensions differ");
  if (f.cols() > g.cols()) return 0.0;
  if (f.cols() == 0) return 1.0;
  // det((Pi_G)^F_F) = det(A* A) with A = G* F.
  Matrix a = g.adjoint() * f;
  double v = hermitian_det(a.adjoint() * a);
  return std::clamp(v, 0.0, 1.0);
}

Eigensystem hermitian_eig(const Matrix& k) {
  Matrix h = hermitian_checked(k);
  int d = h.rows();
  Eigensystem out;
  if (d == 0) {
    out.values = RVector(0);
    out.vectors = Matrix::zero(h.field(), 0, 0);
    return out;
  }
  if (h.field() == Field::Real) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(h.rep().real());
    if (es.info() != Eigen::Success) throw NumericError("hermitian_eig: solver failed");
    out.values = es.eigenvalues();
    out.vectors = Matrix::from_real(es.eigenvectors());
  } else if (h.field() == Field::Complex) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h.rep());
    if (es.info() != Eigen::Success) throw NumericError("hermitian_eig: solver failed");
    out.values = es.eigenvalues();
    out.vectors = Matrix::from_complex(es.eigenvectors());
  } else {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h.rep());
    if (es.info() != Eigen::Success) throw NumericError("hermitian_eig: solver failed");
    // Eigenvalues of the representation come in pairs {u, Tu}; keep one
    // quaternion column per pair by greedy orthogonalization.
    CMatrix u(2 * d, 2 * d);
    out.values.resize(d);
    int m = 0;
    for (int c = 0; c < 2 * d && m < d; ++c) {
      CVector v = es.eigenvectors().col(c);
      for (int pass = 0; pass < 2 && m > 0; ++pass) v -= u.leftCols(2 * m) * (u.leftCols(2 * m).adjoint() * v);
      double nrm = v.norm();
      if (nrm < 0.5) continue;
      v /= nrm;
      u.col(2 * m) = v;
      u.col(2 * m + 1) = structure_map(v);
      out.values[m] = (v.adjoint() * h.rep() * v)(0, 0).real();
      ++m;
    }
    if (m != d) throw NumericError("hermitian_eig: quaternion pairing failed");
    out.vectors = Matrix(Field::Quaternion, std::move(u));
  }
  int w = field_width(h.field());
  RVector diag(d * w);
  for (int i = 0; i < d; ++i) diag.segment(i * w, w).setConstant(out.values[i]);
  CMatrix recon = out.vectors.rep() * diag.cast<cplx>().asDiagonal() * out.vectors.rep().adjoint();
  if ((recon - h.rep()).cwiseAbs().maxCoeff() > 1e-8 * (1.0 + h.max_abs()))
    throw NumericError("hermitian_eig: reconstruction residual too large");
  return out;
}

Matrix oblique_projector(const Frame& q, const Frame& h) {
  if (q.cols() != h.cols()) throw DomainError("oblique_projector: dimensions differ");
  if (q.cols() == 0) return Matrix::zero(q.field(), q.rows(), q.rows());
  CMatrix m = h.rep().adjoint() * q.rep();
  Eigen::PartialPivLU<CMatrix> lu(m);
  if (std::abs(lu.determinant()) <= 1e-12) throw NumericError("oblique_projector: Q is not transversal to H^perp");
  return {q.field(), q.rep() * lu.solve(h.rep().adjoint())};
}

int intersection_dim(const Frame& f, const Frame& w, double tol) {
  int n = f.cols() + w.cols();
  if (f.cols() == 0 || w.cols() == 0) return 0;
  CMatrix joined(f.rep().rows(), f.rep().cols() + w.rep().cols());
  joined << f.rep(), w.rep();
  Eigen::JacobiSVD<CMatrix> svd(joined);
  const RVector& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > tol * s[0]) ++rank;
  return n - rank / field_width(f.field());
}

cplx field_det(const Matrix& m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
  if (m.rows() == 0) return 1.0;
  if (m.field() == Field::Quaternion) return hermitian_det(m);
  return Eigen::PartialPivLU<CMatrix>(m.rep()).determinant();
}

double hermitian_det(const Matrix& m) {
  if (m.field() != Field::Quaternion) return field_det(m).real();
  if (m.rows() <= 7) return qdet(m);
  return qdet_spectral(m);
}

double schur_density(const Matrix& k, const Frame& q) {
  int d = k.rows();
  int perp = d - q.cols();
  Matrix a = k - (Matrix::identity(k.field(), d) - projection(q));
  double v = hermitian_det(a);
  return perp % 2 ? -v : v;
}

double schur_density_direct(const Matrix& k, const Frame& q) {
  if (k.field() == Field::Quaternion) throw DomainError("schur_density_direct: real or complex only");
  Matrix id = Matrix::identity(k.field(), k.rows());
  Matrix pq = projection(q);
  return field_det(k * pq + (id - k) * (id - pq)).real();
}

double projection_distance(const Frame& f, const Frame& g) {
  return (f.rep() * f.rep().adjoint() - g.rep() * g.rep().adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace dlp
