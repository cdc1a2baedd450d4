#include "dlp/scalars.hpp"

#include <Eigen/Eigenvalues>

namespace dlp {

std::string_view field_name(Field f) {
  switch (f) {
    case Field::Real: return "real";
    case Field::Complex: return "complex";
    case Field::Quaternion: return "quaternion";
  }
  return "?";
}

Field parse_field(std::string_view name) {
  if (name == "real") return Field::Real;
  if (name == "complex") return Field::Complex;
  if (name == "quaternion") return Field::Quaternion;
  throw DomainError("unknown field '" + std::string(name) + "'");
}

Eigen::Matrix2cd quaternion_block(const Quaternion& q) {
  cplx z(q.a, q.d), w(q.b, q.c);
  Eigen::Matrix2cd m;
  m << std::conj(z), -std::conj(w), w, z;
  return m;
}

Quaternion quaternion_from_block(const Eigen::Matrix2cd& m) {
  cplx z = m(1, 1), w = m(1, 0);
  return {z.real(), w.real(), w.imag(), z.imag()};
}

Matrix::Matrix(Field f, CMatrix rep) : field_(f), rep_(std::move(rep)) {
  int w = field_width(f);
  if (rep_.rows() % w || rep_.cols() % w) throw DomainError("quaternion representation must have even shape");
}

Matrix Matrix::zero(Field f, int rows, int cols) {
  int w = field_width(f);
  return {f, CMatrix::Zero(rows * w, cols * w)};
}

Matrix Matrix::identity(Field f, int n) {
  int w = field_width(f);
  return {f, CMatrix::Identity(n * w, n * w)};
}

Matrix Matrix::from_real(const RMatrix& m) { return {Field::Real, m.cast<cplx>()}; }

Matrix Matrix::from_complex(const CMatrix& m) { return {Field::Complex, m}; }

Matrix Matrix::from_quaternions(const std::vector<std::vector<Quaternion>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  Matrix out = zero(Field::Quaternion, r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw DomainError("ragged quaternion matrix");
    for (int j = 0; j < c; ++j) out.rep_.block<2, 2>(2 * i, 2 * j) = quaternion_block(rows[i][j]);
  }
  return out;
}

Quaternion Matrix::quat(int i, int j) const {
  if (field_ == Field::Quaternion) return quaternion_from_block(rep_.block<2, 2>(2 * i, 2 * j));
  cplx z = rep_(i, j);
  return {z.real(), z.imag(), 0, 0};
}

Scalar Matrix::at(int i, int j) const { return {field_, quat(i, j)}; }

void Matrix::set(int i, int j, const Scalar& s) {
  switch (field_) {
    case Field::Real: rep_(i, j) = s.q.a; break;
    case Field::Complex: rep_(i, j) = cplx(s.q.a, s.q.b); break;
    case Field::Quaternion: rep_.block<2, 2>(2 * i, 2 * j) = quaternion_block(s.q); break;
  }
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (field_ != o.field_) throw DomainError("field mismatch in product");
  return {field_, rep_ * o.rep_};
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (field_ != o.field_) throw DomainError("field mismatch in sum");
  return {field_, rep_ + o.rep_};
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (field_ != o.field_) throw DomainError("field mismatch in difference");
  return {field_, rep_ - o.rep_};
}

Matrix Matrix::select(const std::vector<int>& r, const std::vector<int>& c) const {
  int w = field_width(field_);
  CMatrix out(r.size() * w, c.size() * w);
  for (size_t i = 0; i < r.size(); ++i)
    for (size_t j = 0; j < c.size(); ++j)
      out.block(i * w, j * w, w, w) = rep_.block(r[i] * w, c[j] * w, w, w);
  return {field_, std::move(out)};
}

Matrix Matrix::block(int r0, int c0, int nr, int nc) const {
  int w = field_width(field_);
  return {field_, rep_.block(r0 * w, c0 * w, nr * w, nc * w)};
}

Matrix Matrix::hcat(const std::vector<Matrix>& parts, Field f, int rows) {
  int w = field_width(f);
  Eigen::Index total = 0;
  for (const auto& p : parts) total += p.rep_.cols();
  CMatrix out(rows * w, total);
  Eigen::Index at = 0;
  for (const auto& p : parts) {
    if (p.field_ != f || p.rep_.rows() != rows * w) throw DomainError("hcat shape mismatch");
    out.middleCols(at, p.rep_.cols()) = p.rep_;
    at += p.rep_.cols();
  }
  return {f, std::move(out)};
}

double Matrix::max_abs() const { return rep_.size() ? rep_.cwiseAbs().maxCoeff() : 0.0; }

bool Matrix::is_hermitian(double tol) const {
  return rep_.rows() == rep_.cols() && (rep_ - rep_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double tau_det_re(const Matrix& m) {
  int d = m.rows();
  if (m.cols() != d) throw DomainError("tau_det of a non-square matrix");
  std::vector<Quaternion> e(static_cast<size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) e[i * d + j] = m.quat(i, j);
  if (m.field() == Field::Quaternion) return tau_det(e, d, [](const Quaternion& q) { return q.re(); });
  // Complex entries commute, so the identity trace gives the ordinary determinant.
  std::vector<cplx> z(e.size());
  for (size_t i = 0; i < e.size(); ++i) z[i] = {e[i].a, e[i].b};
  return tau_det(z, d, [](const cplx& x) { return x; }).real();
}

Matrix hermitian_checked(const Matrix& k) {
  if (k.rows() != k.cols()) throw DomainError("matrix is not square");
  double tol = 1e-9 * (1.0 + k.max_abs());
  if (!k.is_hermitian(tol)) throw DomainError("matrix is not Hermitian");
  Matrix out = k;
  out.rep() = (k.rep() + k.rep().adjoint()) / 2.0;
  if (k.field() == Field::Real) out.rep() = out.rep().real().cast<cplx>();
  return out;
}

double qdet(const Matrix& k) {
  if (k.field() != Field::Quaternion) throw DomainError("qdet expects a quaternion matrix");
  return tau_det_re(hermitian_checked(k));
}

double qdet_spectral(const Matrix& k) {
  if (k.field() != Field::Quaternion) throw DomainError("qdet expects a quaternion matrix");
  Matrix h = hermitian_checked(k);
  if (h.rows() == 0) return 1.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.rep(), Eigen::EigenvaluesOnly);
  const RVector& ev = es.eigenvalues();
  double p = 1.0;
  for (Eigen::Index i = 0; i < ev.size(); i += 2) p *= 0.5 * (ev[i] + ev[i + 1]);
  return p;
}

CMatrix complexify(const Matrix& m) {
  if (m.field() != Field::Quaternion) throw DomainError("complexify expects a quaternion matrix");
  return m.rep();
}

RMatrix realify(const CMatrix& m) {
  RMatrix out(2 * m.rows(), 2 * m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      double x = m(i, j).real(), y = m(i, j).imag();
      out(2 * i, 2 * j) = x;
      out(2 * i, 2 * j + 1) = -y;
      out(2 * i + 1, 2 * j) = y;
      out(2 * i + 1, 2 * j + 1) = x;
    }
  return out;
}

}  // namespace dlp
