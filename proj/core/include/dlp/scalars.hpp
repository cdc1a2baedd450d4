#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace dlp {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetError : Error {
  using Error::Error;
};
struct NumericError : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};

enum class Field { Real = 0, Complex = 1, Quaternion = 2 };

std::string_view field_name(Field f);
Field parse_field(std::string_view name);

// Number of complex representation rows per field unit.
inline int field_width(Field f) { return f == Field::Quaternion ? 2 : 1; }

struct Quaternion {
  double a = 0, b = 0, c = 0, d = 0;

  Quaternion() = default;
  Quaternion(double a_) : a(a_) {}
  Quaternion(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {}

  double re() const { return a; }
  double norm2() const { return a * a + b * b + c * c + d * d; }
  Quaternion conj() const { return {a, -b, -c, -d}; }

  Quaternion operator+(const Quaternion& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  Quaternion operator-(const Quaternion& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  Quaternion operator-() const { return {-a, -b, -c, -d}; }
  Quaternion operator*(const Quaternion& o) const {
    return {a * o.a - b * o.b - c * o.c - d * o.d, a * o.b + b * o.a + c * o.d - d * o.c,
            a * o.c - b * o.d + c * o.a + d * o.b, a * o.d + b * o.c - c * o.b + d * o.a};
  }
  Quaternion& operator+=(const Quaternion& o) { return *this = *this + o; }
  Quaternion& operator*=(const Quaternion& o) { return *this = *this * o; }
  bool operator==(const Quaternion&) const = default;
};

// 2x2 complex block of q = a + b i + c j + d k, with z = a + d i, w = b + c i:
// [[conj z, -conj w], [w, z]].
Eigen::Matrix2cd quaternion_block(const Quaternion& q);
Quaternion quaternion_from_block(const Eigen::Matrix2cd& m);

// Element of R, C or H. Stored as a quaternion: complex numbers use (a, b) as a + b i.
struct Scalar {
  Field field = Field::Real;
  Quaternion q;

  static Scalar real(double x) { return {Field::Real, Quaternion(x)}; }
  static Scalar complex(cplx z) { return {Field::Complex, Quaternion(z.real(), z.imag(), 0, 0)}; }
  static Scalar quaternion(const Quaternion& q) { return {Field::Quaternion, q}; }

  double re() const { return q.a; }
  double norm2() const { return q.norm2(); }
  Scalar conj() const { return {field, q.conj()}; }
  cplx as_complex() const { return {q.a, q.b}; }
};

// Matrix over a field. The complex representation holds C and R directly
// (R with zero imaginary parts) and H through quaternion_block, so a d x n
// quaternion matrix is stored as a 2d x 2n complex matrix. Products and
// adjoints act on the representation.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, CMatrix rep);
  static Matrix zero(Field f, int rows, int cols);
  static Matrix identity(Field f, int n);
  static Matrix from_real(const RMatrix& m);
  static Matrix from_complex(const CMatrix& m);
  static Matrix from_quaternions(const std::vector<std::vector<Quaternion>>& rows);

  Field field() const { return field_; }
  int rows() const { return static_cast<int>(rep_.rows()) / field_width(field_); }
  int cols() const { return static_cast<int>(rep_.cols()) / field_width(field_); }
  const CMatrix& rep() const { return rep_; }
  CMatrix& rep() { return rep_; }

  Scalar at(int i, int j) const;
  void set(int i, int j, const Scalar& s);
  Quaternion quat(int i, int j) const;

  Matrix adjoint() const { return {field_, rep_.adjoint()}; }
  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(double s) const { return {field_, rep_ * s}; }

  // Rows/columns selected by field-unit index lists.
  Matrix select(const std::vector<int>& rows, const std::vector<int>& cols) const;
  Matrix block(int r0, int c0, int nr, int nc) const;
  Matrix col_range(int c0, int nc) const { return block(0, c0, rows(), nc); }
  // Stacks column blocks side by side.
  static Matrix hcat(const std::vector<Matrix>& parts, Field f, int rows);

  double max_abs() const;
  bool is_hermitian(double tol) const;

 private:
  Field field_ = Field::Real;
  CMatrix rep_;
};

// Sum over permutations of sign times product over cycles of tau(M_{i1 i2} ... M_{ir i1}),
// each cycle rooted at its minimal index. Entries in row-major order.
template <class T, class Tau>
auto tau_det(const std::vector<T>& m, int d, Tau tau) -> decltype(tau(m[0])) {
  using R = decltype(tau(m[0]));
  if (d > 12) throw BudgetError("tau_det: dimension " + std::to_string(d) + " exceeds 12");
  if (d == 0) return R(1);
  std::vector<int> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<char> seen(d);
  R total(0);
  do {
    std::fill(seen.begin(), seen.end(), 0);
    R term(1);
    int cycles = 0;
    for (int i = 0; i < d; ++i) {
      if (seen[i]) continue;
      ++cycles;
      T prod = m[i * d + perm[i]];
      seen[i] = 1;
      for (int j = perm[i]; j != i; j = perm[j]) {
        prod = prod * m[j * d + perm[j]];
        seen[j] = 1;
      }
      term = term * tau(prod);
    }
    if ((d - cycles) % 2) term = -term;
    total = total + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// tau_det with tau = Re for quaternion matrices and tau = id otherwise (real part returned).
double tau_det_re(const Matrix& m);

// Moore determinant of a quaternion Hermitian matrix by permutation enumeration.
double qdet(const Matrix& k);
// Same value through the paired spectrum of the complex representation; any size.
double qdet_spectral(const Matrix& k);

CMatrix complexify(const Matrix& quaternion_matrix);
RMatrix realify(const CMatrix& m);

// Hermiticity check with tolerance 1e-9 (1 + max|K|) followed by symmetrization.
Matrix hermitian_checked(const Matrix& k);

}  // namespace dlp
