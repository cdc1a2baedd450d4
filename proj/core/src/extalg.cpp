#include "dlp/extalg.hpp"

#include <Eigen/LU>

namespace dlp {

namespace {

void check_budget(int d, Field f) {
  if (f == Field::Quaternion) throw DomainError("exterior algebra is defined over R and C only");
  if (d > kExteriorBudget) throw BudgetError("exterior algebra: d exceeds 14");
}

std::vector<std::vector<std::uint64_t>> subsets_by_size(int d) {
  std::vector<std::vector<std::uint64_t>> out(d + 1);
  for (std::uint64_t s = 0; s < (std::uint64_t(1) << d); ++s) out[__builtin_popcountll(s)].push_back(s);
  return out;
}

}  // namespace

ExteriorOperator wedge_operator(const Matrix& a) {
  int d = a.rows();
  check_budget(d, a.field());
  if (a.cols() != d) throw DomainError("wedge_operator: square matrix expected");
  std::uint64_t n = std::uint64_t(1) << d;
  ExteriorOperator out{a.field(), d, CMatrix::Zero(n, n)};
  CMatrix& w = out.m;
  const CMatrix& r = a.rep();
  w(0, 0) = 1.0;
  auto by_size = subsets_by_size(d);
  // Laplace expansion of det a^I_J along the smallest row of I.
  for (int k = 1; k <= d; ++k)
    for (std::uint64_t i : by_size[k]) {
      int row = __builtin_ctzll(i);
      std::uint64_t rest = i & (i - 1);
      for (std::uint64_t j : by_size[k]) {
        cplx acc = 0;
        int pos = 0;
        for (std::uint64_t bits = j; bits; bits &= bits - 1, ++pos) {
          int col = __builtin_ctzll(bits);
          cplx term = r(row, col) * w(rest, j & ~(std::uint64_t(1) << col));
          acc += pos % 2 ? -term : term;
        }
        w(i, j) = acc;
      }
    }
  return out;
}

ExteriorVector plucker(const Frame& f) {
  int d = f.rows(), n = f.cols();
  check_budget(d, f.field());
  ExteriorVector v = ExteriorVector::Zero(std::int64_t(1) << d);
  for (std::uint64_t s = 0; s < (std::uint64_t(1) << d); ++s) {
    if (__builtin_popcountll(s) != n) continue;
    if (n == 0) {
      v[s] = 1.0;
      continue;
    }
    CMatrix sub(n, n);
    int r = 0;
    for (std::uint64_t bits = s; bits; bits &= bits - 1) sub.row(r++) = f.rep().row(__builtin_ctzll(bits));
    v[s] = Eigen::PartialPivLU<CMatrix>(sub).determinant();
  }
  return v;
}

int hodge_sign(std::uint64_t subset) {
  int k = __builtin_popcountll(subset);
  long e = k * (k + 1) / 2;
  for (std::uint64_t bits = subset; bits; bits &= bits - 1) e += __builtin_ctzll(bits) + 1;
  return e % 2 ? -1 : 1;
}

ExteriorOperator adjugate(const ExteriorOperator& f) {
  check_budget(f.d, f.field);
  std::uint64_t n = std::uint64_t(1) << f.d, full = n - 1;
  ExteriorOperator out{f.field, f.d, CMatrix(n, n)};
  for (std::uint64_t i = 0; i < n; ++i)
    for (std::uint64_t j = 0; j < n; ++j)
      out.m(i, j) = double(hodge_sign(i) * hodge_sign(j)) * f.m(full & ~j, full & ~i);
  return out;
}

ExteriorOperator density_operator_adjugate(const Kernel& k) {
  Matrix one_minus = Matrix::identity(k.field(), k.dim()) - k.matrix;
  ExteriorOperator a = adjugate(wedge_operator(one_minus));
  ExteriorOperator w = wedge_operator(k.matrix);
  return {k.field(), k.dim(), a.m * w.m};
}

ExteriorOperator density_operator_spectral(const Kernel& k) {
  check_budget(k.dim(), k.field());
  Eigensystem es = hermitian_eig(k.matrix);
  int d = k.dim();
  std::uint64_t n = std::uint64_t(1) << d;
  RVector diag(n);
  for (std::uint64_t s = 0; s < n; ++s) {
    double p = 1.0;
    for (int i = 0; i < d; ++i) {
      double l = std::clamp(es.values[i], 0.0, 1.0);
      p *= (s >> i & 1) ? l : 1.0 - l;
    }
    diag[s] = p;
  }
  CMatrix u = wedge_operator(es.vectors).m;
  return {k.field(), d, u * diag.cast<cplx>().asDiagonal() * u.adjoint()};
}

ExteriorOperator density_operator(const Kernel& k) {
  check_budget(k.dim(), k.field());
  Eigensystem es = hermitian_eig(k.matrix);
  bool near_one = es.values.size() && es.values.maxCoeff() > 1.0 - 1e-8;
  return near_one ? density_operator_spectral(k) : density_operator_adjugate(k);
}

ExteriorOperator strata_projector(const SplitSpace& space, const Stratum& nbar) {
  int d = space.dim();
  check_budget(d, space.field());
  std::uint64_t n = std::uint64_t(1) << d;
  ExteriorOperator out{space.field(), d, CMatrix::Zero(n, n)};
  for (std::uint64_t s = 0; s < n; ++s) {
    bool match = true;
    for (int b = 0; b < space.blocks_count() && match; ++b) {
      std::uint64_t mask = ((std::uint64_t(1) << space.blocks()[b]) - 1) << space.offset(b);
      match = __builtin_popcountll(s & mask) == nbar[b];
    }
    if (match) out.m(s, s) = 1.0;
  }
  return out;
}

double dlp_prob_trace(const Kernel& k, const AdaptedSubspace& q) {
  ExteriorVector w = plucker(join_frame(q));
  ExteriorOperator rho = density_operator(k);
  return (w.adjoint() * rho.m * w)(0, 0).real();
}

double trace_product(const ExteriorOperator& a, const ExteriorOperator& b) { return (a.m * b.m).trace().real(); }

std::vector<double> strata_masses_extalg(const Kernel& k) {
  const SplitSpace& space = k.space;
  ExteriorOperator rho = density_operator(k);
  std::vector<double> out(enumerate_strata(space).size(), 0.0);
  for (std::uint64_t s = 0; s < (std::uint64_t(1) << space.dim()); ++s) {
    Stratum nbar(space.blocks_count());
    for (int b = 0; b < space.blocks_count(); ++b) {
      std::uint64_t mask = ((std::uint64_t(1) << space.blocks()[b]) - 1) << space.offset(b);
      nbar[b] = __builtin_popcountll(s & mask);
    }
    out[stratum_index(space, nbar)] += rho.m(s, s).real();
  }
  return out;
}

}  // namespace dlp
