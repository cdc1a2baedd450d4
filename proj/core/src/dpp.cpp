#include "dlp/dpp.hpp"

namespace dlp {

namespace {

constexpr int kEnumerationBudget = 20;

double density_of(const Matrix& k, Subset s) {
  int d = k.rows();
  if (k.field() == Field::Quaternion) {
    // (-1)^{|I^c|} qdet(K - P^{I^c}).
    Matrix a = k;
    int out = 0;
    for (int i = 0; i < d; ++i)
      if (!(s >> i & 1)) {
        a.rep().block<2, 2>(2 * i, 2 * i) -= Eigen::Matrix2cd::Identity();
        ++out;
      }
    double v = hermitian_det(a);
    return out % 2 ? -v : v;
  }
  if (d == 0) return 1.0;
  // det(K P^I + (1 - K) P^{I^c}): columns of K on I, of 1 - K elsewhere.
  CMatrix a(d, d);
  for (int j = 0; j < d; ++j) {
    if (s >> j & 1) {
      a.col(j) = k.rep().col(j);
    } else {
      a.col(j) = -k.rep().col(j);
      a(j, j) += 1.0;
    }
  }
  return Eigen::PartialPivLU<CMatrix>(a).determinant().real();
}

template <class M>
std::vector<char> recursive_core(M a, Rng& rng) {
  using S = typename M::Scalar;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int d = static_cast<int>(a.rows());
  std::vector<char> out(d, 0);
  for (int j = 0; j < d; ++j) {
    double p = std::real(a(j, j));
    if (p < -1e-7 || p > 1 + 1e-7) throw NumericError("sample_recursive: conditional kernel left [0, 1]");
    bool take;
    if (p <= 1e-9) {
      take = false;
    } else if (p >= 1 - 1e-9) {
      take = true;
    } else {
      take = unif(rng) < p;
    }
    out[j] = take;
    int m = d - j - 1;
    if (m == 0) break;
    S scale = take ? S(-1.0 / p) : S(1.0 / (1.0 - p));
    a.bottomRightCorner(m, m).noalias() += scale * a.col(j).tail(m) * a.row(j).tail(m);
  }
  return out;
}

}  // namespace

std::vector<int> subset_indices(Subset s, int d) {
  std::vector<int> idx;
  for (int i = 0; i < d; ++i)
    if (s >> i & 1) idx.push_back(i);
  return idx;
}

double incidence_prob(const Kernel& k, Subset j) {
  auto idx = subset_indices(j, k.dim());
  if (idx.empty()) return 1.0;
  return hermitian_det(k.matrix.select(idx, idx));
}

double subset_density(const Kernel& k, Subset i) { return density_of(k.matrix, i); }

std::vector<double> incidence_table(const Kernel& k) {
  if (k.dim() > kEnumerationBudget) throw BudgetError("incidence table: d exceeds 20");
  std::vector<double> t(Subset(1) << k.dim());
  for (Subset s = 0; s < t.size(); ++s) t[s] = incidence_prob(k, s);
  return t;
}

std::vector<double> density_table(const Kernel& k) {
  if (k.dim() > kEnumerationBudget) throw BudgetError("density table: d exceeds 20");
  std::vector<double> t(Subset(1) << k.dim());
  for (Subset s = 0; s < t.size(); ++s) t[s] = density_of(k.matrix, s);
  return t;
}

Subset sample_recursive(const Kernel& k, Rng& rng) { return sample_recursive(k.matrix, rng); }

Subset sample_recursive(const Matrix& k, Rng& rng) {
  if (k.rows() > 64) throw BudgetError("sample_recursive: subsets are limited to 64 coordinates");
  auto ind = sample_recursive_indicator(k, rng);
  Subset s = 0;
  for (size_t i = 0; i < ind.size(); ++i)
    if (ind[i]) s |= Subset(1) << i;
  return s;
}

std::vector<char> sample_recursive_indicator(const Matrix& k, Rng& rng) {
  if (k.field() == Field::Quaternion) throw DomainError("sample_recursive: real or complex kernels only");
  if (k.field() == Field::Real) return recursive_core<RMatrix>(k.rep().real(), rng);
  return recursive_core<CMatrix>(k.rep(), rng);
}

Subset draw_from_table(const std::vector<double>& table, Rng& rng) {
  double sum = 0;
  for (double p : table) sum += std::max(p, 0.0);
  double u = std::uniform_real_distribution<double>(0.0, sum)(rng);
  double acc = 0;
  Subset last = 0;
  for (Subset s = 0; s < table.size(); ++s) {
    if (table[s] <= 0) continue;
    acc += table[s];
    last = s;
    if (u < acc) return s;
  }
  return last;
}

Subset sample_enumerated(const Kernel& k, Rng& rng) { return draw_from_table(density_table(k), rng); }

Subset sample_enumerated(const Matrix& k, Rng& rng) {
  if (k.rows() > kEnumerationBudget) throw BudgetError("sample_enumerated: d exceeds 20");
  std::vector<double> t(Subset(1) << k.rows());
  for (Subset s = 0; s < t.size(); ++s) t[s] = density_of(k, s);
  return draw_from_table(t, rng);
}

std::vector<double> mobius_invert(const std::vector<double>& incidence, int d) {
  if (incidence.size() != (size_t(1) << d)) throw DomainError("mobius_invert: table must have 2^d entries");
  std::vector<double> f = incidence;
  for (int i = 0; i < d; ++i)
    for (Subset s = 0; s < f.size(); ++s)
      if (!(s >> i & 1)) f[s] -= f[s | (Subset(1) << i)];
  return f;
}

std::vector<double> incidence_transform(const std::vector<double>& law, int d) {
  if (law.size() != (size_t(1) << d)) throw DomainError("incidence_transform: table must have 2^d entries");
  std::vector<double> f = law;
  for (int i = 0; i < d; ++i)
    for (Subset s = 0; s < f.size(); ++s)
      if (!(s >> i & 1)) f[s] += f[s | (Subset(1) << i)];
  return f;
}

double multiset_minor(const Matrix& k, const std::vector<int>& idx) {
  if (idx.empty()) return 1.0;
  return tau_det_re(k.select(idx, idx));
}

}  // namespace dlp
