#include "dlp/splitspace.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace dlp {

SplitSpace::SplitSpace(Field f, std::vector<int> block_dims) : field_(f), dims_(std::move(block_dims)) {
  if (dims_.empty()) throw DomainError("a splitting needs at least one block");
  for (int b : dims_) {
    if (b <= 0) throw DomainError("block dimensions must be positive");
    offsets_.push_back(total_);
    total_ += b;
  }
}

int SplitSpace::block_of(int coordinate) const {
  for (int i = blocks_count() - 1; i >= 0; --i)
    if (coordinate >= offsets_[i]) return i;
  throw DomainError("coordinate out of range");
}

Frame SplitSpace::block_sum_frame(const std::vector<int>& blocks) const {
  std::vector<int> cols;
  for (int b : blocks)
    for (int j = 0; j < dims_[b]; ++j) cols.push_back(offsets_[b] + j);
  std::vector<int> rows(total_);
  for (int i = 0; i < total_; ++i) rows[i] = i;
  return Matrix::identity(field_, total_).select(rows, cols);
}

Stratum split_dimension(const AdaptedSubspace& q) {
  Stratum n;
  for (const auto& f : q.block_frames) n.push_back(f.cols());
  return n;
}

int total(const Stratum& n) {
  int t = 0;
  for (int x : n) t += x;
  return t;
}

AdaptedSubspace zero_subspace(const SplitSpace& space) {
  AdaptedSubspace q{space, {}};
  for (int b : space.blocks()) q.block_frames.push_back(Matrix::zero(space.field(), b, 0));
  return q;
}

AdaptedSubspace full_subspace(const SplitSpace& space) {
  AdaptedSubspace q{space, {}};
  for (int b : space.blocks()) q.block_frames.push_back(Matrix::identity(space.field(), b));
  return q;
}

AdaptedSubspace sample_uniform_adapted(const SplitSpace& space, const Stratum& n, Rng& rng) {
  if (static_cast<int>(n.size()) != space.blocks_count()) throw DomainError("stratum length mismatch");
  AdaptedSubspace q{space, {}};
  for (int i = 0; i < space.blocks_count(); ++i) {
    if (n[i] < 0 || n[i] > space.blocks()[i]) throw DomainError("stratum out of range");
    q.block_frames.push_back(haar_frame(space.blocks()[i], n[i], space.field(), rng));
  }
  return q;
}

AdaptedSubspace orthocomplement(const AdaptedSubspace& q) {
  AdaptedSubspace out{q.space, {}};
  for (const auto& f : q.block_frames) out.block_frames.push_back(complement_frame(f));
  return out;
}

Frame join_frame(const AdaptedSubspace& q) {
  const SplitSpace& s = q.space;
  int w = field_width(s.field());
  int n = total(split_dimension(q));
  CMatrix rep = CMatrix::Zero(s.dim() * w, n * w);
  int col = 0;
  for (int i = 0; i < s.blocks_count(); ++i) {
    const Frame& f = q.block_frames[i];
    rep.block(s.offset(i) * w, col * w, f.rep().rows(), f.rep().cols()) = f.rep();
    col += f.cols();
  }
  return {s.field(), std::move(rep)};
}

AdaptedSubspace coordinate_subspace(const SplitSpace& space, std::uint64_t mask) {
  AdaptedSubspace q{space, {}};
  for (int i = 0; i < space.blocks_count(); ++i) {
    int di = space.blocks()[i];
    std::vector<int> rows(di), cols;
    for (int j = 0; j < di; ++j) {
      rows[j] = j;
      if (mask >> (space.offset(i) + j) & 1) cols.push_back(j);
    }
    q.block_frames.push_back(Matrix::identity(space.field(), di).select(rows, cols));
  }
  return q;
}

bool is_valid(const AdaptedSubspace& q, double tol) {
  if (static_cast<int>(q.block_frames.size()) != q.space.blocks_count()) return false;
  for (int i = 0; i < q.space.blocks_count(); ++i) {
    const Frame& f = q.block_frames[i];
    if (f.field() != q.space.field() || f.rows() != q.space.blocks()[i]) return false;
    if (!is_orthonormal(f, tol)) return false;
  }
  return true;
}

std::vector<Stratum> enumerate_strata(const SplitSpace& space) {
  std::vector<Stratum> out;
  Stratum n(space.blocks_count(), 0);
  while (true) {
    out.push_back(n);
    int i = space.blocks_count() - 1;
    while (i >= 0 && n[i] == space.blocks()[i]) n[i--] = 0;
    if (i < 0) break;
    ++n[i];
  }
  return out;
}

int stratum_index(const SplitSpace& space, const Stratum& n) {
  int idx = 0;
  for (int i = 0; i < space.blocks_count(); ++i) idx = idx * (space.blocks()[i] + 1) + n[i];
  return idx;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

double stratum_volume(const SplitSpace& space, const Stratum& n) {
  double v = 1.0;
  for (int i = 0; i < space.blocks_count(); ++i) v *= binomial(space.blocks()[i], n[i]);
  return v;
}

Kernel::Kernel(SplitSpace s, const Matrix& m) : space(std::move(s)) {
  if (m.field() != space.field()) throw DomainError("kernel field does not match the space");
  if (m.rows() != space.dim() || m.cols() != space.dim()) throw DomainError("kernel size does not match the space");
  matrix = hermitian_checked(m);
  Eigensystem es = hermitian_eig(matrix);
  bool clamp = false;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    double l = es.values[i];
    if (l < -1e-9 || l > 1 + 1e-9) throw DomainError("kernel spectrum is outside [0, 1]");
    if (l < 0 || l > 1) clamp = true;
  }
  if (clamp) {
    int w = field_width(space.field());
    RVector diag(es.values.size() * w);
    for (Eigen::Index i = 0; i < es.values.size(); ++i)
      diag.segment(i * w, w).setConstant(std::clamp(es.values[i], 0.0, 1.0));
    matrix.rep() = es.vectors.rep() * diag.cast<cplx>().asDiagonal() * es.vectors.rep().adjoint();
    matrix = hermitian_checked(matrix);
  }
}

Kernel Kernel::trusted(SplitSpace s, const Matrix& m) {
  Kernel k;
  k.space = std::move(s);
  k.matrix = m;
  k.matrix.rep() = (m.rep() + m.rep().adjoint()) / 2.0;
  if (m.field() == Field::Real) k.matrix.rep() = k.matrix.rep().real().cast<cplx>();
  return k;
}

std::pair<SplitSpace, Kernel> restrict_scalars(const SplitSpace& space, const Kernel& k) {
  std::vector<int> doubled;
  for (int b : space.blocks()) doubled.push_back(2 * b);
  if (space.field() == Field::Complex) {
    SplitSpace s(Field::Real, doubled);
    return {s, Kernel::trusted(s, Matrix::from_real(realify(k.matrix.rep())))};
  }
  if (space.field() == Field::Quaternion) {
    SplitSpace s(Field::Complex, doubled);
    return {s, Kernel::trusted(s, Matrix::from_complex(complexify(k.matrix)))};
  }
  throw DomainError("restrict_scalars: real spaces have no smaller field");
}

}  // namespace dlp
