#pragma once

#include <cstdint>
#include <vector>

#include "dlp/linalg.hpp"

namespace dlp {

using Stratum = std::vector<int>;

// F^d with blocks given by consecutive coordinate ranges.
class SplitSpace {
 public:
  SplitSpace() = default;
  SplitSpace(Field f, std::vector<int> block_dims);
  static SplitSpace lines(Field f, int d) { return {f, std::vector<int>(d, 1)}; }

  Field field() const { return field_; }
  const std::vector<int>& blocks() const { return dims_; }
  int blocks_count() const { return static_cast<int>(dims_.size()); }
  int dim() const { return total_; }
  int offset(int block) const { return offsets_[block]; }
  int block_of(int coordinate) const;
  // Coordinate frame of the sum of the given blocks.
  Frame block_sum_frame(const std::vector<int>& blocks) const;
  bool operator==(const SplitSpace& o) const { return field_ == o.field_ && dims_ == o.dims_; }

 private:
  Field field_ = Field::Real;
  std::vector<int> dims_;
  std::vector<int> offsets_;
  int total_ = 0;
};

struct AdaptedSubspace {
  SplitSpace space;
  std::vector<Frame> block_frames;  // i-th is d_i x n_i
};

Stratum split_dimension(const AdaptedSubspace& q);
int total(const Stratum& n);
AdaptedSubspace zero_subspace(const SplitSpace& space);
AdaptedSubspace full_subspace(const SplitSpace& space);
AdaptedSubspace sample_uniform_adapted(const SplitSpace& space, const Stratum& n, Rng& rng);
AdaptedSubspace orthocomplement(const AdaptedSubspace& q);
// d x |n| frame with each block frame placed in its coordinate range.
Frame join_frame(const AdaptedSubspace& q);
// Coordinate subspace spanned by the basis vectors in the bitmask.
AdaptedSubspace coordinate_subspace(const SplitSpace& space, std::uint64_t mask);
bool is_valid(const AdaptedSubspace& q, double tol = 1e-10);

// All strata n <= d in lexicographic order, and the index of a stratum in that list.
std::vector<Stratum> enumerate_strata(const SplitSpace& space);
int stratum_index(const SplitSpace& space, const Stratum& n);
double binomial(int n, int k);
double stratum_volume(const SplitSpace& space, const Stratum& n);

// Hermitian contraction on a split space. Construction checks Hermiticity
// (1e-9 relative) and the spectrum (within 1e-9 of [0, 1], then clamped).
struct Kernel {
  SplitSpace space;
  Matrix matrix;

  Kernel() = default;
  Kernel(SplitSpace s, const Matrix& m);
  // Symmetrizes only; for matrices that are contractions by construction.
  static Kernel trusted(SplitSpace s, const Matrix& m);
  int dim() const { return space.dim(); }
  Field field() const { return space.field(); }
};

// Restriction of scalars: complex to real or quaternion to complex.
std::pair<SplitSpace, Kernel> restrict_scalars(const SplitSpace& space, const Kernel& k);

}  // namespace dlp
