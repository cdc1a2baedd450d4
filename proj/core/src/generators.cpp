#include "dlp/generators.hpp"

#include <cmath>

namespace dlp {

std::vector<int> random_blocks(int d, Rng& rng) {
  std::vector<int> out;
  std::uniform_int_distribution<int> cut(0, 1);
  int current = 1;
  for (int i = 1; i < d; ++i) {
    if (cut(rng)) {
      out.push_back(current);
      current = 1;
    } else {
      ++current;
    }
  }
  out.push_back(current);
  return out;
}

Matrix random_spectral(int d, Field f, double lo, double hi, Rng& rng) {
  Frame u = haar_frame(d, d, f, rng);
  std::uniform_real_distribution<double> unif(lo, hi);
  int w = field_width(f);
  RVector diag(d * w);
  for (int i = 0; i < d; ++i) diag.segment(i * w, w).setConstant(unif(rng));
  Matrix m(f, u.rep() * diag.cast<cplx>().asDiagonal() * u.rep().adjoint());
  return hermitian_checked(m);
}

Matrix random_hermitian(int d, Field f, Rng& rng) {
  Matrix g = gaussian_matrix(d, d, f, rng);
  Matrix h(f, (g.rep() + g.rep().adjoint()) / std::sqrt(8.0 * d));
  return hermitian_checked(h);
}

Kernel random_kernel(const SplitSpace& space, Rng& rng) {
  return Kernel(space, random_spectral(space.dim(), space.field(), 0.0, 1.0, rng));
}

Frame random_sparse_frame(const SplitSpace& space, int n, Rng& rng) {
  int s = space.blocks_count();
  std::uniform_int_distribution<int> pick(0, s - 1);
  std::bernoulli_distribution two(0.3);
  for (int attempt = 0; attempt < 100; ++attempt) {
    Matrix raw = Matrix::zero(space.field(), space.dim(), n);
    int w = field_width(space.field());
    for (int j = 0; j < n; ++j) {
      std::vector<int> blocks{pick(rng)};
      if (two(rng)) blocks.push_back(pick(rng));
      Matrix g = gaussian_matrix(space.dim(), 1, space.field(), rng);
      for (int b : blocks) {
        Eigen::Index off = space.offset(b) * w, len = space.blocks()[b] * w;
        raw.rep().block(off, j * w, len, w) = g.rep().block(off, 0, len, w);
      }
    }
    try {
      return gram_schmidt(raw);
    } catch (const NumericError&) {
    }
  }
  throw NumericError("random_sparse_frame: could not draw independent vectors");
}

}  // namespace dlp
