#pragma once

#include "dlp/splitspace.hpp"

namespace dlp {

// Random composition of d into positive block sizes.
std::vector<int> random_blocks(int d, Rng& rng);
// U diag(lambda) U* with U Haar and lambda uniform on [lo, hi].
Matrix random_spectral(int d, Field f, double lo, double hi, Rng& rng);
// Hermitian matrix with Gaussian entries scaled to O(1) spectrum.
Matrix random_hermitian(int d, Field f, Rng& rng);
Kernel random_kernel(const SplitSpace& space, Rng& rng);
// Frame spanned by vectors supported on random unions of blocks, so that the
// span meets block sums non-generically.
Frame random_sparse_frame(const SplitSpace& space, int n, Rng& rng);

}  // namespace dlp
