#pragma once

#include <cstdint>
#include <vector>

#include "dlp/splitspace.hpp"

namespace dlp {

// Subset of {0, ..., d-1} as a bitmask; bit i is coordinate i.
using Subset = std::uint64_t;

std::vector<int> subset_indices(Subset s, int d);
inline int subset_size(Subset s) { return __builtin_popcountll(s); }

double incidence_prob(const Kernel& k, Subset j);
double subset_density(const Kernel& k, Subset i);
std::vector<double> incidence_table(const Kernel& k);
std::vector<double> density_table(const Kernel& k);

// Schur-complement recursion over coordinates; real and complex only.
Subset sample_recursive(const Kernel& k, Rng& rng);
Subset sample_recursive(const Matrix& k, Rng& rng);
// Same draw as an indicator vector, for any d.
std::vector<char> sample_recursive_indicator(const Matrix& k, Rng& rng);
// Inverse-CDF draw from the full density table; d <= 20.
Subset sample_enumerated(const Kernel& k, Rng& rng);
Subset sample_enumerated(const Matrix& k, Rng& rng);
Subset draw_from_table(const std::vector<double>& table, Rng& rng);

std::vector<double> mobius_invert(const std::vector<double>& incidence, int d);
std::vector<double> incidence_transform(const std::vector<double>& law, int d);

// tau-determinant (Re) of the minor on an ordered index tuple, repeats allowed.
double multiset_minor(const Matrix& k, const std::vector<int>& idx);

}  // namespace dlp
