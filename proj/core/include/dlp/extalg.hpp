#pragma once

#include <cstdint>
#include <vector>

#include "dlp/splitspace.hpp"

namespace dlp {

// Operator on the exterior algebra of F^d in the basis e_I, I a subset bitmask.
struct ExteriorOperator {
  Field field = Field::Real;
  int d = 0;
  CMatrix m;  // 2^d x 2^d
};

using ExteriorVector = CVector;

constexpr int kExteriorBudget = 14;

ExteriorOperator wedge_operator(const Matrix& a);
ExteriorVector plucker(const Frame& f);
int hodge_sign(std::uint64_t subset);
ExteriorOperator adjugate(const ExteriorOperator& f);

ExteriorOperator density_operator(const Kernel& k);
// adj(wedge(1 - k)) wedge(k).
ExteriorOperator density_operator_adjugate(const Kernel& k);
// Diagonal in the eigenbasis of k, conjugated by wedge(U).
ExteriorOperator density_operator_spectral(const Kernel& k);

ExteriorOperator strata_projector(const SplitSpace& space, const Stratum& n);
double dlp_prob_trace(const Kernel& k, const AdaptedSubspace& q);
double trace_product(const ExteriorOperator& a, const ExteriorOperator& b);
// Tr(Pi_n rho_k) for every stratum, in enumerate_strata order.
std::vector<double> strata_masses_extalg(const Kernel& k);

}  // namespace dlp
