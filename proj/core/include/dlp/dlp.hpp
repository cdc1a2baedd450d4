#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dlp/dpp.hpp"
#include "dlp/extalg.hpp"

namespace dlp {

struct DlpModel {
  SplitSpace space;
  Kernel kernel;

  DlpModel() = default;
  explicit DlpModel(Kernel k) : space(k.space), kernel(std::move(k)) {}
};

struct DlpSample {
  AdaptedSubspace subspace;
  std::uint64_t basis_seed = 0;  // seeds the per-block Haar bases
  double density = 0.0;          // NaN when not requested
};

struct SampleOptions {
  bool with_density = true;
};

DlpModel projection_model(const SplitSpace& space, const Frame& h);
// Range of k when its spectrum is within 1e-8 of {0, 1}.
std::optional<Frame> projection_range(const Kernel& k);

double dlp_density(const DlpModel& model, const AdaptedSubspace& q);
DlpSample sample(const DlpModel& model, Rng& rng, SampleOptions opt = {});
DlpSample sample_via_mixture(const DlpModel& model, Rng& rng, SampleOptions opt = {});

double laplace_transform(const DlpModel& model, const std::vector<double>& t);
// Stratum masses in enumerate_strata order: exterior algebra over R and C,
// polynomial coefficients over H.
std::vector<double> strata_masses(const DlpModel& model);
// Coefficients of det(1 - k + X k) in the block variables, by row expansion.
std::vector<double> strata_masses_polynomial(const DlpModel& model);
std::vector<Stratum> matroid_support(const SplitSpace& space, const Frame& h, double tol = 1e-8);

DlpModel restrict(const DlpModel& model, int t);
DlpModel complement_model(const DlpModel& model);
DlpModel scale_model(const DlpModel& model, double p);
AdaptedSubspace restrict_subspace(const AdaptedSubspace& q, int t);
// Per block, a uniform Binomial(n_i, p)-dimensional subspace of Q cap E_i.
AdaptedSubspace thin(const AdaptedSubspace& q, double p, Rng& rng);

struct MeanProjection {
  Matrix mean;     // mean of P (or of P + P* over H)
  RMatrix se_re;   // entrywise standard errors of the real parts
  RMatrix se_im;   // and of the imaginary parts
  CMatrix wedge_mean;  // mean of wedge(P), empty unless requested
  RMatrix wedge_se_re, wedge_se_im;
  std::size_t samples = 0;
  std::size_t transversality_failures = 0;
};

// Monte-Carlo mean of the oblique projector onto samples of the projection
// model of H, parallel to H^perp. Throws if any sample is not transversal.
MeanProjection mean_projection_estimate(const SplitSpace& space, const Frame& h, std::size_t n,
                                        std::uint64_t seed, bool with_wedge = false);

}  // namespace dlp
