#include "dlp/dlp.hpp"

#include <cmath>
#include <limits>

#include "dlp/parallel.hpp"

namespace dlp {

namespace {

// Multiplies row i of a (field units) by s[i].
Matrix scale_rows(const Matrix& a, const std::vector<double>& s) {
  Matrix out = a;
  int w = field_width(a.field());
  for (int i = 0; i < a.rows(); ++i) out.rep().middleRows(i * w, w) *= s[i];
  return out;
}

std::vector<double> coordinate_values(const SplitSpace& space, const std::vector<double>& per_block) {
  if (static_cast<int>(per_block.size()) != space.blocks_count()) throw DomainError("one value per block expected");
  std::vector<double> out(space.dim());
  for (int i = 0; i < space.dim(); ++i) out[i] = per_block[space.block_of(i)];
  return out;
}

}  // namespace

DlpModel projection_model(const SplitSpace& space, const Frame& h) {
  if (h.field() != space.field() || h.rows() != space.dim()) throw DomainError("frame does not live in the space");
  return DlpModel(Kernel::trusted(space, projection(h)));
}

std::optional<Frame> projection_range(const Kernel& k) {
  Eigensystem es = hermitian_eig(k.matrix);
  std::vector<int> keep;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    double l = es.values[i];
    if (std::abs(l) > 1e-8 && std::abs(l - 1) > 1e-8) return std::nullopt;
    if (l > 0.5) keep.push_back(static_cast<int>(i));
  }
  std::vector<int> rows(k.dim());
  for (int i = 0; i < k.dim(); ++i) rows[i] = i;
  return es.vectors.select(rows, keep);
}

double dlp_density(const DlpModel& model, const AdaptedSubspace& q) {
  if (!(q.space == model.space)) throw DomainError("subspace is not adapted to the model's splitting");
  return schur_density(model.kernel.matrix, join_frame(q));
}

DlpSample sample(const DlpModel& model, Rng& rng, SampleOptions opt) {
  const SplitSpace& s = model.space;
  Field f = s.field();
  int w = field_width(f);
  DlpSample out;
  out.basis_seed = rng();
  Rng basis_rng(out.basis_seed);
  std::vector<Frame> bases;
  for (int b : s.blocks()) bases.push_back(haar_frame(b, b, f, basis_rng));

  // Kernel in the block-diagonal Haar basis.
  CMatrix kp = model.kernel.matrix.rep();
  for (int b = 0; b < s.blocks_count(); ++b) {
    Eigen::Index off = s.offset(b) * w, len = s.blocks()[b] * w;
    kp.middleCols(off, len) = (kp.middleCols(off, len) * bases[b].rep()).eval();
  }
  for (int b = 0; b < s.blocks_count(); ++b) {
    Eigen::Index off = s.offset(b) * w, len = s.blocks()[b] * w;
    kp.middleRows(off, len) = (bases[b].rep().adjoint() * kp.middleRows(off, len)).eval();
  }
  Matrix kpm(f, std::move(kp));

  std::vector<char> chosen;
  if (f == Field::Quaternion) {
    Subset x = sample_enumerated(kpm, rng);
    chosen.resize(s.dim());
    for (int i = 0; i < s.dim(); ++i) chosen[i] = x >> i & 1;
  } else {
    chosen = sample_recursive_indicator(kpm, rng);
  }

  out.subspace.space = s;
  for (int b = 0; b < s.blocks_count(); ++b) {
    int db = s.blocks()[b];
    std::vector<int> rows(db), cols;
    for (int j = 0; j < db; ++j) {
      rows[j] = j;
      if (chosen[s.offset(b) + j]) cols.push_back(j);
    }
    out.subspace.block_frames.push_back(bases[b].select(rows, cols));
  }
  out.density = opt.with_density ? dlp_density(model, out.subspace) : std::numeric_limits<double>::quiet_NaN();
  return out;
}

DlpSample sample_via_mixture(const DlpModel& model, Rng& rng, SampleOptions opt) {
  Field f = model.space.field();
  if (f == Field::Quaternion) throw DomainError("sample_via_mixture: real or complex kernels only");
  Eigensystem es = hermitian_eig(model.kernel.matrix);
  int d = model.space.dim();
  std::vector<int> rows(d);
  for (int i = 0; i < d; ++i) rows[i] = i;
  std::vector<Frame> parts;
  int hdim = 0;
  for (int start = 0; start < d;) {
    int end = start + 1;
    while (end < d && es.values[end] - es.values[end - 1] < 1e-8) ++end;
    int m = end - start;
    double lambda = std::clamp(es.values.segment(start, m).mean(), 0.0, 1.0);
    int n = std::binomial_distribution<int>(m, lambda)(rng);
    if (n > 0) {
      Frame v = es.vectors.col_range(start, m);
      parts.push_back(v * haar_frame(m, n, f, rng));
      hdim += n;
    }
    start = end;
  }
  Frame h = Matrix::hcat(parts, f, d);
  DlpSample out = sample(projection_model(model.space, h), rng, {false});
  out.density = opt.with_density ? dlp_density(model, out.subspace) : std::numeric_limits<double>::quiet_NaN();
  return out;
}

double laplace_transform(const DlpModel& model, const std::vector<double>& t) {
  std::vector<double> coord = coordinate_values(model.space, t);
  for (double& x : coord) x = std::expm1(x);
  const Matrix& k = model.kernel.matrix;
  Matrix id = Matrix::identity(k.field(), k.rows());
  if (k.field() == Field::Quaternion) return tau_det_re(id + scale_rows(k, coord));
  // det(1 + k (e^T - 1)); column scaling of k.
  return field_det(id + scale_rows(k.adjoint(), coord).adjoint()).real();
}

std::vector<double> strata_masses(const DlpModel& model) {
  if (model.space.field() == Field::Quaternion) return strata_masses_polynomial(model);
  return strata_masses_extalg(model.kernel);
}

std::vector<double> strata_masses_polynomial(const DlpModel& model) {
  const SplitSpace& space = model.space;
  int d = space.dim();
  if (d > 20) throw BudgetError("strata_masses_polynomial: d exceeds 20");
  const Matrix& k = model.kernel.matrix;
  Matrix one_minus = Matrix::identity(k.field(), d) - k;
  int w = field_width(k.field());
  std::vector<double> out(enumerate_strata(space).size(), 0.0);
  for (Subset s = 0; s < (Subset(1) << d); ++s) {
    Matrix mixed = one_minus;
    Stratum n(space.blocks_count(), 0);
    for (int i = 0; i < d; ++i)
      if (s >> i & 1) {
        mixed.rep().middleRows(i * w, w) = k.rep().middleRows(i * w, w);
        ++n[space.block_of(i)];
      }
    double v = k.field() == Field::Quaternion ? tau_det_re(mixed) : field_det(mixed).real();
    out[stratum_index(space, n)] += v;
  }
  return out;
}

std::vector<Stratum> matroid_support(const SplitSpace& space, const Frame& h, double tol) {
  int s = space.blocks_count();
  std::vector<int> bound(std::size_t(1) << s, 0);
  for (std::size_t t = 1; t < bound.size(); ++t) {
    std::vector<int> blocks;
    for (int b = 0; b < s; ++b)
      if (t >> b & 1) blocks.push_back(b);
    bound[t] = intersection_dim(h, space.block_sum_frame(blocks), tol);
  }
  std::vector<Stratum> out;
  for (const Stratum& n : enumerate_strata(space)) {
    if (total(n) != h.cols()) continue;
    bool ok = true;
    for (std::size_t t = 1; t < bound.size() && ok; ++t) {
      int sum = 0;
      for (int b = 0; b < s; ++b)
        if (t >> b & 1) sum += n[b];
      ok = sum >= bound[t];
    }
    if (ok) out.push_back(n);
  }
  return out;
}

DlpModel restrict(const DlpModel& model, int t) {
  const SplitSpace& s = model.space;
  if (t < 1 || t > s.blocks_count()) throw DomainError("restrict: need 1 <= t <= s");
  std::vector<int> dims(s.blocks().begin(), s.blocks().begin() + t);
  SplitSpace sub(s.field(), dims);
  return DlpModel(Kernel::trusted(sub, model.kernel.matrix.block(0, 0, sub.dim(), sub.dim())));
}

DlpModel complement_model(const DlpModel& model) {
  Matrix id = Matrix::identity(model.space.field(), model.space.dim());
  return DlpModel(Kernel::trusted(model.space, id - model.kernel.matrix));
}

DlpModel scale_model(const DlpModel& model, double p) {
  if (!(p >= 0 && p <= 1)) throw DomainError("scale_model: p must lie in [0, 1]");
  return DlpModel(Kernel::trusted(model.space, model.kernel.matrix * p));
}

AdaptedSubspace restrict_subspace(const AdaptedSubspace& q, int t) {
  const SplitSpace& s = q.space;
  if (t < 1 || t > s.blocks_count()) throw DomainError("restrict_subspace: need 1 <= t <= s");
  std::vector<int> dims(s.blocks().begin(), s.blocks().begin() + t);
  AdaptedSubspace out{SplitSpace(s.field(), dims), {}};
  out.block_frames.assign(q.block_frames.begin(), q.block_frames.begin() + t);
  return out;
}

AdaptedSubspace thin(const AdaptedSubspace& q, double p, Rng& rng) {
  if (!(p >= 0 && p <= 1)) throw DomainError("thin: p must lie in [0, 1]");
  AdaptedSubspace out{q.space, {}};
  for (const Frame& f : q.block_frames) {
    int m = std::binomial_distribution<int>(f.cols(), p)(rng);
    out.block_frames.push_back(f * haar_frame(f.cols(), m, f.field(), rng));
  }
  return out;
}

MeanProjection mean_projection_estimate(const SplitSpace& space, const Frame& h, std::size_t n,
                                        std::uint64_t seed, bool with_wedge) {
  if (n < 2) throw DomainError("mean_projection_estimate: need at least two samples");
  Field f = space.field();
  if (with_wedge && f == Field::Quaternion) throw DomainError("no exterior algebra over the quaternions");
  DlpModel model = projection_model(space, h);
  Eigen::Index r = h.rep().rows();
  Eigen::Index rw = with_wedge ? (Eigen::Index(1) << space.dim()) : 0;

  struct Acc {
    CMatrix s1;
    RMatrix re2, im2;
    CMatrix w1;
    RMatrix wre2, wim2;
    std::size_t fails = 0;
  };
  auto parts = parallel_blocks(n, [&](std::size_t b, std::size_t begin, std::size_t end) {
    Rng rng = stream(seed, tag_of("mean-projection"), b);
    Acc a{CMatrix::Zero(r, r), RMatrix::Zero(r, r), RMatrix::Zero(r, r),
          CMatrix::Zero(rw, rw), RMatrix::Zero(rw, rw), RMatrix::Zero(rw, rw)};
    for (std::size_t i = begin; i < end; ++i) {
      Frame q = join_frame(sample(model, rng, {false}).subspace);
      CMatrix p;
      try {
        p = oblique_projector(q, h).rep();
      } catch (const NumericError&) {
        ++a.fails;
        continue;
      }
      if (f == Field::Quaternion) p += p.adjoint().eval();
      a.s1 += p;
      a.re2 += p.real().cwiseAbs2();
      a.im2 += p.imag().cwiseAbs2();
      if (with_wedge) {
        CMatrix wp = wedge_operator(Matrix(f, p)).m;
        a.w1 += wp;
        a.wre2 += wp.real().cwiseAbs2();
        a.wim2 += wp.imag().cwiseAbs2();
      }
    }
    return a;
  });

  Acc tot{CMatrix::Zero(r, r), RMatrix::Zero(r, r), RMatrix::Zero(r, r),
          CMatrix::Zero(rw, rw), RMatrix::Zero(rw, rw), RMatrix::Zero(rw, rw)};
  for (const Acc& a : parts) {
    tot.s1 += a.s1;
    tot.re2 += a.re2;
    tot.im2 += a.im2;
    if (with_wedge) {
      tot.w1 += a.w1;
      tot.wre2 += a.wre2;
      tot.wim2 += a.wim2;
    }
    tot.fails += a.fails;
  }
  if (tot.fails) throw NumericError("mean_projection_estimate: " + std::to_string(tot.fails) + " non-transversal samples");

  double N = static_cast<double>(n);
  auto se = [N](const RMatrix& mean, const RMatrix& sq) {
    RMatrix var = ((sq - N * mean.cwiseAbs2()) / (N - 1)).cwiseMax(0.0);
    return RMatrix((var / N).cwiseSqrt());
  };
  MeanProjection out;
  out.samples = n;
  out.mean = Matrix(f, tot.s1 / N);
  out.se_re = se(out.mean.rep().real(), tot.re2);
  out.se_im = se(out.mean.rep().imag(), tot.im2);
  if (with_wedge) {
    out.wedge_mean = tot.w1 / N;
    out.wedge_se_re = se(out.wedge_mean.real(), tot.wre2);
    out.wedge_se_im = se(out.wedge_mean.imag(), tot.wim2);
  }
  return out;
}

}  // namespace dlp
