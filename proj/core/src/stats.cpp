#include "dlp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "dlp/scalars.hpp"

namespace dlp {

namespace {

double chi_square_tail(double stat, int df) {
  if (!std::isfinite(stat)) return 0.0;
  if (stat <= 0) return 1.0;
  return boost::math::gamma_q(df / 2.0, stat / 2.0);
}

// Groups bin indices so that every group has expected weight >= 5.
std::vector<std::vector<std::size_t>> pool(const std::vector<double>& expected) {
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> small;
  double small_total = 0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (expected[i] >= 5) {
      groups.push_back({i});
    } else {
      small.push_back(i);
      small_total += expected[i];
    }
  }
  if (small.empty()) return groups;
  if (small_total >= 5 || groups.empty()) {
    groups.push_back(small);
    return groups;
  }
  auto smallest = std::min_element(groups.begin(), groups.end(), [&](const auto& a, const auto& b) {
    return expected[a[0]] < expected[b[0]];
  });
  smallest->insert(smallest->end(), small.begin(), small.end());
  return groups;
}

}  // namespace

ChiSquare chi_square(const std::vector<double>& observed, const std::vector<double>& expected_prob) {
  if (observed.size() != expected_prob.size()) throw DomainError("chi_square: size mismatch");
  double total_p = std::accumulate(expected_prob.begin(), expected_prob.end(), 0.0);
  if (std::abs(total_p - 1) > 1e-9) throw DomainError("chi_square: expected probabilities must sum to 1");
  double n = std::accumulate(observed.begin(), observed.end(), 0.0);
  std::vector<double> obs, exp;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected_prob[i] <= 1e-12) {
      if (observed[i] > 0) return {std::numeric_limits<double>::infinity(), 0, 0.0};
      continue;
    }
    obs.push_back(observed[i]);
    exp.push_back(expected_prob[i] * n);
  }
  auto groups = pool(exp);
  if (groups.size() < 2) throw DomainError("chi_square: degenerate single-bin input");
  ChiSquare out;
  for (const auto& g : groups) {
    double o = 0, e = 0;
    for (std::size_t i : g) {
      o += obs[i];
      e += exp[i];
    }
    out.statistic += (o - e) * (o - e) / e;
  }
  out.df = static_cast<int>(groups.size()) - 1;
  out.p_value = chi_square_tail(out.statistic, out.df);
  return out;
}

ChiSquare chi_square_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw DomainError("chi_square_two_sample: size mismatch");
  double na = std::accumulate(a.begin(), a.end(), 0.0), nb = std::accumulate(b.begin(), b.end(), 0.0);
  if (na <= 0 || nb <= 0) throw DomainError("chi_square_two_sample: empty sample");
  double fa = na / (na + nb), fb = nb / (na + nb);
  // Pool on the smaller expected count of each bin.
  std::vector<double> key(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) key[i] = std::min(fa, fb) * (a[i] + b[i]);
  std::vector<std::size_t> used;
  std::vector<double> kept;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] + b[i] > 0) {
      used.push_back(i);
      kept.push_back(key[i]);
    }
  auto groups = pool(kept);
  if (groups.size() < 2) throw DomainError("chi_square_two_sample: degenerate single-bin input");
  ChiSquare out;
  for (const auto& g : groups) {
    double oa = 0, ob = 0;
    for (std::size_t j : g) {
      oa += a[used[j]];
      ob += b[used[j]];
    }
    double ea = fa * (oa + ob), eb = fb * (oa + ob);
    out.statistic += (oa - ea) * (oa - ea) / ea + (ob - eb) * (ob - eb) / eb;
  }
  out.df = static_cast<int>(groups.size()) - 1;
  out.p_value = chi_square_tail(out.statistic, out.df);
  return out;
}

Band Moments::band() const {
  if (n < 2) throw DomainError("mean_band: need at least two samples");
  double m = sum / n;
  double var = std::max(0.0, (sum2 - n * m * m) / (n - 1));
  return {m, std::sqrt(var / n)};
}

Band mean_band(const std::vector<double>& samples) {
  if (samples.size() < 2) throw DomainError("mean_band: need at least two samples");
  double n = static_cast<double>(samples.size());
  double m = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double ss = 0;
  for (double x : samples) ss += (x - m) * (x - m);
  return {m, std::sqrt(ss / (n - 1) / n)};
}

std::vector<Band> mean_band(const std::vector<std::vector<double>>& samples) {
  if (samples.size() < 2) throw DomainError("mean_band: need at least two samples");
  std::size_t k = samples[0].size();
  std::vector<Band> out;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<double> col;
    for (const auto& s : samples) col.push_back(s.at(j));
    out.push_back(mean_band(col));
  }
  return out;
}

double kolmogorov_tail(double x) {
  if (x <= 0) return 1.0;
  if (x < 0.2) return 1.0;
  double sum = 0;
  for (int k = 1; k <= 100; ++k) {
    double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 ? 1.0 : -1.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_uniform(std::vector<double> s, double lo, double hi) {
  if (s.empty()) throw DomainError("ks_uniform: empty sample");
  std::sort(s.begin(), s.end());
  double n = static_cast<double>(s.size()), dmax = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    double f = std::clamp((s[i] - lo) / (hi - lo), 0.0, 1.0);
    dmax = std::max({dmax, (i + 1) / n - f, f - i / n});
  }
  double sq = std::sqrt(n);
  return kolmogorov_tail((sq + 0.12 + 0.11 / sq) * dmax);
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw DomainError("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size()), dmax = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    dmax = std::max(dmax, std::abs(i / na - j / nb));
  }
  double ne = std::sqrt(na * nb / (na + nb));
  return kolmogorov_tail((ne + 0.12 + 0.11 / ne) * dmax);
}

}  // namespace dlp
