#pragma once

#include <cstddef>
#include <vector>

namespace dlp {

struct ChiSquare {
  double statistic = 0;
  int df = 0;
  double p_value = 1;
};

// Goodness of fit. Bins with expected count below 5 are pooled; bins with
// zero probability must be empty.
ChiSquare chi_square(const std::vector<double>& observed, const std::vector<double>& expected_prob);
// Homogeneity of two count vectors over the same bins.
ChiSquare chi_square_two_sample(const std::vector<double>& a, const std::vector<double>& b);

struct Band {
  double mean = 0;
  double se = 0;
};

Band mean_band(const std::vector<double>& samples);
std::vector<Band> mean_band(const std::vector<std::vector<double>>& samples);

// Running first and second moments; merge order is the caller's.
struct Moments {
  double n = 0, sum = 0, sum2 = 0;
  void add(double x) {
    n += 1;
    sum += x;
    sum2 += x * x;
  }
  void merge(const Moments& o) {
    n += o.n;
    sum += o.sum;
    sum2 += o.sum2;
  }
  double mean() const { return sum / n; }
  Band band() const;
};

// Kolmogorov distribution tail P(K > x).
double kolmogorov_tail(double x);
double ks_uniform(std::vector<double> samples, double lo, double hi);
double ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace dlp
