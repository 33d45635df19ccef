#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nheth::stats {

double mean(std::span<const double> xs);

// Unbiased (n - 1) sample variance; 0 for fewer than two samples.
double sample_variance(std::span<const double> xs);

// Linear-interpolated quantile of an ascending sample, q in [0, 1].
double quantile_sorted(std::span<const double> sorted, double q);

// Complementary Kolmogorov distribution Q_KS(lambda) = P(K > lambda).
double kolmogorov_q(double lambda);

struct NormalityTest {
  double statistic = 0.0;  // sup |F_n - Phi|
  double p_value = 1.0;
};

// Two-sided one-sample Kolmogorov-Smirnov test of an ascending sample against
// N(mean, stddev^2). p-value from the asymptotic distribution with Stephens'
// small-sample correction.
NormalityTest ks_normal(std::span<const double> sorted, double mean, double stddev);

struct GaussianFit {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;
  NormalityTest normality;
};

// Moment fit plus KS test against the fitted normal.
GaussianFit fit_gaussian(std::span<const double> sorted);

struct Histogram {
  std::vector<double> edges;  // counts.size() + 1 ascending edges
  std::vector<std::size_t> counts;
};

// Freedman-Diaconis bin width 2 IQR n^{-1/3}; falls back to a single bin for
// degenerate samples.
Histogram freedman_diaconis(std::span<const double> sorted);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LineFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace nheth::stats
