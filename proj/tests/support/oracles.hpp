#pragma once

// Test-side reference computations, kept independent of the library's
// evaluation paths.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace oracle {

// Minority posterior straight from the ratio of the two outcome Gaussians.
// NaN where both densities underflow (the ratio is then not evaluable).
inline double error_prob_direct(double eta, double amplitude, double outcome) {
  const double mean = std::sqrt(eta) * amplitude;
  const double p0 = std::exp(-2.0 * (outcome - mean) * (outcome - mean));
  const double p1 = std::exp(-2.0 * (outcome + mean) * (outcome + mean));
  if (p0 + p1 == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return std::min(p0, p1) / (p0 + p1);
}

// Composite Simpson rule on an odd number of uniform nodes.
template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / (n - 1);
  double sum = f(a) + f(b);
  for (int i = 1; i < n - 1; ++i) sum += f(a + h * i) * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

// Two-sided Kolmogorov-Smirnov statistic of samples against a CDF callable.
template <class Cdf>
double ks_statistic(std::vector<double> samples, Cdf cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double c = cdf(samples[i]);
    d = std::max(d, std::abs((static_cast<double>(i) + 1.0) / n - c));
    d = std::max(d, std::abs(static_cast<double>(i) / n - c));
  }
  return d;
}

// Asymptotic 1 % critical value of the KS statistic.
inline double ks_critical_1pct(std::size_t n) {
  return 1.62762 / std::sqrt(static_cast<double>(n));
}

}  // namespace oracle
