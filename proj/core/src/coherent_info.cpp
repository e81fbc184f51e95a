#include "cvqkd/coherent_info.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cvqkd {

namespace {

void check_channel(double eta, double amplitude) {
  if (!(eta > 0.0 && eta <= 1.0))
    throw std::domain_error("transmission eta must be in (0, 1]");
  if (!(amplitude >= 0.0))
    throw std::domain_error("effective amplitude must be >= 0");
}

const double kSqrt2OverPi = std::sqrt(2.0 / std::numbers::pi);

// sqrt(1 - f^2) evaluated without cancellation: with a = 2 (1-eta) E^2 the
// overlap is f = exp(-a), so 1 - f^2 = -expm1(-2a).
double distinguishability(double eta, double amplitude) {
  const double a = 2.0 * (1.0 - eta) * amplitude * amplitude;
  const double one_minus_f2 = -std::expm1(-2.0 * a);
  return std::sqrt(one_minus_f2 > 0.0 ? one_minus_f2 : 0.0);
}

}  // namespace

double overlap(double eta, double amplitude) {
  check_channel(eta, amplitude);
  return std::exp(-2.0 * (1.0 - eta) * amplitude * amplitude);
}

double eve_info(double eta, double amplitude) {
  check_channel(eta, amplitude);
  const double s = distinguishability(eta, amplitude);
  if (s == 0.0) return 0.0;  // identical states carry nothing
  // 1 - s = f^2 / (1 + s), stable when s is close to 1; drops to zero once
  // f^2 underflows, which is the correct limit of (1-s) log(1-s).
  const double f2 = std::exp(-4.0 * (1.0 - eta) * amplitude * amplitude);
  const double one_minus_s = f2 / (1.0 + s);
  double t = (1.0 + s) * std::log1p(s);
  if (one_minus_s > 0.0) t += one_minus_s * std::log(one_minus_s);
  return 0.5 * t / std::numbers::ln2;
}

double eve_helstrom_success(double eta, double amplitude) {
  check_channel(eta, amplitude);
  return 0.5 * (1.0 + distinguishability(eta, amplitude));
}

double bob_conditional_density(double eta, double amplitude, double outcome, int bit) {
  check_channel(eta, amplitude);
  if (bit != 0 && bit != 1) throw std::domain_error("bit must be 0 or 1");
  const double mean = (bit == 0 ? 1.0 : -1.0) * std::sqrt(eta) * amplitude;
  const double u = outcome - mean;
  return kSqrt2OverPi * std::exp(-2.0 * u * u);
}

double error_prob(double eta, double amplitude, double outcome) {
  check_channel(eta, amplitude);
  // Minority posterior of the two outcome Gaussians. The raw density ratio
  // underflows at large |x|; the logistic form does not.
  const double t = 8.0 * std::sqrt(eta) * amplitude * std::abs(outcome);
  return 1.0 / (1.0 + std::exp(t));
}

double bob_info(double error_probability) {
  if (!(error_probability >= 0.0 && error_probability <= 1.0))
    throw std::domain_error("error probability must be in [0, 1]");
  const double p = error_probability;
  const double q = 1.0 - p;
  double info = 1.0;
  if (p > 0.0) info += p * std::log2(p);
  if (q > 0.0) info += q * std::log2(q);
  return info;
}

double delta_info(double eta, double amplitude, double outcome) {
  return bob_info(error_prob(eta, amplitude, outcome)) - eve_info(eta, amplitude);
}

InfoBreakdown info_breakdown(double eta, const EffectiveChannel& channel) {
  InfoBreakdown b;
  b.f = overlap(eta, channel.amplitude);
  b.i_ae = eve_info(eta, channel.amplitude);
  b.p_e = error_prob(eta, channel.amplitude, channel.outcome);
  b.i_ab = bob_info(b.p_e);
  b.delta = b.i_ab - b.i_ae;
  return b;
}

}  // namespace cvqkd
