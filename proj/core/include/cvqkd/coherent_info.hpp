#pragma once

#include "cvqkd/channel.hpp"

namespace cvqkd {

/// Per-channel information quantities at one (amplitude, outcome) point.
/// All informations are in bits; delta is i_ab - i_ae exactly.
struct InfoBreakdown {
  double f = 1.0;      ///< overlap of Eve's two conditional states, in [0, 1]
  double i_ae = 0.0;   ///< Alice-Eve accessible information, in [0, 1]
  double p_e = 0.5;    ///< Bob's decoding error probability, in [0, 1/2]
  double i_ab = 0.0;   ///< Alice-Bob mutual information, in [0, 1]
  double delta = 0.0;  ///< i_ab - i_ae
};

/// Overlap exp(-2 (1-eta) E^2) of the two signal states on a beamsplitter
/// tap of transmission eta, for effective amplitude E >= 0.
double overlap(double eta, double amplitude);

/// Eve's accessible information (bits) for distinguishing two pure states
/// with the overlap above. Zero exactly when the states coincide.
double eve_info(double eta, double amplitude);

/// Optimal success probability 1/2 (1 + sqrt(1 - f^2)) of distinguishing the
/// two tapped states; used to sample Eve's guesses in simulation.
double eve_helstrom_success(double eta, double amplitude);

/// Probability density of Bob's homodyne outcome given the encoded bit:
/// a Gaussian with mean +sqrt(eta) E for bit 0, -sqrt(eta) E for bit 1,
/// and vacuum variance 1/4.
double bob_conditional_density(double eta, double amplitude, double outcome, int bit);

/// Bob's sign-decoding error probability at outcome x, the minority
/// posterior of the two Gaussian hypotheses. Evaluated in the closed
/// logistic form 1 / (1 + exp(8 sqrt(eta) E |x|)); 1/2 at x = 0.
double error_prob(double eta, double amplitude, double outcome);

/// Mutual information (bits) of a binary symmetric channel with the given
/// error probability: 1 + p log2 p + (1-p) log2(1-p), with 0 log 0 = 0.
double bob_info(double error_probability);

/// bob_info(error_prob(...)) - eve_info(...): positive where the pair
/// (amplitude, outcome) yields an information advantage over Eve.
double delta_info(double eta, double amplitude, double outcome);

/// All of the above for one effective channel.
InfoBreakdown info_breakdown(double eta, const EffectiveChannel& channel);

}  // namespace cvqkd
