#pragma once

#include <cstdint>
#include <functional>

#include "cvqkd/channel.hpp"
#include "cvqkd/postselect.hpp"

namespace cvqkd {

enum class Basis { X, Y };

/// One transmission event.
struct SignalRecord {
  double amp_q = 0.0;  ///< real part of Alice's complex amplitude
  double amp_p = 0.0;  ///< imaginary part
  double alpha = 0.0;  ///< modulus of the amplitude
  double theta = 0.0;  ///< signal-set phase, acos(E / alpha); 0 when alpha = 0
  Basis basis = Basis::X;
  int bit = 0;
  double x_out = 0.0;  ///< Bob's homodyne outcome
  bool eve_correct = false;
  bool selected = false;
};

struct BasisTally {
  std::uint64_t n = 0;
  std::uint64_t n_selected = 0;
  std::uint64_t n_error_selected = 0;
};

struct SessionStats {
  std::uint64_t n_total = 0;
  std::uint64_t n_selected = 0;
  std::uint64_t n_error_selected = 0;
  std::uint64_t n_eve_correct_selected = 0;
  BasisTally basis_x;
  BasisTally basis_y;
  double emp_error_selected = 0.0;      ///< Bob's bit-error rate within selection
  double emp_eve_success_selected = 0.0;
  double emp_rate = 0.0;      ///< mean clipped information difference over all events
  double emp_rate_sem = 0.0;  ///< standard error of that mean
  double eta = 0.0;
  double d = 0.0;
  std::uint64_t seed = 0;
};

using RecordSink = std::function<void(const SignalRecord&)>;

/// Simulates n_events protocol rounds: Gaussian preparation with amplitude
/// component variance d/4, fair-coin basis choice, homodyne outcome with
/// variance 1/4, Eve guessing at the optimal-discrimination bound, sifting
/// and postselection. Fully reproducible from the seed; per-block substreams
/// make the result independent of the thread count. When a sink is given,
/// events are streamed in order (processing falls back to a single thread).
SessionStats run_session(const ChannelParams& params, std::uint64_t n_events,
                         std::uint64_t seed, int threads = 1,
                         const RecordSink& sink = {});

struct ConsistencyReport {
  double empirical_error = 0.0;
  double analytic_error = 0.0;  ///< selection-conditioned error from quadrature
  double sigma = 0.0;           ///< binomial standard deviation at n_selected
  double z_score = 0.0;
  bool consistent = true;  ///< |z_score| <= 3
  std::uint64_t n_selected = 0;
};

/// Compares the session's selected error rate against the quadrature
/// prediction; the 3-sigma band widens automatically at small samples.
ConsistencyReport error_consistency_check(const SessionStats& stats,
                                          const ChannelParams& params,
                                          const GridSpec& grid = {});

}  // namespace cvqkd
