#pragma once

#include <optional>
#include <vector>

#include "cvqkd/channel.hpp"

namespace cvqkd {

/// Tensor-product quadrature grid: amplitude in [0, e_max] with n_e nodes,
/// outcome in [-x_max, x_max] with n_x nodes.
struct GridSpec {
  double e_max = 4.0;
  double x_max = 4.0;
  int n_e = 801;
  int n_x = 1601;
};

void validate(const GridSpec& grid);

/// Grid with the default node counts but bounds wide enough that the
/// truncated tail mass of the joint density is negligible (< 1e-12).
/// Used for normalization checks; the key-rate default stays at +-4.
GridSpec covering_grid(const ChannelParams& params);

struct KeyRateResult {
  double rate = 0.0;           ///< secure bits per raw channel use, R_k / R_r
  double selected_mass = 0.0;  ///< probability that a channel use is kept
  double d_used = 0.0;
  double eta_used = 0.0;
  GridSpec grid;
  bool converged = false;  ///< node doubling moved the rate by <= 0.5 % relative
};

/// Tabulated information difference, suitable for heat-map plotting.
struct InfoMapGrid {
  std::vector<double> e_nodes;
  std::vector<double> x_nodes;
  std::vector<double> values;    ///< row-major, e_nodes.size() x x_nodes.size()
  std::vector<double> boundary;  ///< per-amplitude selection threshold; NaN where none
};

/// Joint density of one channel use over amplitude >= 0 (folded Gaussian of
/// width d) and Bob's outcome (equal mixture of the two bit densities).
/// Normalized: integrates to 1 over E in [0, inf), x in R.
double joint_density(const ChannelParams& params, double amplitude, double outcome);

/// True iff the channel carries a strict information advantage,
/// delta_info(eta, amplitude, outcome) > 0.
bool is_selected(double eta, double amplitude, double outcome);

/// Smallest |outcome| that is selected at this amplitude, located by
/// bisection to 1e-9. Empty when the information difference never turns
/// positive (amplitude 0, or Eve's information saturated at 1 bit).
std::optional<double> boundary_x(double eta, double amplitude);

/// Selection-weighted information-difference integral over the grid,
/// by composite Simpson quadrature with the integrand clipped to its
/// positive part. Deterministic for fixed inputs and any thread count.
KeyRateResult key_rate(const ChannelParams& params, const GridSpec& grid = {},
                       int threads = 1);

/// Integral of joint_density alone over the grid (normalization checks).
double density_mass(const ChannelParams& params, const GridSpec& grid, int threads = 1);

/// Mean decoding error probability conditioned on selection: the ratio of
/// the selection-weighted error integral to the selected mass.
double selection_conditioned_error(const ChannelParams& params,
                                   const GridSpec& grid = {}, int threads = 1);

/// delta_info tabulated on the grid plus the per-row selection boundary.
InfoMapGrid info_map(double eta, const GridSpec& grid = {}, int threads = 1);

struct OptimizeDResult {
  double d_star = 0.0;
  KeyRateResult result;       ///< key rate evaluated at d_star
  bool on_boundary = false;   ///< optimum within tolerance of the search interval edge
  bool scan_unimodal = true;  ///< coarse pre-scan saw a single interior maximum
};

/// Maximizes key_rate over the modulation width by a coarse unimodality scan
/// followed by golden-section refinement to |delta d| <= 1e-3.
OptimizeDResult optimize_d(double eta, const GridSpec& grid = {},
                           double d_lo = 0.1, double d_hi = 10.0, int threads = 1);

}  // namespace cvqkd
