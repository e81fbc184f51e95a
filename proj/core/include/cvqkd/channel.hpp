#pragma once

#include <stdexcept>

namespace cvqkd {

/// Channel and modulation parameters shared by every computation.
struct ChannelParams {
  double eta = 0.5;  ///< beamsplitter transmission, in (0, 1]
  double d = 2.1;    ///< width of the effective-amplitude Gaussian, > 0
};

/// One effective information channel: the effective amplitude the security
/// analysis depends on and Bob's homodyne outcome, both in vacuum-noise units.
struct EffectiveChannel {
  double amplitude = 0.0;  ///< effective amplitude, >= 0 (sign folded into the bit)
  double outcome = 0.0;    ///< Bob's quadrature outcome, any real
};

inline void validate(const ChannelParams& params) {
  if (!(params.eta > 0.0 && params.eta <= 1.0))
    throw std::domain_error("ChannelParams: transmission eta must be in (0, 1]");
  if (!(params.d > 0.0))
    throw std::domain_error("ChannelParams: modulation width d must be > 0");
}

}  // namespace cvqkd
