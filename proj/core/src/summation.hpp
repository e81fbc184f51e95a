#pragma once

namespace cvqkd::detail {

// Kahan compensated accumulator; keeps ordered reductions insensitive to
// the magnitude spread of partial sums.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double value) {
    const double y = value - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace cvqkd::detail
