#include "cvqkd/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "cvqkd/coherent_info.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "summation.hpp"

namespace cvqkd {

namespace {

constexpr std::uint64_t kBlockEvents = 8192;

struct BlockPartial {
  std::uint64_t n = 0;
  std::uint64_t n_selected = 0;
  std::uint64_t n_error_selected = 0;
  std::uint64_t n_eve_correct_selected = 0;
  BasisTally basis[2];
  double sum_clipped = 0.0;
  double sum_clipped_sq = 0.0;
};

// Fixed per-event draw order (the reproducibility contract):
//   one normal pair -> amplitude components, one uniform -> basis coin,
//   one normal pair -> outcome noise (second value unused),
//   one uniform -> Eve's guess.
BlockPartial simulate_block(const ChannelParams& params, std::uint64_t seed,
                            std::uint64_t block, std::uint64_t count,
                            std::vector<SignalRecord>* records) {
  detail::Xoshiro256pp rng(seed, block);
  const double sigma_amp = 0.5 * std::sqrt(params.d);
  const double root_eta = std::sqrt(params.eta);

  BlockPartial out;
  for (std::uint64_t i = 0; i < count; ++i) {
    double z_q, z_p, z_noise, z_spare;
    rng.normal_pair(z_q, z_p);
    const double amp_q = sigma_amp * z_q;
    const double amp_p = sigma_amp * z_p;
    const Basis basis = rng.uniform() <= 0.5 ? Basis::X : Basis::Y;
    rng.normal_pair(z_noise, z_spare);
    (void)z_spare;  // drawn but unused; keeps the stream layout fixed
    const double u_eve = rng.uniform();

    const double component = basis == Basis::X ? amp_q : amp_p;
    const double amplitude = std::abs(component);
    const int bit = component < 0.0 ? 1 : 0;  // sign(0) counts as +
    const double x_out = root_eta * component + 0.5 * z_noise;

    const double difference = delta_info(params.eta, amplitude, x_out);
    const bool selected = difference > 0.0;
    const bool eve_correct = u_eve <= eve_helstrom_success(params.eta, amplitude);
    const int decoded = x_out < 0.0 ? 1 : 0;
    const bool error = decoded != bit;

    ++out.n;
    auto& tally = out.basis[basis == Basis::X ? 0 : 1];
    ++tally.n;
    if (selected) {
      ++out.n_selected;
      ++tally.n_selected;
      if (error) {
        ++out.n_error_selected;
        ++tally.n_error_selected;
      }
      if (eve_correct) ++out.n_eve_correct_selected;
      out.sum_clipped += difference;
      out.sum_clipped_sq += difference * difference;
    }

    if (records) {
      SignalRecord rec;
      rec.amp_q = amp_q;
      rec.amp_p = amp_p;
      rec.alpha = std::hypot(amp_q, amp_p);
      rec.theta = rec.alpha > 0.0 ? std::acos(std::min(amplitude / rec.alpha, 1.0)) : 0.0;
      rec.basis = basis;
      rec.bit = bit;
      rec.x_out = x_out;
      rec.eve_correct = eve_correct;
      rec.selected = selected;
      records->push_back(rec);
    }
  }
  return out;
}

}  // namespace

SessionStats run_session(const ChannelParams& params, std::uint64_t n_events,
                         std::uint64_t seed, int threads, const RecordSink& sink) {
  validate(params);
  if (n_events < 1) throw std::domain_error("n_events must be >= 1");

  const std::uint64_t blocks = (n_events + kBlockEvents - 1) / kBlockEvents;
  const auto block_count = [&](std::uint64_t b) {
    return std::min(kBlockEvents, n_events - b * kBlockEvents);
  };

  std::vector<BlockPartial> partials(static_cast<std::size_t>(blocks));
  if (sink) {
    // Streaming keeps event order, so blocks run sequentially.
    std::vector<SignalRecord> buffer;
    buffer.reserve(static_cast<std::size_t>(std::min(kBlockEvents, n_events)));
    for (std::uint64_t b = 0; b < blocks; ++b) {
      buffer.clear();
      partials[static_cast<std::size_t>(b)] =
          simulate_block(params, seed, b, block_count(b), &buffer);
      for (const auto& rec : buffer) sink(rec);
    }
  } else {
    detail::parallel_for(static_cast<long long>(blocks), threads, [&](long long b) {
      partials[static_cast<std::size_t>(b)] = simulate_block(
          params, seed, static_cast<std::uint64_t>(b),
          block_count(static_cast<std::uint64_t>(b)), nullptr);
    });
  }

  SessionStats stats;
  detail::KahanSum clipped, clipped_sq;
  for (const auto& p : partials) {  // fixed block order
    stats.n_total += p.n;
    stats.n_selected += p.n_selected;
    stats.n_error_selected += p.n_error_selected;
    stats.n_eve_correct_selected += p.n_eve_correct_selected;
    for (int b = 0; b < 2; ++b) {
      auto& tally = b == 0 ? stats.basis_x : stats.basis_y;
      tally.n += p.basis[b].n;
      tally.n_selected += p.basis[b].n_selected;
      tally.n_error_selected += p.basis[b].n_error_selected;
    }
    clipped.add(p.sum_clipped);
    clipped_sq.add(p.sum_clipped_sq);
  }

  const double n = static_cast<double>(stats.n_total);
  if (stats.n_selected > 0) {
    stats.emp_error_selected =
        static_cast<double>(stats.n_error_selected) / static_cast<double>(stats.n_selected);
    stats.emp_eve_success_selected =
        static_cast<double>(stats.n_eve_correct_selected) /
        static_cast<double>(stats.n_selected);
  }
  stats.emp_rate = clipped.sum / n;
  if (stats.n_total > 1) {
    const double variance =
        std::max(0.0, (clipped_sq.sum - n * stats.emp_rate * stats.emp_rate) / (n - 1.0));
    stats.emp_rate_sem = std::sqrt(variance / n);
  }
  stats.eta = params.eta;
  stats.d = params.d;
  stats.seed = seed;
  return stats;
}

ConsistencyReport error_consistency_check(const SessionStats& stats,
                                          const ChannelParams& params,
                                          const GridSpec& grid) {
  validate(params);
  ConsistencyReport report;
  report.n_selected = stats.n_selected;
  report.analytic_error = selection_conditioned_error(params, grid);
  report.empirical_error = stats.emp_error_selected;
  if (stats.n_selected == 0) {
    report.sigma = std::numeric_limits<double>::infinity();
    report.z_score = 0.0;
    report.consistent = true;  // nothing to compare
    return report;
  }
  report.sigma = std::sqrt(report.analytic_error * (1.0 - report.analytic_error) /
                           static_cast<double>(stats.n_selected));
  report.z_score = (report.empirical_error - report.analytic_error) / report.sigma;
  report.consistent = std::abs(report.z_score) <= 3.0;
  return report;
}

}  // namespace cvqkd
