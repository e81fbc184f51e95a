#include "cvqkd/postselect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cvqkd/coherent_info.hpp"
#include "parallel.hpp"
#include "summation.hpp"

namespace cvqkd {

void validate(const GridSpec& grid) {
  if (!(grid.e_max > 0.0 && grid.x_max > 0.0))
    throw std::domain_error("GridSpec: bounds must be positive");
  if (grid.n_e < 2 || grid.n_x < 2)
    throw std::domain_error("GridSpec: need at least two nodes per axis");
}

GridSpec covering_grid(const ChannelParams& params) {
  validate(params);
  GridSpec grid;
  // 10 sigma of the amplitude marginal, 8 sigma of outcome noise past the
  // largest mean; truncated tail mass is far below 1e-12.
  grid.e_max = std::max(4.0, 5.0 * std::sqrt(params.d));
  grid.x_max = std::sqrt(params.eta) * grid.e_max + 4.0;
  return grid;
}

double joint_density(const ChannelParams& params, double amplitude, double outcome) {
  validate(params);
  // Folded amplitude Gaussian (the factor 2 folds the full line onto E >= 0)
  // times the equal mixture of the two conditional outcome densities.
  const double amp_marginal = 2.0 * std::sqrt(2.0 / (params.d * std::numbers::pi)) *
                              std::exp(-2.0 * amplitude * amplitude / params.d);
  const double mix = 0.5 * (bob_conditional_density(params.eta, amplitude, outcome, 0) +
                            bob_conditional_density(params.eta, amplitude, outcome, 1));
  return amp_marginal * mix;
}

bool is_selected(double eta, double amplitude, double outcome) {
  return delta_info(eta, amplitude, outcome) > 0.0;
}

std::optional<double> boundary_x(double eta, double amplitude) {
  if (!(eta > 0.0 && eta <= 1.0))
    throw std::domain_error("transmission eta must be in (0, 1]");
  if (!(amplitude >= 0.0))
    throw std::domain_error("effective amplitude must be >= 0");
  if (amplitude == 0.0) return std::nullopt;  // information difference is identically 0

  const double i_ae = eve_info(eta, amplitude);
  if (i_ae >= 1.0) return std::nullopt;  // saturated: no outcome can compensate
  if (i_ae == 0.0) return 0.0;           // lossless channel: every |x| > 0 is selected

  // delta_info rises monotonically in |x| from -i_ae to 1 - i_ae > 0.
  double lo = 0.0;
  double hi = 1.0;
  while (delta_info(eta, amplitude, hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e9) return std::nullopt;
  }
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (delta_info(eta, amplitude, mid) > 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

const double kSqrt2OverPi = std::sqrt(2.0 / std::numbers::pi);

// Composite Newton-Cotes weights on n uniform nodes with spacing h:
// Simpson 1/3 panels, with a 3/8 tail when the interval count is odd,
// plain trapezoid for n = 2.
std::vector<double> quadrature_weights(int n, double h) {
  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  if (n == 2) {
    w[0] = w[1] = 0.5 * h;
    return w;
  }
  const bool tail38 = ((n - 1) % 2) != 0;
  const int simpson_end = tail38 ? n - 4 : n - 1;
  for (int i = 0; i + 2 <= simpson_end; i += 2) {
    w[i] += h / 3.0;
    w[i + 1] += 4.0 * h / 3.0;
    w[i + 2] += h / 3.0;
  }
  if (tail38) {
    const double k = 3.0 * h / 8.0;
    w[n - 4] += k;
    w[n - 3] += 3.0 * k;
    w[n - 2] += 3.0 * k;
    w[n - 1] += k;
  }
  return w;
}

// Symmetric outcome node: exactly antisymmetric under j -> n-1-j.
double outcome_node(int j, int n, double x_max) {
  return (2.0 * j - (n - 1)) * (x_max / (n - 1));
}

struct GridTotals {
  double rate = 0.0;     // integral of density * positive part of delta_info
  double mass = 0.0;     // integral of density over the selected region
  double err_num = 0.0;  // integral of density * p_e over the selected region
  double density = 0.0;  // integral of density alone
};

// One pass of tensor-product quadrature. Rows (fixed amplitude) are
// independent; the reduction over rows runs in index order so the result
// does not depend on the thread count. When n_x is odd the even integrand
// is folded onto x >= 0, which reproduces the full-range rule exactly.
GridTotals integrate_grid(const ChannelParams& params, const GridSpec& grid, int threads) {
  const double h_e = grid.e_max / (grid.n_e - 1);
  const auto w_e = quadrature_weights(grid.n_e, h_e);

  const bool fold = (grid.n_x % 2) == 1;
  const int nx = fold ? (grid.n_x + 1) / 2 : grid.n_x;
  const double h_x = fold ? grid.x_max / (nx - 1) : 2.0 * grid.x_max / (grid.n_x - 1);
  const auto w_x = quadrature_weights(nx, h_x);
  const double x_scale = fold ? 2.0 : 1.0;

  const double amp_norm = 2.0 * std::sqrt(2.0 / (params.d * std::numbers::pi));

  std::vector<GridTotals> rows(static_cast<std::size_t>(grid.n_e));
  detail::parallel_for(grid.n_e, threads, [&](long long i) {
    const double amplitude = h_e * static_cast<double>(i);
    const double i_ae = eve_info(params.eta, amplitude);
    const double mean = std::sqrt(params.eta) * amplitude;
    const double amp_marginal =
        amp_norm * std::exp(-2.0 * amplitude * amplitude / params.d);
    GridTotals row;
    for (int j = 0; j < nx; ++j) {
      const double x = fold ? h_x * j : outcome_node(j, nx, grid.x_max);
      const double u0 = x - mean;
      const double u1 = x + mean;
      const double density = amp_marginal * 0.5 * kSqrt2OverPi *
                             (std::exp(-2.0 * u0 * u0) + std::exp(-2.0 * u1 * u1));
      const double weighted = w_x[static_cast<std::size_t>(j)] * density;
      row.density += weighted;
      const double p_e = 1.0 / (1.0 + std::exp(8.0 * mean * std::abs(x)));
      const double difference = bob_info(p_e) - i_ae;
      if (difference > 0.0) {
        row.rate += weighted * difference;
        row.mass += weighted;
        row.err_num += weighted * p_e;
      }
    }
    rows[static_cast<std::size_t>(i)] = row;
  });

  detail::KahanSum rate, mass, err_num, density;
  for (int i = 0; i < grid.n_e; ++i) {
    const double w = w_e[static_cast<std::size_t>(i)];
    rate.add(w * rows[static_cast<std::size_t>(i)].rate);
    mass.add(w * rows[static_cast<std::size_t>(i)].mass);
    err_num.add(w * rows[static_cast<std::size_t>(i)].err_num);
    density.add(w * rows[static_cast<std::size_t>(i)].density);
  }
  return {x_scale * rate.sum, x_scale * mass.sum, x_scale * err_num.sum,
          x_scale * density.sum};
}

GridSpec doubled(const GridSpec& grid) {
  return {grid.e_max, grid.x_max, 2 * grid.n_e - 1, 2 * grid.n_x - 1};
}

}  // namespace

KeyRateResult key_rate(const ChannelParams& params, const GridSpec& grid, int threads) {
  validate(params);
  validate(grid);
  const GridTotals base = integrate_grid(params, grid, threads);
  const GridTotals fine = integrate_grid(params, doubled(grid), threads);

  KeyRateResult result;
  result.rate = base.rate;
  result.selected_mass = base.mass;
  result.d_used = params.d;
  result.eta_used = params.eta;
  result.grid = grid;
  const double scale = std::max(std::abs(base.rate), std::abs(fine.rate));
  result.converged = std::abs(fine.rate - base.rate) <= 0.005 * scale + 1e-300;
  return result;
}

double density_mass(const ChannelParams& params, const GridSpec& grid, int threads) {
  validate(params);
  validate(grid);
  return integrate_grid(params, grid, threads).density;
}

double selection_conditioned_error(const ChannelParams& params, const GridSpec& grid,
                                   int threads) {
  validate(params);
  validate(grid);
  const GridTotals totals = integrate_grid(params, grid, threads);
  if (!(totals.mass > 0.0))
    throw std::runtime_error("selection region carries no probability mass");
  return totals.err_num / totals.mass;
}

InfoMapGrid info_map(double eta, const GridSpec& grid, int threads) {
  if (!(eta > 0.0 && eta <= 1.0))
    throw std::domain_error("transmission eta must be in (0, 1]");
  validate(grid);

  InfoMapGrid map;
  map.e_nodes.resize(static_cast<std::size_t>(grid.n_e));
  map.x_nodes.resize(static_cast<std::size_t>(grid.n_x));
  map.values.resize(static_cast<std::size_t>(grid.n_e) * grid.n_x);
  map.boundary.resize(static_cast<std::size_t>(grid.n_e));

  const double h_e = grid.e_max / (grid.n_e - 1);
  for (int i = 0; i < grid.n_e; ++i)
    map.e_nodes[static_cast<std::size_t>(i)] = h_e * i;
  for (int j = 0; j < grid.n_x; ++j)
    map.x_nodes[static_cast<std::size_t>(j)] = outcome_node(j, grid.n_x, grid.x_max);

  detail::parallel_for(grid.n_e, threads, [&](long long i) {
    const double amplitude = map.e_nodes[static_cast<std::size_t>(i)];
    const double i_ae = eve_info(eta, amplitude);
    double* row = map.values.data() + static_cast<std::size_t>(i) * grid.n_x;
    for (int j = 0; j < grid.n_x; ++j)
      row[j] = bob_info(error_prob(eta, amplitude, map.x_nodes[static_cast<std::size_t>(j)])) - i_ae;
    const auto threshold = boundary_x(eta, amplitude);
    map.boundary[static_cast<std::size_t>(i)] =
        threshold ? *threshold : std::numeric_limits<double>::quiet_NaN();
  });
  return map;
}

OptimizeDResult optimize_d(double eta, const GridSpec& grid, double d_lo, double d_hi,
                           int threads) {
  if (!(eta > 0.0 && eta <= 1.0))
    throw std::domain_error("transmission eta must be in (0, 1]");
  if (!(d_lo > 0.0 && d_hi > d_lo))
    throw std::domain_error("search interval must satisfy 0 < d_lo < d_hi");
  validate(grid);

  const auto rate_at = [&](double d) {
    return integrate_grid({eta, d}, grid, threads).rate;
  };

  // Coarse scan: locates the bracketing triple and checks unimodality
  // instead of assuming it.
  constexpr int kScanPoints = 21;
  double scan_d[kScanPoints];
  double scan_r[kScanPoints];
  const double step = (d_hi - d_lo) / (kScanPoints - 1);
  int best = 0;
  for (int i = 0; i < kScanPoints; ++i) {
    scan_d[i] = d_lo + step * i;
    scan_r[i] = rate_at(scan_d[i]);
    if (scan_r[i] > scan_r[best]) best = i;
  }
  bool unimodal = true;
  for (int i = 0; i < kScanPoints - 1; ++i) {
    const double tolerance = 1e-12 + 1e-9 * std::abs(scan_r[i]);
    if (i < best && scan_r[i + 1] < scan_r[i] - tolerance) unimodal = false;
    if (i >= best && scan_r[i + 1] > scan_r[i] + tolerance) unimodal = false;
  }

  // Golden-section refinement inside the bracketing coarse interval.
  constexpr double kTolerance = 1e-3;
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = scan_d[std::max(best - 1, 0)];
  double b = scan_d[std::min(best + 1, kScanPoints - 1)];
  double c1 = b - inv_phi * (b - a);
  double c2 = a + inv_phi * (b - a);
  double f1 = rate_at(c1);
  double f2 = rate_at(c2);
  while (b - a > kTolerance) {
    if (f1 >= f2) {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - inv_phi * (b - a);
      f1 = rate_at(c1);
    } else {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + inv_phi * (b - a);
      f2 = rate_at(c2);
    }
  }

  OptimizeDResult out;
  out.d_star = 0.5 * (a + b);
  out.result = key_rate({eta, out.d_star}, grid, threads);
  out.on_boundary = (out.d_star - d_lo <= kTolerance) || (d_hi - out.d_star <= kTolerance);
  out.scan_unimodal = unimodal;
  return out;
}

}  // namespace cvqkd
