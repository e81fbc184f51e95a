#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <stdexcept>

#include "cvqkd/montecarlo.hpp"
#include "cvqkd/postselect.hpp"
#include "emit.hpp"

namespace cvqkd::cli {

namespace {

std::string render(const Json& json) { return json.dump(2) + '\n'; }

int run_keyrate(const RunConfig& cfg) {
  const ChannelParams params{cfg.eta, cfg.d};
  const KeyRateResult result = key_rate(params, cfg.grid, cfg.threads);
  write_output(cfg.format == "csv" ? to_csv(result) : render(to_json(result)),
               cfg.output);
  if (!result.converged) {
    std::cerr << "warning: rate not converged at this grid (doubling the nodes "
                 "moves it by more than 0.5 %)\n";
    return 1;
  }
  return 0;
}

int run_optimize(const RunConfig& cfg) {
  const OptimizeDResult result =
      optimize_d(cfg.eta, cfg.grid, cfg.d_min, cfg.d_max, cfg.threads);
  if (!result.scan_unimodal)
    std::cerr << "warning: coarse scan of rate(d) is not unimodal; refined "
                 "optimum may be local\n";
  if (result.on_boundary)
    std::cerr << "warning: optimum lies on the search interval boundary\n";
  write_output(cfg.format == "csv" ? to_csv(result) : render(to_json(result)),
               cfg.output);
  return result.result.converged ? 0 : 1;
}

int run_map(const RunConfig& cfg) {
  const InfoMapGrid map = info_map(cfg.eta, cfg.grid, cfg.threads);
  if (cfg.format == "csv") {
    write_output(to_csv(map), cfg.output);
  } else {
    Json json = to_json(map);
    json["eta"] = cfg.eta;
    json["grid"] = Json{{"e_max", cfg.grid.e_max},
                        {"x_max", cfg.grid.x_max},
                        {"n_e", cfg.grid.n_e},
                        {"n_x", cfg.grid.n_x}};
    write_output(render(json), cfg.output);
  }
  if (!cfg.boundary_out.empty()) write_output(boundary_csv(map), cfg.boundary_out);
  return 0;
}

int run_simulate(const RunConfig& cfg) {
  const ChannelParams params{cfg.eta, cfg.d};

  SessionStats stats;
  if (!cfg.events_out.empty()) {
    std::ofstream log(cfg.events_out, std::ios::binary);
    if (!log) throw std::runtime_error("cannot open output path: " + cfg.events_out);
    log << event_csv_header();
    stats = run_session(params, cfg.n_events, cfg.seed, cfg.threads,
                        [&log](const SignalRecord& rec) { log << event_csv_row(rec); });
    if (!log) throw std::runtime_error("failed writing output path: " + cfg.events_out);
  } else {
    stats = run_session(params, cfg.n_events, cfg.seed, cfg.threads);
  }

  int exit_code = 0;
  ConsistencyReport report;
  if (cfg.check) {
    report = error_consistency_check(stats, params, cfg.grid);
    if (!report.consistent) {
      std::cerr << "warning: selected error rate deviates from quadrature by "
                << report.z_score << " sigma\n";
      exit_code = 1;
    }
  }
  if (cfg.format == "csv") {
    write_output(to_csv(stats), cfg.output);
    if (cfg.check)
      std::cerr << "consistency: empirical " << format_double(report.empirical_error)
                << " vs analytic " << format_double(report.analytic_error) << " (z = "
                << format_double(report.z_score) << ")\n";
  } else {
    Json json = to_json(stats);
    if (cfg.check) json["consistency"] = to_json(report);
    write_output(render(json), cfg.output);
  }
  return exit_code;
}

}  // namespace

int run_command(RunConfig cfg) {
  resolve_defaults(cfg);
  if (cfg.command == "keyrate") return run_keyrate(cfg);
  if (cfg.command == "optimize") return run_optimize(cfg);
  if (cfg.command == "map") return run_map(cfg);
  if (cfg.command == "simulate") return run_simulate(cfg);
  throw std::invalid_argument("unknown command: " + cfg.command);
}

}  // namespace cvqkd::cli
