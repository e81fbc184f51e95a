#include "run_config.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

namespace cvqkd::cli {

namespace {

// Transmission can be given as eta, as linear loss, or in dB; exactly one.
void add_transmission(CLI::App* sub, RunConfig& cfg) {
  auto* group = sub->add_option_group("transmission");
  group->add_option_function<double>(
      "--eta", [&cfg](double v) { cfg.eta = v; }, "Transmission efficiency in (0, 1]");
  group->add_option_function<double>(
      "--loss", [&cfg](double v) { cfg.eta = 1.0 - v; },
      "Linear loss fraction; eta = 1 - loss");
  group->add_option_function<double>(
      "--loss-db", [&cfg](double v) { cfg.eta = std::pow(10.0, -v / 10.0); },
      "Loss in dB; eta = 10^(-dB/10)");
  group->require_option(1);
}

void add_grid(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--e-max", cfg.grid.e_max, "Amplitude integration bound")
      ->capture_default_str();
  sub->add_option("--x-max", cfg.grid.x_max, "Outcome integration bound")
      ->capture_default_str();
  sub->add_option("--n-e", cfg.grid.n_e, "Amplitude node count")->capture_default_str();
  sub->add_option("--n-x", cfg.grid.n_x, "Outcome node count")->capture_default_str();
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("-o,--out", cfg.output, "Output path ('-' for stdout)")
      ->capture_default_str();
  sub->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--threads", cfg.threads,
                  "Worker threads (default: CVQKD_THREADS or 1)");
}

}  // namespace

void build_cli(CLI::App& app, RunConfig& cfg) {
  app.require_subcommand(1);
  app.fallthrough();  // lets --config follow the subcommand name
  app.set_config("--config", "",
                 "Config file with key = value lines; subcommand options go "
                 "under a [subcommand] section");

  auto* keyrate = app.add_subcommand(
      "keyrate", "Evaluate the postselected key rate by quadrature");
  add_transmission(keyrate, cfg);
  keyrate->add_option("--d", cfg.d, "Modulation width")->capture_default_str();
  add_grid(keyrate, cfg);
  add_common(keyrate, cfg);
  keyrate->callback([&cfg] { cfg.command = "keyrate"; });

  auto* optimize = app.add_subcommand(
      "optimize", "Search the modulation width maximizing the key rate");
  add_transmission(optimize, cfg);
  optimize->add_option("--d-min", cfg.d_min, "Search interval lower edge")
      ->capture_default_str();
  optimize->add_option("--d-max", cfg.d_max, "Search interval upper edge")
      ->capture_default_str();
  add_grid(optimize, cfg);
  add_common(optimize, cfg);
  optimize->callback([&cfg] { cfg.command = "optimize"; });

  auto* map = app.add_subcommand(
      "map", "Tabulate the information difference over the (E, x) grid");
  add_transmission(map, cfg);
  add_grid(map, cfg);
  map->add_option("--boundary-out", cfg.boundary_out,
                  "Also write the per-amplitude selection threshold CSV");
  add_common(map, cfg);
  map->callback([&cfg] { cfg.command = "map"; });

  auto* simulate = app.add_subcommand(
      "simulate", "Run the event-level protocol simulation");
  add_transmission(simulate, cfg);
  simulate->add_option("--d", cfg.d, "Modulation width")->capture_default_str();
  simulate->add_option("-n,--n", cfg.n_events, "Number of transmission events")
      ->capture_default_str();
  simulate->add_option("--seed", cfg.seed, "Master RNG seed")->capture_default_str();
  simulate->add_option("--events-out", cfg.events_out,
                       "Write the per-event CSV log (large)");
  simulate->add_flag("--check", cfg.check,
                     "Compare the selected error rate against quadrature");
  add_grid(simulate, cfg);  // used by --check
  add_common(simulate, cfg);
  simulate->callback([&cfg] { cfg.command = "simulate"; });
}

void resolve_defaults(RunConfig& cfg) {
  if (cfg.format.empty()) cfg.format = cfg.command == "map" ? "csv" : "json";
  if (cfg.threads <= 0) {
    cfg.threads = 1;
    if (const char* env = std::getenv("CVQKD_THREADS")) {
      const int parsed = std::atoi(env);
      if (parsed > 0) cfg.threads = parsed;
    }
  }
}

}  // namespace cvqkd::cli
