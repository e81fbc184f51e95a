#pragma once

#include <cstdint>
#include <string>

#include "cvqkd/postselect.hpp"

namespace CLI {
class App;
}

namespace cvqkd::cli {

struct RunConfig {
  std::string command;
  double eta = 0.0;  // set by exactly one of --eta / --loss / --loss-db
  double d = 2.1;
  GridSpec grid;
  std::uint64_t n_events = 1'000'000;
  std::uint64_t seed = 1;
  std::string output = "-";  // "-" means stdout
  std::string format;        // resolved per command when left empty
  int threads = 0;           // 0: use CVQKD_THREADS or 1
  double d_min = 0.1;
  double d_max = 10.0;
  std::string events_out;    // simulate: optional per-event CSV log
  std::string boundary_out;  // map: optional per-row threshold CSV
  bool check = false;        // simulate: run the error consistency check
};

// Wires the keyrate/optimize/map/simulate subcommands onto the app. After a
// successful parse, cfg holds the resolved configuration.
void build_cli(CLI::App& app, RunConfig& cfg);

// Fills command-dependent defaults (format, threads from CVQKD_THREADS).
void resolve_defaults(RunConfig& cfg);

}  // namespace cvqkd::cli
