#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cvqkd/montecarlo.hpp"
#include "emit.hpp"
#include "run_config.hpp"

using namespace cvqkd;
using cvqkd::cli::RunConfig;

namespace {

// Parses argv the way the binary would; throws CLI::ParseError on bad input.
RunConfig parse(std::vector<std::string> args) {
  CLI::App app{"test"};
  RunConfig cfg;
  cvqkd::cli::build_cli(app, cfg);
  std::vector<const char*> argv{"cvqkd"};
  for (const auto& a : args) argv.push_back(a.c_str());
  app.parse(static_cast<int>(argv.size()), argv.data());
  return cfg;
}

std::size_t count_lines(const std::string& text) {
  std::size_t lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  return lines;
}

}  // namespace

TEST_CASE("keyrate arguments parse with eta, loss or dB loss") {
  const RunConfig by_eta = parse({"keyrate", "--eta", "0.5", "--d", "2.1"});
  CHECK(by_eta.command == "keyrate");
  CHECK(by_eta.eta == 0.5);
  CHECK(by_eta.d == 2.1);

  const RunConfig by_loss = parse({"keyrate", "--loss", "0.5"});
  CHECK(by_loss.eta == 0.5);  // 1 - 0.5, exact

  const RunConfig by_db = parse({"keyrate", "--loss-db", "3"});
  CHECK(by_db.eta == doctest::Approx(0.5011872336272722).epsilon(1e-15));
}

TEST_CASE("transmission must be given exactly once") {
  CHECK_THROWS_AS(parse({"keyrate"}), CLI::ParseError);
  CHECK_THROWS_AS(parse({"keyrate", "--eta", "0.5", "--loss", "0.5"}),
                  CLI::ParseError);
  CHECK_THROWS_AS(parse({"keyrate", "--loss", "0.3", "--loss-db", "3"}),
                  CLI::ParseError);
}

TEST_CASE("unknown flags and subcommands are rejected") {
  CHECK_THROWS_AS(parse({"keyrate", "--eta", "0.5", "--bogus", "1"}), CLI::ParseError);
  CHECK_THROWS_AS(parse({"frobnicate"}), CLI::ParseError);
  CHECK_THROWS_AS(parse({}), CLI::ParseError);
  CHECK_THROWS_AS(parse({"keyrate", "--eta", "0.5", "--format", "xml"}),
                  CLI::ParseError);
}

TEST_CASE("grid and simulation flags reach the config") {
  const RunConfig cfg = parse({"simulate", "--loss", "0.5", "--d", "2.1", "--n",
                               "5000", "--seed", "9", "--n-e", "201", "--n-x", "401",
                               "--check", "--threads", "2"});
  CHECK(cfg.command == "simulate");
  CHECK(cfg.n_events == 5000);
  CHECK(cfg.seed == 9);
  CHECK(cfg.grid.n_e == 201);
  CHECK(cfg.grid.n_x == 401);
  CHECK(cfg.check);
  CHECK(cfg.threads == 2);
}

TEST_CASE("config file supplies key = value defaults") {
  const std::string path = "test_cli_io_config.tmp";
  {
    std::ofstream file(path);
    file << "# comment line\n";
    file << "[keyrate]\n";
    file << "loss = 0.5\n";
    file << "d = 3.25\n";
    file << "n-e = 101\n";
  }
  const RunConfig cfg = parse({"keyrate", "--config", path});
  std::remove(path.c_str());
  CHECK(cfg.eta == 0.5);
  CHECK(cfg.d == 3.25);
  CHECK(cfg.grid.n_e == 101);

  // explicit flags win over config values
  {
    std::ofstream file(path);
    file << "[keyrate]\nloss = 0.5\nd = 3.25\n";
  }
  const RunConfig overridden = parse({"keyrate", "--config", path, "--d", "1.5"});
  std::remove(path.c_str());
  CHECK(overridden.d == 1.5);
}

TEST_CASE("format defaults depend on the command") {
  RunConfig keyrate = parse({"keyrate", "--eta", "0.5"});
  cvqkd::cli::resolve_defaults(keyrate);
  CHECK(keyrate.format == "json");

  RunConfig map = parse({"map", "--eta", "0.5"});
  cvqkd::cli::resolve_defaults(map);
  CHECK(map.format == "csv");
  CHECK(map.threads >= 1);
}

TEST_CASE("thread default honors the environment variable") {
  setenv("CVQKD_THREADS", "3", 1);
  RunConfig from_env = parse({"keyrate", "--eta", "0.5"});
  cvqkd::cli::resolve_defaults(from_env);
  CHECK(from_env.threads == 3);

  RunConfig explicit_flag = parse({"keyrate", "--eta", "0.5", "--threads", "2"});
  cvqkd::cli::resolve_defaults(explicit_flag);
  CHECK(explicit_flag.threads == 2);
  unsetenv("CVQKD_THREADS");
}

TEST_CASE("key-rate JSON carries the six stable fields") {
  KeyRateResult result;
  result.rate = 0.066429928325821105;
  result.selected_mass = 0.45351366693356882;
  result.d_used = 2.1;
  result.eta_used = 0.5;
  result.converged = true;
  const auto json = cvqkd::cli::to_json(result);
  for (const char* field :
       {"rate", "selected_mass", "d", "eta", "grid", "converged"}) {
    CHECK(json.contains(field));
  }
  // round-trip precision through the serialized text
  const auto reparsed = nlohmann::json::parse(json.dump());
  CHECK(reparsed["rate"].get<double>() == result.rate);
  CHECK(reparsed["selected_mass"].get<double>() == result.selected_mass);
  CHECK(reparsed["grid"]["n_e"].get<int>() == 801);
}

TEST_CASE("info map CSV has one row per node") {
  InfoMapGrid map;
  map.e_nodes = {0.0, 0.5, 1.0};
  map.x_nodes = {-1.0, 0.0, 1.0};
  map.values = {0, 0, 0, -0.1, 0.2, -0.1, -0.3, 0.4, -0.3};
  map.boundary = {std::nan(""), 0.25, 0.75};
  const std::string csv = cvqkd::cli::to_csv(map);
  CHECK(csv.rfind("E,x,delta_I\n", 0) == 0);
  CHECK(count_lines(csv) == 1 + map.values.size());

  const std::string boundary = cvqkd::cli::boundary_csv(map);
  CHECK(boundary.rfind("E,x_star\n", 0) == 0);
  CHECK(count_lines(boundary) == 3);  // header plus the two finite rows
}

TEST_CASE("session JSON counts stay consistent") {
  const SessionStats stats = run_session({0.5, 2.1}, 20000, 4);
  const auto json = cvqkd::cli::to_json(stats);
  const auto x = json["basis"]["X"];
  const auto y = json["basis"]["Y"];
  CHECK(x["n"].get<std::uint64_t>() + y["n"].get<std::uint64_t>() ==
        json["n_total"].get<std::uint64_t>());
  CHECK(x["n_selected"].get<std::uint64_t>() + y["n_selected"].get<std::uint64_t>() ==
        json["n_selected"].get<std::uint64_t>());
  CHECK(x["n_error_selected"].get<std::uint64_t>() +
            y["n_error_selected"].get<std::uint64_t>() ==
        json["n_error_selected"].get<std::uint64_t>());
  CHECK(json["n_total"].get<std::uint64_t>() == 20000);
  CHECK(json["emp_rate"].get<double>() == stats.emp_rate);
}

TEST_CASE("event CSV matches the documented schema") {
  CHECK(cvqkd::cli::event_csv_header() ==
        "amp_q,amp_p,basis,bit,x_out,eve_correct,selected\n");
  SignalRecord rec;
  rec.amp_q = 0.25;
  rec.amp_p = -1.5;
  rec.basis = Basis::Y;
  rec.bit = 1;
  rec.x_out = -0.75;
  rec.eve_correct = true;
  rec.selected = false;
  CHECK(cvqkd::cli::event_csv_row(rec) == "0.25,-1.5,Y,1,-0.75,1,0\n");
}

TEST_CASE("seventeen significant digits round-trip any double") {
  std::mt19937_64 gen(2718);
  std::uniform_real_distribution<double> mantissa(-1.0, 1.0);
  std::uniform_int_distribution<int> exponent(-30, 30);
  for (int i = 0; i < 10000; ++i) {
    const double value = std::ldexp(mantissa(gen), exponent(gen));
    const std::string text = cvqkd::cli::format_double(value);
    CHECK(std::strtod(text.c_str(), nullptr) == value);
  }
}
