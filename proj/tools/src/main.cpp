#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "run_config.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "Key rates, selection-region maps and protocol simulation for "
      "postselected continuous-variable quantum key distribution"};
  cvqkd::cli::RunConfig cfg;
  cvqkd::cli::build_cli(app, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // 0 covers --help and --version
  }

  try {
    return cvqkd::cli::run_command(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
