#include "emit.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace cvqkd::cli {

namespace {

Json grid_json(const GridSpec& grid) {
  return Json{{"e_max", grid.e_max},
              {"x_max", grid.x_max},
              {"n_e", grid.n_e},
              {"n_x", grid.n_x}};
}

Json tally_json(const BasisTally& tally) {
  return Json{{"n", tally.n},
              {"n_selected", tally.n_selected},
              {"n_error_selected", tally.n_error_selected}};
}

}  // namespace

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

Json to_json(const KeyRateResult& result) {
  return Json{{"rate", result.rate},
              {"selected_mass", result.selected_mass},
              {"d", result.d_used},
              {"eta", result.eta_used},
              {"grid", grid_json(result.grid)},
              {"converged", result.converged}};
}

Json to_json(const OptimizeDResult& result) {
  return Json{{"d_star", result.d_star},
              {"on_boundary", result.on_boundary},
              {"scan_unimodal", result.scan_unimodal},
              {"result", to_json(result.result)}};
}

Json to_json(const SessionStats& stats) {
  return Json{{"eta", stats.eta},
              {"d", stats.d},
              {"seed", stats.seed},
              {"n_total", stats.n_total},
              {"n_selected", stats.n_selected},
              {"n_error_selected", stats.n_error_selected},
              {"n_eve_correct_selected", stats.n_eve_correct_selected},
              {"basis", Json{{"X", tally_json(stats.basis_x)},
                             {"Y", tally_json(stats.basis_y)}}},
              {"emp_error_selected", stats.emp_error_selected},
              {"emp_eve_success_selected", stats.emp_eve_success_selected},
              {"emp_rate", stats.emp_rate},
              {"emp_rate_sem", stats.emp_rate_sem}};
}

Json to_json(const ConsistencyReport& report) {
  return Json{{"empirical_error", report.empirical_error},
              {"analytic_error", report.analytic_error},
              {"sigma", report.sigma},
              {"z_score", report.z_score},
              {"consistent", report.consistent},
              {"n_selected", report.n_selected}};
}

Json to_json(const InfoMapGrid& map) {
  Json boundary = Json::array();
  for (double b : map.boundary) {
    if (std::isnan(b))
      boundary.push_back(nullptr);
    else
      boundary.push_back(b);
  }
  return Json{{"e_nodes", map.e_nodes},
              {"x_nodes", map.x_nodes},
              {"values", map.values},
              {"boundary", boundary}};
}

std::string to_csv(const KeyRateResult& result) {
  std::string out = "rate,selected_mass,d,eta,e_max,x_max,n_e,n_x,converged\n";
  out += format_double(result.rate) + ',' + format_double(result.selected_mass) + ',' +
         format_double(result.d_used) + ',' + format_double(result.eta_used) + ',' +
         format_double(result.grid.e_max) + ',' + format_double(result.grid.x_max) + ',' +
         std::to_string(result.grid.n_e) + ',' + std::to_string(result.grid.n_x) + ',' +
         (result.converged ? "true" : "false") + '\n';
  return out;
}

std::string to_csv(const OptimizeDResult& result) {
  std::string out =
      "d_star,on_boundary,scan_unimodal,rate,selected_mass,eta,converged\n";
  out += format_double(result.d_star) + ',' +
         std::string(result.on_boundary ? "true" : "false") + ',' +
         (result.scan_unimodal ? "true" : "false") + ',' +
         format_double(result.result.rate) + ',' +
         format_double(result.result.selected_mass) + ',' +
         format_double(result.result.eta_used) + ',' +
         (result.result.converged ? "true" : "false") + '\n';
  return out;
}

std::string to_csv(const SessionStats& stats) {
  std::string out =
      "eta,d,seed,n_total,n_selected,n_error_selected,n_eve_correct_selected,"
      "emp_error_selected,emp_eve_success_selected,emp_rate,emp_rate_sem\n";
  out += format_double(stats.eta) + ',' + format_double(stats.d) + ',' +
         std::to_string(stats.seed) + ',' + std::to_string(stats.n_total) + ',' +
         std::to_string(stats.n_selected) + ',' + std::to_string(stats.n_error_selected) +
         ',' + std::to_string(stats.n_eve_correct_selected) + ',' +
         format_double(stats.emp_error_selected) + ',' +
         format_double(stats.emp_eve_success_selected) + ',' +
         format_double(stats.emp_rate) + ',' + format_double(stats.emp_rate_sem) + '\n';
  return out;
}

std::string to_csv(const InfoMapGrid& map) {
  std::string out = "E,x,delta_I\n";
  const std::size_t n_x = map.x_nodes.size();
  out.reserve(out.size() + map.values.size() * 24);
  for (std::size_t i = 0; i < map.e_nodes.size(); ++i) {
    const std::string e_str = format_double(map.e_nodes[i]);
    for (std::size_t j = 0; j < n_x; ++j) {
      out += e_str;
      out += ',';
      out += format_double(map.x_nodes[j]);
      out += ',';
      out += format_double(map.values[i * n_x + j]);
      out += '\n';
    }
  }
  return out;
}

std::string boundary_csv(const InfoMapGrid& map) {
  std::string out = "E,x_star\n";
  for (std::size_t i = 0; i < map.e_nodes.size(); ++i) {
    if (std::isnan(map.boundary[i])) continue;
    out += format_double(map.e_nodes[i]) + ',' + format_double(map.boundary[i]) + '\n';
  }
  return out;
}

std::string event_csv_header() {
  return "amp_q,amp_p,basis,bit,x_out,eve_correct,selected\n";
}

std::string event_csv_row(const SignalRecord& record) {
  std::string out = format_double(record.amp_q);
  out += ',';
  out += format_double(record.amp_p);
  out += ',';
  out += record.basis == Basis::X ? 'X' : 'Y';
  out += ',';
  out += static_cast<char>('0' + record.bit);
  out += ',';
  out += format_double(record.x_out);
  out += ',';
  out += record.eve_correct ? '1' : '0';
  out += ',';
  out += record.selected ? '1' : '0';
  out += '\n';
  return out;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output path: " + path);
  file << text;
  if (!file) throw std::runtime_error("failed writing output path: " + path);
}

}  // namespace cvqkd::cli
