#pragma once

#include <string>

#include <json.hpp>

#include "cvqkd/montecarlo.hpp"
#include "cvqkd/postselect.hpp"

namespace cvqkd::cli {

using Json = nlohmann::ordered_json;

// Floating-point CSV fields carry 17 significant digits (value round-trip).
std::string format_double(double value);

Json to_json(const KeyRateResult& result);
Json to_json(const OptimizeDResult& result);
Json to_json(const SessionStats& stats);
Json to_json(const ConsistencyReport& report);
Json to_json(const InfoMapGrid& map);

std::string to_csv(const KeyRateResult& result);
std::string to_csv(const OptimizeDResult& result);
std::string to_csv(const SessionStats& stats);

// Row-major grid CSV with header E,x,delta_I; one row per node.
std::string to_csv(const InfoMapGrid& map);

// Per-amplitude selection threshold; rows without a boundary are skipped.
std::string boundary_csv(const InfoMapGrid& map);

std::string event_csv_header();
std::string event_csv_row(const SignalRecord& record);

// Writes text to the path, or to stdout when path is "-" or empty.
void write_output(const std::string& text, const std::string& path);

}  // namespace cvqkd::cli
