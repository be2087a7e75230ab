#pragma once

#include "kramers/experiments.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace kramers {

/// Comma-separated numbers, e.g. "0.2,0.1,0.05".
std::vector<double> parse_number_list(const std::string& text);

/// Shortest round-trip representation; "nan" / "inf" / "-inf" otherwise.
std::string format_double(double x);

/// Reads a CSV with a header line and at least n_cols numeric columns;
/// returns the first n_cols columns.
std::vector<std::vector<double>> read_columns(const std::string& path, std::size_t n_cols);

/// Writes header plus rows, creating parent directories.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

void write_text(const std::string& path, const std::string& text);

/// Keys: potential ("default" or coefficient list), eps, grid, steps, T
/// (units of 1/k), init, out, seed, richardson, rate_window, transform_nodes.
/// Unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// KRAMERS_OUT overrides the configured directory when set and non-empty.
std::string resolve_out_dir(const std::string& configured);

void write_report_csv(const ConvergenceReport& rep, const std::string& path);
nlohmann::json report_json(const ConvergenceReport& rep);

/// JSON numbers cannot hold nan / inf; those become strings.
nlohmann::json json_number(double x);

} // namespace kramers
