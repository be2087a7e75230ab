#include "kramers/io.hpp"

#include "kramers/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace kramers {

namespace {

double to_double(const std::string& raw) {
  std::size_t b = raw.find_first_not_of(" \t\r");
  std::size_t e = raw.find_last_not_of(" \t\r");
  if (b == std::string::npos)
    throw ValidationError("expected a number, got an empty field");
  const std::string s = raw.substr(b, e - b + 1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ValidationError("not a number: '" + s + "'");
  return v;
}

void ensure_parent(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty())
    std::filesystem::create_directories(parent);
}

} // namespace

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(to_double(item));
  if (out.empty())
    throw ValidationError("empty number list");
  return out;
}

std::string format_double(double x) {
  if (std::isnan(x))
    return "nan";
  if (std::isinf(x))
    return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::vector<std::vector<double>> read_columns(const std::string& path, std::size_t n_cols) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line))
    throw ValidationError("'" + path + "' is empty");
  std::vector<std::vector<double>> cols(n_cols);
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t c = 0;
    while (c < n_cols && std::getline(ss, cell, ','))
      cols[c++].push_back(to_double(cell));
    if (c < n_cols)
      throw ValidationError(path + ":" + std::to_string(lineno) + ": expected " +
                            std::to_string(n_cols) + " columns");
  }
  if (cols[0].empty())
    throw ValidationError("'" + path + "' has no data rows");
  return cols;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
  ensure_parent(path);
  std::ofstream out(path);
  if (!out)
    throw ValidationError("cannot write '" + path + "'");
  out << header << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i)
      out << (i ? "," : "") << format_double(r[i]);
    out << '\n';
  }
}

void write_text(const std::string& path, const std::string& text) {
  ensure_parent(path);
  std::ofstream out(path);
  if (!out)
    throw ValidationError("cannot write '" + path + "'");
  out << text;
}

RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object())
    throw ValidationError("config: top level must be an object");
  RunConfig c;
  try {
    for (const auto& [key, val] : j.items()) {
      if (key == "potential") {
        if (val.is_string()) {
          if (val.get<std::string>() != "default")
            throw ValidationError("config: unknown potential '" + val.get<std::string>() + "'");
          c.potential = default_potential();
        } else {
          c.potential = polynomial_potential(val.get<std::vector<double>>());
        }
      } else if (key == "eps") {
        c.eps = val.get<std::vector<double>>();
      } else if (key == "grid") {
        c.grid = val.get<int>();
      } else if (key == "steps") {
        c.steps = val.get<int>();
      } else if (key == "T") {
        c.T_over_k = val.get<double>();
      } else if (key == "init") {
        c.init = parse_init(val.get<std::string>());
      } else if (key == "out") {
        c.out_dir = val.get<std::string>();
      } else if (key == "seed") {
        c.seed = val.get<std::uint64_t>();
      } else if (key == "richardson") {
        c.richardson = val.get<bool>();
      } else if (key == "rate_window") {
        c.rate_window = val.get<double>();
      } else if (key == "transform_nodes") {
        c.transform_nodes = val.get<int>();
      } else {
        throw ValidationError("config: unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  if (c.eps.empty())
    throw ValidationError("config: eps list is empty");
  for (double e : c.eps)
    if (!(e >= 0.02 && e <= 1.0))
      throw ValidationError("config: eps values must lie in [0.02, 1]");
  if (!(c.T_over_k > 0.0))
    throw ValidationError("config: T must be positive");
  if (c.grid < 3 || c.steps < 1)
    throw ValidationError("config: need grid >= 3 and steps >= 1");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

std::string resolve_out_dir(const std::string& configured) {
  const char* env = std::getenv("KRAMERS_OUT");
  if (env && *env)
    return env;
  return configured;
}

void write_report_csv(const ConvergenceReport& rep, const std::string& path) {
  std::vector<std::vector<double>> rows;
  for (const auto& r : rep.rows)
    rows.push_back({r.eps, r.trace_L1, r.trace_sup, r.rate_obs, r.rate_ratio, r.watson,
                    r.affine_dev, r.J_eps, r.A_eps});
  write_csv(path, "eps,trace_L1,trace_sup,rate_obs,rate_ratio,watson,affine_dev,J_eps,A_eps",
            rows);
}

nlohmann::json json_number(double x) {
  if (std::isfinite(x))
    return x;
  return format_double(x);
}

nlohmann::json report_json(const ConvergenceReport& rep) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"eps", r.eps},
                    {"trace_L1", json_number(r.trace_L1)},
                    {"trace_sup", json_number(r.trace_sup)},
                    {"rate_obs", json_number(r.rate_obs)},
                    {"rate_ratio", json_number(r.rate_ratio)},
                    {"watson", json_number(r.watson)},
                    {"affine_dev", json_number(r.affine_dev)},
                    {"J_eps", json_number(r.J_eps)},
                    {"A_eps", json_number(r.A_eps)}});
  return {{"k", rep.k}, {"J0", json_number(rep.J0)}, {"rows", rows}};
}

} // namespace kramers
