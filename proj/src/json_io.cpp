#include "fbc/json_io.hpp"

#include <cstdio>

#include "fbc/errors.hpp"

namespace fbc {

namespace {

std::vector<std::vector<double>> matrix_from(const ordered_json& j, const char* what) {
  if (!j.is_array() || j.empty())
    throw validation_error(std::string(what) + " must be a nonempty array of rows");
  std::vector<std::vector<double>> m;
  m.reserve(j.size());
  for (const auto& row : j) {
    if (!row.is_array() || row.empty())
      throw validation_error(std::string(what) + " rows must be nonempty arrays");
    std::vector<double> r;
    r.reserve(row.size());
    for (const auto& v : row) {
      if (!v.is_number()) throw validation_error(std::string(what) + " entries must be numbers");
      r.push_back(v.get<double>());
    }
    m.push_back(std::move(r));
  }
  return m;
}

std::vector<double> vector_from(const ordered_json& j, const char* what) {
  if (!j.is_array() || j.empty())
    throw validation_error(std::string(what) + " must be a nonempty array");
  std::vector<double> v;
  v.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number()) throw validation_error(std::string(what) + " entries must be numbers");
    v.push_back(e.get<double>());
  }
  return v;
}

}  // namespace

ordered_json parse_json_text(const std::string& text) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) throw validation_error("input is not valid JSON");
  return j;
}

DiscreteChannel channel_from_json(const ordered_json& j) {
  const ordered_json* m = &j;
  if (j.is_object()) {
    if (!j.contains("matrix")) throw validation_error("channel object lacks a \"matrix\" key");
    m = &j.at("matrix");
  }
  auto rows = matrix_from(*m, "channel matrix");
  // size before move, argument evaluation order is unspecified
  std::size_t nx = rows.size();
  std::size_t ny = rows.front().size();
  return DiscreteChannel(nx, ny, std::move(rows));
}

std::optional<ProbabilityVector> input_law_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("input_law")) return std::nullopt;
  return ProbabilityVector(vector_from(j.at("input_law"), "input law"));
}

CostFunction cost_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("costs") || !j.contains("cap"))
    throw validation_error("cost object needs \"costs\" and \"cap\"");
  if (!j.at("cap").is_number()) throw validation_error("cost cap must be a number");
  return CostFunction(vector_from(j.at("costs"), "cost vector"), j.at("cap").get<double>());
}

MarkovNoise markov_from_json(const ordered_json& j) {
  const ordered_json* m = &j;
  if (j.is_object()) {
    if (!j.contains("transition"))
      throw validation_error("noise object lacks a \"transition\" key");
    m = &j.at("transition");
  }
  auto rows = matrix_from(*m, "transition matrix");
  std::size_t d = rows.size();
  return MarkovNoise(d, std::move(rows));
}

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_table(const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_g17(row[i]);
    }
    out += '\n';
  }
  return out;
}

ordered_json json_table(const std::vector<std::string>& columns,
                        const std::vector<std::vector<double>>& rows) {
  ordered_json j;
  j["columns"] = columns;
  j["rows"] = rows;
  return j;
}

std::string scalar_csv(const std::vector<std::pair<std::string, std::string>>& kv) {
  std::string out = "key,value\n";
  for (const auto& [k, v] : kv) {
    out += k;
    out += ',';
    out += v;
    out += '\n';
  }
  return out;
}

}  // namespace fbc
