#include <cstdio>
#include <cstdlib>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "xydm/free_fermion.hpp"
#include "xydm/probes.hpp"
#include "xydm/sweep.hpp"

namespace xydm {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_real(std::string_view field) {
  const std::string copy(field);
  char* end = nullptr;
  const double value = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size()) {
    throw std::invalid_argument("malformed number in CSV: '" + copy + "'");
  }
  return value;
}

int parse_int(std::string_view field) {
  const double value = parse_real(field);
  const int out = static_cast<int>(value);
  if (static_cast<double>(out) != value) throw std::invalid_argument("expected an integer, got '" + std::string(field) + "'");
  return out;
}

nlohmann::ordered_json metadata_json(const SweepTable& table) {
  const SweepMetadata& m = table.metadata;
  nlohmann::ordered_json meta;
  meta["version"] = m.version;
  meta["axis"] = table.axis_name;
  meta["params"] = {{"J", m.params.J}, {"gamma", m.params.gamma}, {"D", m.params.D},
                    {"lambda", m.params.lambda}, {"N", m.params.N}};
  meta["grid"] = m.grid;
  for (const auto& [key, value] : m.extra) meta[key] = value;
  return meta;
}

}  // namespace

void SweepTable::validate() const {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].values.size() != columns.size()) {
      throw std::invalid_argument("sweep row " + std::to_string(i) + " has the wrong number of values");
    }
    if (i > 0 && !(rows[i - 1].axis_value < rows[i].axis_value)) {
      throw std::invalid_argument("sweep rows must be strictly ascending in the axis value");
    }
  }
}

std::string format_real(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string to_csv(const SweepTable& table) {
  table.validate();
  const SweepMetadata& m = table.metadata;
  std::string out;
  auto meta = [&out](std::string_view key, std::string_view value) {
    out += "# ";
    out += key;
    out += '=';
    out += value;
    out += '\n';
  };
  meta("version", m.version);
  meta("axis", table.axis_name);
  meta("J", format_real(m.params.J));
  meta("gamma", format_real(m.params.gamma));
  meta("D", format_real(m.params.D));
  meta("lambda", format_real(m.params.lambda));
  meta("N", std::to_string(m.params.N));
  meta("grid", m.grid);
  for (const auto& [key, value] : m.extra) meta(key, value);

  out += table.axis_name;
  for (const auto& column : table.columns) {
    out += ',';
    out += column;
  }
  out += '\n';
  for (const auto& row : table.rows) {
    out += format_real(row.axis_value);
    for (const double v : row.values) {
      out += ',';
      out += format_real(v);
    }
    out += '\n';
  }
  return out;
}

SweepTable parse_csv(std::string_view text) {
  SweepTable table;
  bool have_header = false;
  for (std::string_view line : split(text, '\n')) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (have_header) throw std::invalid_argument("metadata line after the CSV header");
      line.remove_prefix(line.size() > 1 && line[1] == ' ' ? 2 : 1);
      const std::size_t eq = line.find('=');
      if (eq == std::string_view::npos) throw std::invalid_argument("metadata line without '='");
      const std::string key(line.substr(0, eq));
      const std::string value(line.substr(eq + 1));
      SweepMetadata& m = table.metadata;
      if (key == "version") m.version = value;
      else if (key == "axis") table.axis_name = value;
      else if (key == "J") m.params.J = parse_real(value);
      else if (key == "gamma") m.params.gamma = parse_real(value);
      else if (key == "D") m.params.D = parse_real(value);
      else if (key == "lambda") m.params.lambda = parse_real(value);
      else if (key == "N") m.params.N = parse_int(value);
      else if (key == "grid") m.grid = value;
      else m.extra.emplace_back(key, value);
      continue;
    }
    const auto fields = split(line, ',');
    if (!have_header) {
      if (!table.axis_name.empty() && fields[0] != table.axis_name) {
        throw std::invalid_argument("CSV header does not start with the axis column");
      }
      table.axis_name = std::string(fields[0]);
      for (std::size_t i = 1; i < fields.size(); ++i) table.columns.emplace_back(fields[i]);
      have_header = true;
      continue;
    }
    if (fields.size() != table.columns.size() + 1) throw std::invalid_argument("CSV row has the wrong field count");
    SweepRow row;
    row.axis_value = parse_real(fields[0]);
    for (std::size_t i = 1; i < fields.size(); ++i) row.values.push_back(parse_real(fields[i]));
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw std::invalid_argument("CSV has no header row");
  table.validate();
  return table;
}

std::string to_json(const SweepTable& table) {
  table.validate();
  nlohmann::ordered_json doc;
  doc["metadata"] = metadata_json(table);
  nlohmann::ordered_json columns = nlohmann::ordered_json::array({table.axis_name});
  for (const auto& c : table.columns) columns.push_back(c);
  doc["columns"] = columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array({row.axis_value});
    for (const double v : row.values) r.push_back(v);
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

SweepTable spectrum_table(const ModelParams& params, SectorTag sector) {
  SweepTable table;
  table.axis_name = "k";
  table.columns = {"x", "cos_theta", "sin_theta", "lambda_k"};
  table.metadata.params = params;
  table.metadata.grid = "sector=" + std::string(to_string(sector));
  for (const KMode& mode : mode_table(params, sector)) {
    table.rows.push_back({mode.k.value(), {mode.x, mode.cos_theta, mode.sin_theta, mode.lambda_k}});
  }
  return table;
}

SweepTable ground_table(const ModelParams& params, SectorTag sector) {
  const auto modes = mode_table(params, sector);
  const GroundStateSummary summary = ground_state(params, sector);
  SweepTable table;
  table.axis_name = "k";
  table.columns = {"x", "lambda_k", "occupied"};
  table.metadata.params = params;
  table.metadata.grid = "sector=" + std::string(to_string(sector));
  auto& extra = table.metadata.extra;
  extra.emplace_back("energy", format_real(summary.energy));
  extra.emplace_back("min_abs_lambda", format_real(summary.min_abs_lambda));
  extra.emplace_back("min_lambda", format_real(summary.min_lambda));
  extra.emplace_back("degenerate_modes", std::to_string(summary.degenerate_modes));
  extra.emplace_back("parity_adjusted", summary.parity_adjusted ? "true" : "false");
  extra.emplace_back("valid_vacuum", valid_vacuum(params) ? "true" : "false");
  for (std::size_t i = 0; i < modes.size(); ++i) {
    table.rows.push_back({modes[i].k.value(), {modes[i].x, modes[i].lambda_k, summary.occupations[i] ? 1.0 : 0.0}});
  }
  return table;
}

}  // namespace xydm
