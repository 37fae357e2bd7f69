#include "galcurve/report_io.hpp"

#include <cmath>

#include "galcurve/format.hpp"

namespace galcurve {

void write_csv(std::ostream& os, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << table.columns[i];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      if (row[i]) os << format_double(*row[i]);
    }
    os << '\n';
  }
}

namespace {

nlohmann::json number(double v) {
  // nlohmann serializes non-finite numbers as null; keep that explicit.
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json table_to_json(const Table& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      obj[table.columns[i]] = row[i] ? number(*row[i]) : nlohmann::json(nullptr);
    }
    rows.push_back(std::move(obj));
  }
  return rows;
}

nlohmann::json report_to_json(const CheckReport& report) {
  nlohmann::json samples = nlohmann::json::array();
  for (const SampleRecord& rec : report.samples) {
    nlohmann::json obj = {{"s", number(rec.s)}, {"deviation", number(rec.deviation)}};
    for (const auto& [name, value] : rec.fields) obj[name] = number(value);
    samples.push_back(std::move(obj));
  }
  nlohmann::json grid = nlohmann::json::array();
  for (double s : report.grid) grid.push_back(number(s));
  return {{"theorem", report.theorem_id},
          {"tolerance", number(report.tolerance)},
          {"max_abs_deviation", number(report.max_abs_deviation)},
          {"pass", report.pass},
          {"grid", std::move(grid)},
          {"samples", std::move(samples)},
          {"notes", report.notes}};
}

Table report_to_table(const CheckReport& report) {
  Table t;
  t.columns = {"s", "deviation"};
  if (!report.samples.empty()) {
    for (const auto& field : report.samples.front().fields) t.columns.push_back(field.first);
  }
  for (const SampleRecord& rec : report.samples) {
    std::vector<std::optional<double>> row{rec.s, rec.deviation};
    for (const auto& field : rec.fields) row.emplace_back(field.second);
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace galcurve
