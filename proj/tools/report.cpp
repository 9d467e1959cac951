#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace udb::cli {

Format parse_format(const std::string& name) {
  if (name == "text") return Format::text;
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw std::invalid_argument("unknown format '" + name + "' (expected csv, json or text)");
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::string format_cell(const Cell& c) {
  struct {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(const std::string& v) const { return v; }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  } visit;
  return std::visit(visit, c);
}

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

nlohmann::ordered_json to_json(const Cell& c) {
  struct {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
    nlohmann::ordered_json operator()(double v) const {
      if (!std::isfinite(v)) return nullptr;
      // round-trip through the CSV formatting so every output format agrees
      return std::stod(format_double(v));
    }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
    nlohmann::ordered_json operator()(bool v) const { return v; }
  } visit;
  return std::visit(visit, c);
}

}  // namespace

void write_report(std::ostream& out, const Report& report, Format format) {
  switch (format) {
    case Format::csv: {
      for (std::size_t i = 0; i < report.columns.size(); ++i)
        out << (i ? "," : "") << csv_quote(report.columns[i]);
      out << '\n';
      for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_quote(format_cell(row[i]));
        out << '\n';
      }
      break;
    }
    case Format::json: {
      nlohmann::ordered_json j;
      j["title"] = report.title;
      j["columns"] = report.columns;
      auto rows = nlohmann::ordered_json::array();
      for (const auto& row : report.rows) {
        nlohmann::ordered_json r;
        for (std::size_t i = 0; i < row.size() && i < report.columns.size(); ++i) r[report.columns[i]] = to_json(row[i]);
        rows.push_back(std::move(r));
      }
      j["rows"] = std::move(rows);
      j["notes"] = report.notes;
      out << j.dump(2) << '\n';
      break;
    }
    case Format::text: {
      if (!report.title.empty()) out << report.title << "\n\n";
      std::vector<std::size_t> width(report.columns.size(), 0);
      for (std::size_t i = 0; i < report.columns.size(); ++i) width[i] = report.columns[i].size();
      for (const auto& row : report.rows)
        for (std::size_t i = 0; i < row.size() && i < width.size(); ++i)
          width[i] = std::max(width[i], format_cell(row[i]).size());
      auto line = [&](auto&& cell_text, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
          const std::string s = cell_text(i);
          out << (i ? "  " : "") << s;
          if (i + 1 < n) out << std::string(width[i] - std::min(width[i], s.size()), ' ');
        }
        out << '\n';
      };
      line([&](std::size_t i) { return report.columns[i]; }, report.columns.size());
      for (const auto& row : report.rows) line([&](std::size_t i) { return format_cell(row[i]); }, row.size());
      for (const auto& note : report.notes) out << "\n" << note;
      if (!report.notes.empty()) out << '\n';
      break;
    }
  }
}

}  // namespace udb::cli
