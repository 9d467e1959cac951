#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace udb::cli {

using Cell = std::variant<std::monostate, std::int64_t, double, std::string, bool>;

struct Report {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> notes;

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

enum class Format { text, csv, json };

Format parse_format(const std::string& name);

/// %.9g; shortest form that reads back the same nine digits.
std::string format_double(double x);
std::string format_cell(const Cell& c);

void write_report(std::ostream& out, const Report& report, Format format);

}  // namespace udb::cli
