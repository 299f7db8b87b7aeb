#pragma once

// Tabular output for the command-line tool.
//
// CSV: header row, comma separated, LF line endings; exact values as
// "num/den", floats as the shortest decimal that round-trips.
// JSON: {"columns": [...], "rows": [[...], ...]} with exact values as
// strings and floats/integers as numbers.

#include <charconv>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <variant>
#include <vector>

#include <json.hpp>

#include "rieszwalk/rational.hpp"

namespace rieszwalk {

enum class TableFormat { Csv, Json };

using Cell = std::variant<std::int64_t, double, Rational, std::string>;

inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  if (res.ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, res.ptr);
}

class OutputTable {
 public:
  explicit OutputTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size())
      throw std::invalid_argument("OutputTable: row has " + std::to_string(row.size()) +
                                  " cells, expected " + std::to_string(columns_.size()));
    rows_.push_back(std::move(row));
  }

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  /// Replaces every exact cell by its nearest double.
  void convert_exact_to_float() {
    for (auto& row : rows_)
      for (auto& cell : row)
        if (const auto* r = std::get_if<Rational>(&cell)) cell = r->to_double();
  }

  void write_csv(std::ostream& os) const {
    write_joined(os, columns_);
    for (const auto& row : rows_) {
      std::vector<std::string> text;
      text.reserve(row.size());
      for (const auto& cell : row) text.push_back(cell_text(cell));
      write_joined(os, text);
    }
  }

  void write_json(std::ostream& os) const {
    nlohmann::json doc;
    doc["columns"] = columns_;
    doc["rows"] = nlohmann::json::array();
    for (const auto& row : rows_) {
      auto jrow = nlohmann::json::array();
      for (const auto& cell : row) {
        std::visit(
            [&](const auto& v) {
              using T = std::decay_t<decltype(v)>;
              if constexpr (std::is_same_v<T, Rational>) jrow.push_back(v.to_string());
              else jrow.push_back(v);
            },
            cell);
      }
      doc["rows"].push_back(std::move(jrow));
    }
    os << doc.dump() << '\n';
  }

  void write(std::ostream& os, TableFormat format) const {
    if (format == TableFormat::Csv) write_csv(os);
    else write_json(os);
  }

  std::string to_string(TableFormat format = TableFormat::Csv) const {
    std::ostringstream os;
    write(os, format);
    return os.str();
  }

  static std::string cell_text(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
          else if constexpr (std::is_same_v<T, double>) return format_double(v);
          else if constexpr (std::is_same_v<T, Rational>) return v.to_string();
          else return v;
        },
        cell);
  }

 private:
  static void write_joined(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << cells[i];
    }
    os << '\n';
  }

  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

}  // namespace rieszwalk
