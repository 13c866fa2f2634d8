#pragma once

#include <json.hpp>

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace hmpz::cli {

using Cell = std::variant<double, long long, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Report {
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  std::vector<std::string> warnings;
  Table table;
  bool rows_in_json = true;  // false when results already carry everything
};

enum class Format { csv, json };

// Locale-free shortest form with 12 significant digits.
std::string format_number(double v);

void write_csv(std::ostream& out, const Table& table);
nlohmann::json table_json(const Table& table);
void write_report(std::ostream& out, const Report& report, Format format);

}  // namespace hmpz::cli
