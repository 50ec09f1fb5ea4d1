#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace confq {

// Numeric result table with a self-describing metadata block.
struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_meta(const std::string& key, const std::string& value);
  bool has_undersampled() const;  // true if an "undersampled" column has a nonzero entry
};

// Shortest round-trip decimal form; NaN prints as "nan".
std::string format_double(double x);

// '#'-prefixed key=value metadata lines, then a header row, then data rows.
void write_csv(const Table& t, std::ostream& os);
void write_json(const Table& t, std::ostream& os);

}  // namespace confq
