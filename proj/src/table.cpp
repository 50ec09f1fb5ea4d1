#include "confq/table.hpp"

#include <charconv>

#include "json.hpp"

namespace confq {

void Table::add_meta(const std::string& key, const std::string& value) {
  meta.emplace_back(key, value);
}

bool Table::has_undersampled() const {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] != "undersampled") continue;
    for (const auto& row : rows)
      if (c < row.size() && row[c] != 0.0) return true;
  }
  return false;
}

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, r.ptr);
}

void write_csv(const Table& t, std::ostream& os) {
  for (const auto& [k, v] : t.meta) os << "# " << k << "=" << v << "\n";
  for (std::size_t c = 0; c < t.columns.size(); ++c)
    os << (c ? "," : "") << t.columns[c];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      os << (c ? "," : "") << format_double(row[c]);
    os << "\n";
  }
}

void write_json(const Table& t, std::ostream& os) {
  nlohmann::ordered_json j;
  j["meta"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.meta) j["meta"][k] = v;
  j["columns"] = t.columns;
  j["rows"] = t.rows;
  os << j.dump(2) << "\n";
}

}  // namespace confq
