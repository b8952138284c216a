#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "snhet/experiments/config_io.hpp"

namespace snhet::experiments {

/// Fixed 9-significant-digit text form used for every numeric cell.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

/// Sweep results as text cells, so a written and re-read table compares equal.
struct ResultTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw std::out_of_range("no column '" + std::string(name) + "'");
  }
  bool has_column(std::string_view name) const {
    for (const auto& h : header)
      if (h == name) return true;
    return false;
  }
  const std::string& cell(std::size_t row, std::string_view name) const { return rows.at(row).at(column(name)); }
  /// NaN for an empty cell.
  double number(std::size_t row, std::string_view name) const {
    const auto& c = cell(row, name);
    if (c.empty()) return std::numeric_limits<double>::quiet_NaN();
    if (c == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (c == "inf") return std::numeric_limits<double>::infinity();
    if (c == "-inf") return -std::numeric_limits<double>::infinity();
    return detail::parse_number(name, c);
  }

  bool operator==(const ResultTable&) const = default;
};

namespace detail {

inline void write_field(std::ostream& out, const std::string& f) {
  if (f.find_first_of(",\"\r\n") == std::string::npos) {
    out << f;
    return;
  }
  out << '"';
  for (char c : f) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

inline void write_record(std::ostream& out, const std::vector<std::string>& rec) {
  for (std::size_t i = 0; i < rec.size(); ++i) {
    if (i) out << ',';
    write_field(out, rec[i]);
  }
  out << '\n';
}

}  // namespace detail

inline void write_csv(std::ostream& out, const ResultTable& t) {
  detail::write_record(out, t.header);
  for (const auto& r : t.rows) detail::write_record(out, r);
}

inline std::string to_csv(const ResultTable& t) {
  std::ostringstream s;
  write_csv(s, t);
  return s.str();
}

inline void write_csv_file(const std::string& path, const ResultTable& t) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  write_csv(f, t);
  if (!f) throw std::runtime_error("write failed: " + path);
}

/// RFC 4180 reader; the first record is the header and every row must match its width.
inline ResultTable read_csv(std::istream& in) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> rec;
  std::string field;
  bool quoted = false, any = false;
  char c;
  while (in.get(c)) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      rec.push_back(std::move(field));
      field.clear();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && in.peek() == '\n') in.get(c);
      rec.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(rec));
      rec.clear();
      any = false;
    } else {
      field.push_back(c);
    }
  }
  if (quoted) throw SpecError("csv: unterminated quoted field");
  if (any) {
    rec.push_back(std::move(field));
    records.push_back(std::move(rec));
  }
  if (records.empty()) throw SpecError("csv: empty input");
  ResultTable t;
  t.header = std::move(records.front());
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].size() != t.header.size())
      throw SpecError("csv: row " + std::to_string(i) + " has " + std::to_string(records[i].size()) +
                      " fields, header has " + std::to_string(t.header.size()));
    t.rows.push_back(std::move(records[i]));
  }
  return t;
}

inline ResultTable parse_csv(const std::string& text) {
  std::istringstream s(text);
  return read_csv(s);
}

inline ResultTable read_csv_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw SpecError("cannot open " + path);
  return read_csv(f);
}

/// Copy of the table without the named columns.
inline ResultTable drop_columns(const ResultTable& t, const std::vector<std::string>& names) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    bool drop = false;
    for (const auto& n : names) drop = drop || t.header[i] == n;
    if (!drop) keep.push_back(i);
  }
  ResultTable out;
  for (auto i : keep) out.header.push_back(t.header[i]);
  for (const auto& r : t.rows) {
    std::vector<std::string> row;
    for (auto i : keep) row.push_back(r[i]);
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace snhet::experiments
