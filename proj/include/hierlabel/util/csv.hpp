#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hierlabel/error.hpp"
#include "hierlabel/util/text.hpp"

namespace hierlabel::util {

/// RFC 4180 quoting: fields holding a comma, quote or line break are quoted.
inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  out += '\n';
  return out;
}

/// Splits one CSV record (no embedded line breaks). Returns false on an
/// unterminated quote.
inline bool split_csv(std::string_view line, std::vector<std::string>& out) {
  out.clear();
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  out.push_back(std::move(field));
  return !quoted;
}

/// Reads a CSV table with a fixed header. Lines starting with '#' are
/// comments. Calls fn(where, fields) for every data row.
template <typename Fn>
void read_csv(std::string_view text, const std::string& source, const std::string& module,
              const std::vector<std::string>& header, Fn&& fn) {
  bool have_header = false;
  std::vector<std::string> fields;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line.empty() || line.front() == '#') return;
    const std::string where = source + ":" + std::to_string(line_no);
    if (!split_csv(line, fields)) throw input_error(module, where, "unterminated quoted field");
    if (!have_header) {
      if (fields != header) throw input_error(module, where, "unexpected CSV header");
      have_header = true;
      return;
    }
    if (fields.size() != header.size()) {
      throw input_error(module, where, "expected " + std::to_string(header.size()) + " fields");
    }
    fn(where, fields);
  });
  if (!have_header) throw input_error(module, source, "missing CSV header");
}

}  // namespace hierlabel::util
