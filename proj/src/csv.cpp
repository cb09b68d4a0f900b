#include "crisismon/csv.hpp"

#include "crisismon/error.hpp"

#include <charconv>
#include <istream>
#include <ostream>

namespace crisismon::csv {

std::optional<Row> Reader::next() {
  std::string line;
  while (true) {
    if (!std::getline(in_, line))
      return std::nullopt;
    ++line_;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (!line.empty())
      break;
  }
  record_line_ = line_;

  Row row;
  std::string field;
  bool quoted = false;
  std::size_t i = 0;
  while (true) {
    if (i == line.size()) {
      if (quoted) {
        // Quoted field continues on the next physical line.
        std::string more;
        if (!std::getline(in_, more))
          throw ParseError("csv line " + std::to_string(record_line_) + ": unterminated quoted field");
        ++line_;
        if (!more.empty() && more.back() == '\r')
          more.pop_back();
        field += '\n';
        line = std::move(more);
        i = 0;
        continue;
      }
      row.push_back(std::move(field));
      return row;
    }
    char c = line[i++];
    if (quoted) {
      if (c == '"') {
        if (i < line.size() && line[i] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos)
    return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"')
      out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_row(std::ostream& os, const Row& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i)
      os << ',';
    os << escape(row[i]);
  }
  os << '\n';
}

std::string format_double(double v) {
  if (v == 0.0)
    v = 0.0; // no "-0"
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError("not a number: '" + std::string(s) + "'");
  return v;
}

} // namespace crisismon::csv
