#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace crisismon::csv {

using Row = std::vector<std::string>;

/// RFC 4180 reader: quoted fields may hold commas, doubled quotes and newlines.
class Reader {
public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::optional<Row> next();
  /// Physical line on which the last returned record started.
  std::size_t line() const noexcept { return record_line_; }

private:
  std::istream& in_;
  std::size_t line_ = 0;
  std::size_t record_line_ = 0;
};

/// Quotes a field only when it needs it.
std::string escape(std::string_view field);
void write_row(std::ostream& os, const Row& row);

/// Shortest decimal that round-trips.
std::string format_double(double v);
double parse_double(std::string_view s);

} // namespace crisismon::csv
