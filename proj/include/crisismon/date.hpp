#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace crisismon {

/// Calendar day, stored as days since 1970-01-01 (proleptic Gregorian).
class Date {
public:
  constexpr Date() = default;
  constexpr explicit Date(std::chrono::sys_days d) : serial_(d.time_since_epoch().count()) {}

  static Date from_serial(std::int64_t serial) {
    Date d;
    d.serial_ = serial;
    return d;
  }
  static Date from_ymd(int year, unsigned month, unsigned day);

  /// Parses "YYYY-MM-DD"; throws ParseError.
  static Date parse(std::string_view text);

  std::int64_t serial() const noexcept { return serial_; }
  std::chrono::year_month_day ymd() const {
    return std::chrono::year_month_day{std::chrono::sys_days{std::chrono::days{serial_}}};
  }
  std::string to_string() const;

  Date operator+(std::int64_t n) const { return from_serial(serial_ + n); }
  Date operator-(std::int64_t n) const { return from_serial(serial_ - n); }
  friend std::int64_t operator-(Date a, Date b) { return a.serial_ - b.serial_; }
  Date& operator++() {
    ++serial_;
    return *this;
  }

  auto operator<=>(const Date&) const = default;

private:
  std::int64_t serial_ = 0;
};

/// Inclusive range of days.
struct DateRange {
  Date first;
  Date last;

  std::size_t days() const { return last < first ? 0 : static_cast<std::size_t>(last - first + 1); }
  bool contains(Date d) const { return first <= d && d <= last; }
};

/// Parses an ISO-8601 timestamp ("2020-03-08T14:22:01Z", optional fraction,
/// "Z" / "+hh:mm" / "-hhmm" offsets, space instead of 'T', or a bare date)
/// into seconds since the epoch, UTC. Throws ParseError.
std::int64_t parse_timestamp(std::string_view text);

/// Calendar day of a UTC instant seen from a fixed offset (minutes east of UTC).
Date local_date(std::int64_t epoch_seconds, int utc_offset_minutes);

} // namespace crisismon
