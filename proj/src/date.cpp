#include "crisismon/date.hpp"

#include "crisismon/error.hpp"

#include <charconv>
#include <cstdio>

namespace crisismon {

namespace {

int read_digits(std::string_view text, std::size_t pos, std::size_t count, std::string_view what) {
  if (pos + count > text.size())
    throw ParseError("truncated " + std::string(what) + " in '" + std::string(text) + "'");
  int value = 0;
  for (std::size_t i = pos; i < pos + count; ++i) {
    char c = text[i];
    if (c < '0' || c > '9')
      throw ParseError("expected digit in " + std::string(what) + " of '" + std::string(text) + "'");
    value = value * 10 + (c - '0');
  }
  return value;
}

Date parse_date_prefix(std::string_view text) {
  if (text.size() < 10 || text[4] != '-' || text[7] != '-')
    throw ParseError("expected YYYY-MM-DD, got '" + std::string(text) + "'");
  int y = read_digits(text, 0, 4, "year");
  int m = read_digits(text, 5, 2, "month");
  int d = read_digits(text, 8, 2, "day");
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                  std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok())
    throw ParseError("invalid calendar date '" + std::string(text.substr(0, 10)) + "'");
  return Date{std::chrono::sys_days{ymd}};
}

} // namespace

Date Date::from_ymd(int year, unsigned month, unsigned day) {
  std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}};
  if (!ymd.ok())
    throw ParseError("invalid calendar date");
  return Date{std::chrono::sys_days{ymd}};
}

Date Date::parse(std::string_view text) {
  if (text.size() != 10)
    throw ParseError("expected YYYY-MM-DD, got '" + std::string(text) + "'");
  return parse_date_prefix(text);
}

std::string Date::to_string() const {
  auto d = ymd();
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()), static_cast<unsigned>(d.month()),
                static_cast<unsigned>(d.day()));
  return buf;
}

std::int64_t parse_timestamp(std::string_view text) {
  Date day = parse_date_prefix(text);
  std::int64_t seconds = day.serial() * 86400;
  if (text.size() == 10)
    return seconds;

  if (text[10] != 'T' && text[10] != 't' && text[10] != ' ')
    throw ParseError("expected time separator in '" + std::string(text) + "'");
  int hh = read_digits(text, 11, 2, "hour");
  if (text.size() < 14 || text[13] != ':')
    throw ParseError("expected hh:mm in '" + std::string(text) + "'");
  int mm = read_digits(text, 14, 2, "minute");
  int ss = 0;
  std::size_t pos = 16;
  if (pos < text.size() && text[pos] == ':') {
    ss = read_digits(text, pos + 1, 2, "second");
    pos += 3;
  }
  if (hh > 23 || mm > 59 || ss > 60)
    throw ParseError("time out of range in '" + std::string(text) + "'");
  if (pos < text.size() && (text[pos] == '.' || text[pos] == ',')) {
    ++pos;
    std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9')
      ++pos;
    if (pos == start)
      throw ParseError("empty fraction in '" + std::string(text) + "'");
  }
  seconds += hh * 3600 + mm * 60 + ss;

  if (pos == text.size())
    return seconds;
  char zone = text[pos];
  if ((zone == 'Z' || zone == 'z') && pos + 1 == text.size())
    return seconds;
  if (zone != '+' && zone != '-')
    throw ParseError("bad UTC offset in '" + std::string(text) + "'");
  int oh = read_digits(text, pos + 1, 2, "offset hour");
  std::size_t mpos = pos + 3;
  if (mpos < text.size() && text[mpos] == ':')
    ++mpos;
  int om = read_digits(text, mpos, 2, "offset minute");
  if (mpos + 2 != text.size())
    throw ParseError("trailing characters in '" + std::string(text) + "'");
  std::int64_t offset = oh * 3600 + om * 60;
  return zone == '+' ? seconds - offset : seconds + offset;
}

Date local_date(std::int64_t epoch_seconds, int utc_offset_minutes) {
  std::int64_t local = epoch_seconds + static_cast<std::int64_t>(utc_offset_minutes) * 60;
  std::int64_t days = local / 86400;
  if (local % 86400 < 0)
    --days;
  return Date::from_serial(days);
}

} // namespace crisismon
