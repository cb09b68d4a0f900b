#pragma once

#include "crisismon/corpus.hpp"
#include "crisismon/date.hpp"
#include "crisismon/matcher.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace crisismon {

struct Series;

struct PrevalenceRow {
  Date date;
  std::size_t matched = 0;
  std::size_t total = 0;
  std::optional<double> percent; // absent when total == 0

  bool operator==(const PrevalenceRow&) const = default;
};

/// Daily share of analyzable tweets matching one category, one row per day of
/// the analyzed range.
struct DailyPrevalence {
  std::string category;
  std::vector<PrevalenceRow> rows;

  Series percent_series() const;
  bool operator==(const DailyPrevalence&) const = default;
};

using PrevalenceTable = std::map<std::string, DailyPrevalence>;

/// Per-(category, day) match counts with a shared per-day denominator.
/// Counters from disjoint document sets merge by summation.
class PrevalenceCounter {
public:
  PrevalenceCounter(const Matcher& matcher, DateRange range);

  /// Counts a document; returns false (and counts it as dropped) when its date
  /// falls outside the range.
  bool add(const TokenizedDoc& doc);
  void add(std::span<const TokenizedDoc> docs, unsigned workers = 1);
  void merge(const PrevalenceCounter& other);

  std::size_t dropped() const noexcept { return dropped_; }
  const DateRange& range() const noexcept { return range_; }
  PrevalenceTable table() const;

private:
  const Matcher* matcher_;
  DateRange range_;
  std::size_t days_;
  std::vector<std::size_t> totals_;  // per day
  std::vector<std::size_t> matched_; // day-major: day * C + category
  std::size_t dropped_ = 0;
  std::vector<std::uint8_t> scratch_;
};

/// Throws ValidationError when range.first > range.last.
PrevalenceTable aggregate_daily(std::span<const TokenizedDoc> docs, const Matcher& matcher, DateRange range,
                                unsigned workers = 1, std::size_t* dropped = nullptr);

/// Long format: date,category,matched,total,percent (empty percent = missing).
void write_prevalence_csv(std::ostream& os, const PrevalenceTable& table);
PrevalenceTable read_prevalence_csv(std::istream& is);

} // namespace crisismon
