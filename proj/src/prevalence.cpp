#include "crisismon/prevalence.hpp"

#include "crisismon/csv.hpp"
#include "crisismon/parallel.hpp"
#include "crisismon/series.hpp"

#include <istream>
#include <ostream>

namespace crisismon {

Series DailyPrevalence::percent_series() const {
  if (rows.empty())
    throw ValidationError("prevalence of '" + category + "' has no rows");
  Series s{rows.front().date, Eigen::ArrayXd(static_cast<Eigen::Index>(rows.size())), SeriesKind::raw};
  for (std::size_t i = 0; i < rows.size(); ++i)
    s.values(static_cast<Eigen::Index>(i)) = rows[i].percent.value_or(kMissing);
  return s;
}

PrevalenceCounter::PrevalenceCounter(const Matcher& matcher, DateRange range)
    : matcher_(&matcher), range_(range), days_(range.days()) {
  if (range.last < range.first)
    throw ValidationError("date range " + range.first.to_string() + ".." + range.last.to_string() + " is empty");
  totals_.assign(days_, 0);
  matched_.assign(days_ * matcher.category_count(), 0);
}

bool PrevalenceCounter::add(const TokenizedDoc& doc) {
  if (!range_.contains(doc.date)) {
    ++dropped_;
    return false;
  }
  const auto day = static_cast<std::size_t>(doc.date - range_.first);
  ++totals_[day];
  matcher_->match_into(doc.tokens, scratch_);
  const std::size_t c = matcher_->category_count();
  std::size_t* row = matched_.data() + day * c;
  for (std::size_t k = 0; k < c; ++k)
    row[k] += scratch_[k];
  return true;
}

void PrevalenceCounter::add(std::span<const TokenizedDoc> docs, unsigned workers) {
  if (workers <= 1 || docs.size() < 2) {
    for (const auto& d : docs)
      add(d);
    return;
  }
  std::vector<PrevalenceCounter> partial(workers, PrevalenceCounter(*matcher_, range_));
  parallel_chunks(docs.size(), workers, [&](unsigned w, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      partial[w].add(docs[i]);
  });
  for (const auto& p : partial)
    merge(p);
}

void PrevalenceCounter::merge(const PrevalenceCounter& other) {
  if (other.matcher_ != matcher_ || other.range_.first != range_.first || other.range_.last != range_.last)
    throw ValidationError("cannot merge prevalence counters over different matchers or ranges");
  for (std::size_t i = 0; i < totals_.size(); ++i)
    totals_[i] += other.totals_[i];
  for (std::size_t i = 0; i < matched_.size(); ++i)
    matched_[i] += other.matched_[i];
  dropped_ += other.dropped_;
}

PrevalenceTable PrevalenceCounter::table() const {
  PrevalenceTable out;
  const auto& cats = matcher_->categories();
  const std::size_t c = cats.size();
  for (std::size_t k = 0; k < c; ++k) {
    DailyPrevalence dp{cats[k], {}};
    dp.rows.reserve(days_);
    for (std::size_t d = 0; d < days_; ++d) {
      PrevalenceRow row{range_.first + static_cast<std::int64_t>(d), matched_[d * c + k], totals_[d], std::nullopt};
      if (row.total > 0)
        row.percent = 100.0 * static_cast<double>(row.matched) / static_cast<double>(row.total);
      dp.rows.push_back(row);
    }
    out.emplace(cats[k], std::move(dp));
  }
  return out;
}

PrevalenceTable aggregate_daily(std::span<const TokenizedDoc> docs, const Matcher& matcher, DateRange range,
                                unsigned workers, std::size_t* dropped) {
  PrevalenceCounter counter(matcher, range);
  counter.add(docs, workers);
  if (dropped)
    *dropped = counter.dropped();
  return counter.table();
}

void write_prevalence_csv(std::ostream& os, const PrevalenceTable& table) {
  csv::write_row(os, {"date", "category", "matched", "total", "percent"});
  for (const auto& [name, dp] : table)
    for (const auto& r : dp.rows)
      csv::write_row(os, {r.date.to_string(), name, std::to_string(r.matched), std::to_string(r.total),
                          r.percent ? csv::format_double(*r.percent) : std::string()});
}

PrevalenceTable read_prevalence_csv(std::istream& is) {
  csv::Reader reader(is);
  auto header = reader.next();
  if (!header || header->size() < 5 || (*header)[0] != "date" || (*header)[1] != "category")
    throw ParseError("prevalence csv: expected header date,category,matched,total,percent");
  PrevalenceTable out;
  while (auto row = reader.next()) {
    if (row->size() < 5)
      throw ParseError("prevalence csv line " + std::to_string(reader.line()) + ": expected 5 columns");
    const auto& r = *row;
    PrevalenceRow pr;
    try {
      pr.date = Date::parse(r[0]);
      pr.matched = std::stoull(r[2]);
      pr.total = std::stoull(r[3]);
      if (!r[4].empty())
        pr.percent = csv::parse_double(r[4]);
    } catch (const std::exception& e) {
      throw ParseError("prevalence csv line " + std::to_string(reader.line()) + ": " + e.what());
    }
    auto& dp = out[r[1]];
    dp.category = r[1];
    if (!dp.rows.empty() && pr.date != dp.rows.back().date + 1)
      throw ParseError("prevalence csv line " + std::to_string(reader.line()) + ": days of '" + r[1] +
                       "' are not contiguous");
    dp.rows.push_back(pr);
  }
  return out;
}

} // namespace crisismon
