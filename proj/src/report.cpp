#include "crisismon/report.hpp"

#include "crisismon/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace crisismon {

namespace {

void expect_header(csv::Reader& reader, const std::vector<std::string>& columns, const char* what) {
  auto header = reader.next();
  if (!header || header->size() < columns.size() ||
      !std::equal(columns.begin(), columns.end(), header->begin()))
    throw ParseError(std::string(what) + ": bad or missing header");
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '&':
      out += "&amp;";
      break;
    case '<':
      out += "&lt;";
      break;
    case '>':
      out += "&gt;";
      break;
    case '"':
      out += "&quot;";
      break;
    default:
      out += c;
    }
  }
  return out;
}

double median_of(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : (xs[n / 2 - 1] + xs[n / 2]) / 2.0;
}

constexpr const char* kMonthNames[] = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                       "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

} // namespace

std::vector<EventRecord> read_events_csv(std::istream& is) {
  csv::Reader reader(is);
  expect_header(reader, {"date", "description"}, "events csv");
  std::vector<EventRecord> out;
  while (auto row = reader.next()) {
    if (row->size() < 2)
      throw ParseError("events csv line " + std::to_string(reader.line()) + ": expected date,description");
    EventRecord e{Date::parse((*row)[0]), (*row)[1]};
    if (e.description.empty())
      throw ParseError("events csv line " + std::to_string(reader.line()) + ": empty description");
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<StageWindow> read_stages_csv(std::istream& is) {
  csv::Reader reader(is);
  expect_header(reader, {"stage", "start", "end"}, "stages csv");
  std::vector<StageWindow> out;
  while (auto row = reader.next()) {
    if (row->size() < 3)
      throw ParseError("stages csv line " + std::to_string(reader.line()) + ": expected stage,start,end");
    StageWindow w{(*row)[0], Date::parse((*row)[1]), Date::parse((*row)[2])};
    if (w.end < w.start)
      throw ValidationError("stages csv line " + std::to_string(reader.line()) + ": stage '" + w.stage +
                            "' ends before it starts");
    out.push_back(std::move(w));
  }
  return out;
}

void write_peaks_csv(std::ostream& os, std::span<const MarkerPeak> peaks) {
  csv::write_row(os, {"date", "marker", "direction", "height", "prominence"});
  for (const auto& mp : peaks)
    csv::write_row(os, {mp.peak.date.to_string(), mp.marker, std::string(to_string(mp.peak.direction)),
                        csv::format_double(mp.peak.height), csv::format_double(mp.peak.prominence)});
}

std::vector<PeakAnnotation> annotate_peaks(std::span<const MarkerPeak> peaks, std::span<const EventRecord> events,
                                           int lead) {
  if (lead < 0)
    throw ValidationError("annotate_peaks: lead must be >= 0");
  std::vector<EventRecord> sorted(events.begin(), events.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const EventRecord& a, const EventRecord& b) { return a.date < b.date; });
  std::vector<PeakAnnotation> out;
  out.reserve(peaks.size());
  for (const auto& p : peaks) {
    PeakAnnotation a{p, {}};
    const Date from = p.peak.date - lead;
    auto it = std::lower_bound(sorted.begin(), sorted.end(), from,
                               [](const EventRecord& e, Date d) { return e.date < d; });
    for (; it != sorted.end() && it->date <= p.peak.date; ++it)
      a.events.push_back(*it);
    out.push_back(std::move(a));
  }
  return out;
}

void write_annotations_csv(std::ostream& os, std::span<const PeakAnnotation> annotations) {
  csv::write_row(os, {"peak_date", "marker", "direction", "prominence", "event_date", "description"});
  for (const auto& a : annotations) {
    csv::Row base{a.peak.peak.date.to_string(), a.peak.marker, std::string(to_string(a.peak.peak.direction)),
                  csv::format_double(a.peak.peak.prominence)};
    if (a.events.empty()) {
      auto row = base;
      row.insert(row.end(), {"", ""});
      csv::write_row(os, row);
    }
    for (const auto& e : a.events) {
      auto row = base;
      row.insert(row.end(), {e.date.to_string(), e.description});
      csv::write_row(os, row);
    }
  }
}

std::vector<StageCell> stage_prevalence_table(const SeriesMap& series, std::span<const StageWindow> stages) {
  std::vector<StageCell> out;
  for (const auto& [marker, s] : series) {
    std::vector<double> present;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (!is_missing(s.values(i)))
        present.push_back(s.values(i));
    const bool usable = !present.empty();
    const double median = usable ? median_of(present) : 0.0;

    for (const auto& stage : stages) {
      StageCell cell{marker, stage.stage, std::nullopt};
      if (usable && median != 0.0) {
        const Date from = std::max(stage.start, s.start);
        const Date to = std::min(stage.end, s.range().last);
        for (Date d = from; d <= to; ++d) {
          const double v = s.values(d - s.start);
          if (is_missing(v))
            continue;
          const double diff = 100.0 * (v - median) / median;
          if (!cell.max_pct_diff || diff > *cell.max_pct_diff)
            cell.max_pct_diff = diff;
        }
      }
      out.push_back(std::move(cell));
    }
  }
  return out;
}

void write_stage_table_csv(std::ostream& os, std::span<const StageCell> cells) {
  csv::write_row(os, {"marker", "stage", "max_pct_diff"});
  for (const auto& c : cells)
    csv::write_row(os, {c.marker, c.stage, c.max_pct_diff ? csv::format_double(*c.max_pct_diff) : std::string()});
}

double heatmap_lightness(double normalized, const HeatmapSpec& spec) {
  const double t = std::clamp(normalized, 0.0, 1.0);
  return spec.lightest - t * (spec.lightest - spec.darkest);
}

std::string render_heatmap(const SeriesMap& series, const HeatmapSpec& spec) {
  if (spec.markers.empty())
    throw ValidationError("heatmap: empty marker list");
  if (!(spec.darkest < spec.lightest))
    throw ValidationError("heatmap: darkest lightness must be below lightest");
  std::vector<const Series*> rows;
  for (const auto& m : spec.markers) {
    auto it = series.find(m);
    if (it == series.end())
      throw ValidationError("heatmap: no series for marker '" + m + "'");
    if (!rows.empty() && !it->second.same_axis(*rows.front()))
      throw ValidationError("heatmap: series do not share a date axis");
    rows.push_back(&it->second);
  }
  const Series& axis = *rows.front();
  if (axis.size() == 0)
    throw ValidationError("heatmap: empty series");
  const DateRange range = spec.range.value_or(axis.range());
  if (range.last < range.first || range.first < axis.start || range.last > axis.range().last)
    throw ValidationError("heatmap: date range outside the series axis");
  const auto first = static_cast<Eigen::Index>(range.first - axis.start);
  const auto days = static_cast<Eigen::Index>(range.days());

  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (const Series* s : rows) {
    for (Eigen::Index d = 0; d < days; ++d) {
      const double v = s->values(first + d);
      if (is_missing(v))
        continue;
      lo = any ? std::min(lo, v) : v;
      hi = any ? std::max(hi, v) : v;
      any = true;
    }
  }
  auto normalize = [&](double v) { return hi > lo ? (v - lo) / (hi - lo) : 0.5; };

  std::size_t longest = 0;
  for (const auto& m : spec.markers)
    longest = std::max(longest, m.size());
  const double left = 12.0 + 7.0 * static_cast<double>(longest);
  const double top = spec.title.empty() ? 24.0 : 44.0;
  const double grid_w = spec.cell_width * static_cast<double>(days);
  const double grid_h = spec.cell_height * static_cast<double>(rows.size());
  const double width = left + grid_w + 16.0;
  const double height = top + grid_h + 34.0;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fixed(width, 2) << "\" height=\""
      << fixed(height, 2) << "\" viewBox=\"0 0 " << fixed(width, 2) << ' ' << fixed(height, 2) << "\">\n"
      << "<defs>\n"
      << "<pattern id=\"missing\" width=\"4\" height=\"4\" patternUnits=\"userSpaceOnUse\">"
      << "<rect width=\"4\" height=\"4\" fill=\"white\"/>"
      << "<path d=\"M0,4 L4,0\" stroke=\"#c03030\" stroke-width=\"0.8\"/></pattern>\n"
      << "</defs>\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!spec.title.empty())
    svg << "<text x=\"" << fixed(left, 2) << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">"
        << xml_escape(spec.title) << "</text>\n";

  svg << "<g class=\"cells\" shape-rendering=\"crispEdges\">\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const double y = top + spec.cell_height * static_cast<double>(r);
    for (Eigen::Index d = 0; d < days; ++d) {
      const double x = left + spec.cell_width * static_cast<double>(d);
      const double v = rows[r]->values(first + d);
      svg << "<rect class=\"cell\" data-marker=\"" << xml_escape(spec.markers[r]) << "\" data-date=\""
          << (range.first + d).to_string() << "\" x=\"" << fixed(x, 2) << "\" y=\"" << fixed(y, 2) << "\" width=\""
          << fixed(spec.cell_width, 2) << "\" height=\"" << fixed(spec.cell_height, 2) << "\" ";
      if (is_missing(v)) {
        svg << "fill=\"url(#missing)\" data-missing=\"1\"/>\n";
      } else {
        const std::string l = fixed(heatmap_lightness(normalize(v), spec), 6);
        svg << "fill=\"rgb(" << l << "%," << l << "%," << l << "%)\" data-value=\"" << csv::format_double(v)
            << "\"/>\n";
      }
    }
  }
  svg << "</g>\n";

  svg << "<g class=\"labels\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const double y = top + spec.cell_height * (static_cast<double>(r) + 0.5) + 4.0;
    svg << "<text x=\"" << fixed(left - 6.0, 2) << "\" y=\"" << fixed(y, 2) << "\" text-anchor=\"end\">"
        << xml_escape(spec.markers[r]) << "</text>\n";
  }
  for (Eigen::Index d = 0; d < days; ++d) {
    const Date day = range.first + d;
    const auto ymd = day.ymd();
    if (d != 0 && static_cast<unsigned>(ymd.day()) != 1)
      continue;
    const double x = left + spec.cell_width * static_cast<double>(d);
    svg << "<line x1=\"" << fixed(x, 2) << "\" y1=\"" << fixed(top + grid_h, 2) << "\" x2=\"" << fixed(x, 2)
        << "\" y2=\"" << fixed(top + grid_h + 5.0, 2) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << fixed(x, 2) << "\" y=\"" << fixed(top + grid_h + 17.0, 2) << "\">"
        << kMonthNames[static_cast<unsigned>(ymd.month()) - 1] << ' ' << static_cast<int>(ymd.year())
        << "</text>\n";
  }
  svg << "</g>\n";

  if (!spec.peaks.empty()) {
    svg << "<g class=\"peaks\">\n";
    for (const auto& mp : spec.peaks) {
      if (!range.contains(mp.peak.date))
        continue;
      const double x = left + spec.cell_width * (static_cast<double>(mp.peak.date - range.first) + 0.5);
      const bool rise = mp.peak.direction == Direction::rise;
      svg << "<path class=\"peak\" data-marker=\"" << xml_escape(mp.marker) << "\" data-date=\""
          << mp.peak.date.to_string() << "\" d=\"M" << fixed(x - 3.0, 2) << ',' << fixed(top - 10.0, 2) << " L"
          << fixed(x + 3.0, 2) << ',' << fixed(top - 10.0, 2) << " L" << fixed(x, 2) << ','
          << fixed(top - 3.0, 2) << " Z\" fill=\"" << (rise ? "#c03030" : "#3050c0") << "\"/>\n";
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

CategoryView category_view(const CategorySet& categories, std::span<const TokenizedDoc> docs, DateRange range,
                           const std::vector<std::string>& subset, const AnalysisConfig& cfg, unsigned workers) {
  if (subset.empty())
    throw ValidationError("category view: empty category subset");
  cfg.validate();
  const CategorySet selected = select_categories(categories, subset);
  const Matcher matcher(selected);
  CategoryView view;
  view.prevalence = aggregate_daily(docs, matcher, range, workers);
  for (const auto& [name, dp] : view.prevalence)
    view.smoothed.emplace(name, smooth(dp.percent_series(), cfg.window));
  HeatmapSpec spec;
  spec.markers = subset;
  view.svg = render_heatmap(view.smoothed, spec);
  return view;
}

} // namespace crisismon
