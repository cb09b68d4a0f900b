#pragma once

#include "crisismon/date.hpp"
#include "crisismon/lexicon.hpp"
#include "crisismon/prevalence.hpp"
#include "crisismon/series.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace crisismon {

using SeriesMap = std::map<std::string, Series>;

/// A labeled crisis stage, inclusive on both ends. Windows may overlap.
struct StageWindow {
  std::string stage;
  Date start;
  Date end;

  bool operator==(const StageWindow&) const = default;
};

struct EventRecord {
  Date date;
  std::string description;

  bool operator==(const EventRecord&) const = default;
};

/// CSV with header date,description.
std::vector<EventRecord> read_events_csv(std::istream& is);
/// CSV with header stage,start,end.
std::vector<StageWindow> read_stages_csv(std::istream& is);

struct MarkerPeak {
  std::string marker; // category name, or "JOINT" for the combined signal
  Peak peak;
};

/// CSV: date,marker,direction,height,prominence.
void write_peaks_csv(std::ostream& os, std::span<const MarkerPeak> peaks);

struct PeakAnnotation {
  MarkerPeak peak;
  std::vector<EventRecord> events; // by date
};

/// An event explains a peak when it happened on the peak day or up to `lead`
/// days before it. Throws ValidationError for a negative lead.
std::vector<PeakAnnotation> annotate_peaks(std::span<const MarkerPeak> peaks, std::span<const EventRecord> events,
                                           int lead = 6);

/// CSV: peak_date,marker,direction,prominence,event_date,description. A peak
/// without events gets one row with empty event columns.
void write_annotations_csv(std::ostream& os, std::span<const PeakAnnotation> annotations);

struct StageCell {
  std::string marker;
  std::string stage;
  std::optional<double> max_pct_diff; // absent: zero median or no present day in the stage

  bool operator==(const StageCell&) const = default;
};

/// For every marker and stage: the largest percentage difference of a present
/// day in the stage against the marker's median over all present days.
/// Rows follow marker order, then stage order.
std::vector<StageCell> stage_prevalence_table(const SeriesMap& series, std::span<const StageWindow> stages);

/// CSV: marker,stage,max_pct_diff (empty when undefined).
void write_stage_table_csv(std::ostream& os, std::span<const StageCell> cells);

struct HeatmapSpec {
  std::vector<std::string> markers;  // row order
  std::optional<DateRange> range;    // defaults to the full shared axis
  double cell_width = 6.0;
  double cell_height = 18.0;
  double lightest = 97.0; // lightness (percent) of the minimum value
  double darkest = 8.0;   // lightness (percent) of the maximum value
  std::string title;
  std::vector<MarkerPeak> peaks; // drawn as ticks above the grid
};

/// Lightness percent for a value already normalized to [0, 1].
double heatmap_lightness(double normalized, const HeatmapSpec& spec);

/// SVG 1.1 heatmap: one row per marker, one cell per day, darker for higher
/// values after min-max normalization over the whole rendered grid (all equal
/// values map to mid-ramp). Missing days are hatched. Output bytes depend only
/// on the input.
std::string render_heatmap(const SeriesMap& series, const HeatmapSpec& spec);

struct CategoryView {
  PrevalenceTable prevalence;
  SeriesMap smoothed;
  std::string svg;
};

/// Prevalence and heatmap restricted to `subset` (e.g. the crime-related
/// categories); rows follow the subset order and show smoothed prevalence.
CategoryView category_view(const CategorySet& categories, std::span<const TokenizedDoc> docs, DateRange range,
                           const std::vector<std::string>& subset, const AnalysisConfig& cfg, unsigned workers = 1);

inline CategoryView crime_view(const CategorySet& categories, std::span<const TokenizedDoc> docs, DateRange range,
                               const std::vector<std::string>& subset, const AnalysisConfig& cfg,
                               unsigned workers = 1) {
  return category_view(categories, docs, range, subset, cfg, workers);
}

} // namespace crisismon
