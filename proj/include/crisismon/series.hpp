#pragma once

#include "crisismon/date.hpp"
#include "crisismon/error.hpp"

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace crisismon {

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
inline bool is_missing(double v) noexcept { return std::isnan(v); }

enum class SeriesKind { raw, smoothed, gradient };
std::string_view to_string(SeriesKind kind);

/// Values over contiguous days starting at `start`; NaN marks a missing day.
struct Series {
  Date start;
  Eigen::ArrayXd values;
  SeriesKind kind = SeriesKind::raw;

  Eigen::Index size() const noexcept { return values.size(); }
  Date date(Eigen::Index i) const { return start + i; }
  DateRange range() const { return {start, start + (size() - 1)}; }
  bool same_axis(const Series& other) const { return start == other.start && size() == other.size(); }

  /// Sub-series over `range`, which must lie inside this series' range.
  Series slice(DateRange range) const;
};

struct AnalysisConfig {
  int window = 7;          // smoothing window, days
  double sigma_mult = 1.0; // prominence threshold: mean + sigma_mult * stddev

  void validate() const {
    if (window < 1)
      throw ValidationError("analysis: window must be >= 1");
    if (!std::isfinite(sigma_mult))
      throw ValidationError("analysis: sigma_mult must be finite");
  }
};

enum class Direction { rise, fall };
std::string_view to_string(Direction d);

struct Peak {
  Date date;
  Eigen::Index index = 0;
  double height = 0.0;     // value of the analyzed signal at the peak
  double prominence = 0.0; // >= 0
  Direction direction = Direction::rise;

  bool operator==(const Peak&) const = default;
};

/// Trailing moving average over the present values of the last `window` days
/// (a shorter prefix at the leading edge). A window with no present value
/// yields a missing day. Input must be raw or gradient.
Series smooth(const Series& s, int window);

/// Central differences inside, one-sided at both ends; any difference that
/// touches a missing value is missing. Requires at least two days.
Series gradient(const Series& s);

/// Strict local maxima (a plateau reports its leftmost day) with topographic
/// prominence: height minus the higher of the two lowest points between the
/// peak and the nearest strictly higher value (or the edge) on each side.
/// Missing days split the series; segment edges never hold peaks.
std::vector<Peak> find_peaks(const Series& s);

/// Keeps peaks whose prominence exceeds mean + sigma_mult * population stddev
/// of the given peaks' prominences.
std::vector<Peak> filter_peaks(std::span<const Peak> peaks, double sigma_mult);

/// smooth -> gradient -> smooth, the signal on which change peaks are detected.
Series smoothed_gradient(const Series& raw, int window);

/// Rise peaks of the smoothed gradient and fall peaks of its negation, each
/// filtered by the prominence rule, ordered by day.
std::vector<Peak> marker_peaks(const Series& raw, const AnalysisConfig& cfg);

/// Present values shifted to zero mean and scaled to unit population stddev;
/// all zeros when the stddev is zero.
Series z_normalize(const Series& s);

struct JointSignal {
  Series magnitude; // mean over markers of |z-normalized smoothed gradient|
  Series signed_mean; // mean over markers of the signed z-normalized smoothed gradient
};

JointSignal joint_signal(std::span<const Series> markers, const AnalysisConfig& cfg);

/// Peaks of the joint magnitude signal, filtered by the prominence rule.
/// Direction follows the sign of the signed mean on the peak day.
std::vector<Peak> joint_peaks(std::span<const Series> markers, const AnalysisConfig& cfg);

} // namespace crisismon
