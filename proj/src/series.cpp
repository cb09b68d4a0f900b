#include "crisismon/series.hpp"

#include <algorithm>
#include <bit>

namespace crisismon {

std::string_view to_string(SeriesKind kind) {
  switch (kind) {
  case SeriesKind::raw:
    return "raw";
  case SeriesKind::smoothed:
    return "smoothed";
  case SeriesKind::gradient:
    return "gradient";
  }
  return "raw";
}

std::string_view to_string(Direction d) { return d == Direction::rise ? "rise" : "fall"; }

Series Series::slice(DateRange r) const {
  if (r.last < r.first || r.first < start || r.last > range().last)
    throw ValidationError("series slice " + r.first.to_string() + ".." + r.last.to_string() + " outside " +
                          start.to_string() + ".." + range().last.to_string());
  return {r.first, values.segment(r.first - start, static_cast<Eigen::Index>(r.days())), kind};
}

namespace {

// Mean taken relative to the first value, so equal inputs give that value exactly.
template <typename It>
double shifted_mean(It begin, It end) {
  const double ref = *begin;
  double acc = 0.0;
  std::size_t n = 0;
  for (It it = begin; it != end; ++it, ++n)
    acc += *it - ref;
  return ref + acc / static_cast<double>(n);
}

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;
};

MeanStd population_stats(const std::vector<double>& xs) {
  MeanStd r;
  if (xs.empty())
    return r;
  r.mean = shifted_mean(xs.begin(), xs.end());
  double ss = 0.0;
  for (double x : xs)
    ss += (x - r.mean) * (x - r.mean);
  r.stddev = std::sqrt(ss / static_cast<double>(xs.size()));
  return r;
}

// Range-minimum queries over a fixed array.
class SparseMin {
public:
  explicit SparseMin(std::span<const double> xs) {
    const std::size_t n = xs.size();
    levels_.emplace_back(xs.begin(), xs.end());
    for (std::size_t w = 2; w <= n; w *= 2) {
      const auto& prev = levels_.back();
      std::vector<double> next(n - w + 1);
      for (std::size_t i = 0; i + w <= n; ++i)
        next[i] = std::min(prev[i], prev[i + w / 2]);
      levels_.push_back(std::move(next));
    }
  }
  // min over [lo, hi], inclusive
  double query(std::size_t lo, std::size_t hi) const {
    const std::size_t len = hi - lo + 1;
    const std::size_t k = static_cast<std::size_t>(std::bit_width(len) - 1);
    return std::min(levels_[k][lo], levels_[k][hi + 1 - (std::size_t{1} << k)]);
  }

private:
  std::vector<std::vector<double>> levels_;
};

// Peaks of one run of present values; indices are relative to `xs`.
void segment_peaks(std::span<const double> xs, Eigen::Index offset, const Series& s, std::vector<Peak>& out) {
  const std::size_t n = xs.size();
  if (n < 3)
    return;
  constexpr std::ptrdiff_t kEdge = -1;

  // Nearest strictly greater value on each side (monotonic stacks).
  std::vector<std::ptrdiff_t> left(n, kEdge), right(n, static_cast<std::ptrdiff_t>(n));
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < n; ++i) {
    while (!stack.empty() && xs[stack.back()] <= xs[i])
      stack.pop_back();
    if (!stack.empty())
      left[i] = static_cast<std::ptrdiff_t>(stack.back());
    stack.push_back(i);
  }
  stack.clear();
  for (std::size_t i = n; i-- > 0;) {
    while (!stack.empty() && xs[stack.back()] <= xs[i])
      stack.pop_back();
    if (!stack.empty())
      right[i] = static_cast<std::ptrdiff_t>(stack.back());
    stack.push_back(i);
  }
  SparseMin rmq(xs);

  std::size_t l = 1;
  while (l + 1 < n) {
    std::size_t r = l;
    while (r + 1 < n && xs[r + 1] == xs[l])
      ++r;
    if (r + 1 < n && xs[l - 1] < xs[l] && xs[r + 1] < xs[r]) {
      const double h = xs[l];
      const double left_min = rmq.query(static_cast<std::size_t>(left[l] + 1), l);
      const double right_min = rmq.query(r, static_cast<std::size_t>(right[r] - 1));
      Peak p;
      p.index = offset + static_cast<Eigen::Index>(l);
      p.date = s.date(p.index);
      p.height = h;
      p.prominence = std::max(0.0, h - std::max(left_min, right_min));
      out.push_back(p);
    }
    l = r + 1;
  }
}

} // namespace

Series smooth(const Series& s, int window) {
  if (window < 1)
    throw ValidationError("smooth: window must be >= 1");
  if (s.kind == SeriesKind::smoothed)
    throw ValidationError("smooth: input is already smoothed");
  Series out{s.start, Eigen::ArrayXd::Constant(s.size(), kMissing), SeriesKind::smoothed};
  std::vector<double> present;
  present.reserve(static_cast<std::size_t>(window));
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    present.clear();
    for (Eigen::Index j = std::max<Eigen::Index>(0, i - window + 1); j <= i; ++j)
      if (!is_missing(s.values(j)))
        present.push_back(s.values(j));
    if (!present.empty())
      out.values(i) = shifted_mean(present.begin(), present.end());
  }
  return out;
}

Series gradient(const Series& s) {
  const Eigen::Index n = s.size();
  if (n < 2)
    throw ValidationError("gradient: series needs at least 2 days");
  Series out{s.start, Eigen::ArrayXd(n), SeriesKind::gradient};
  const auto& v = s.values;
  // NaN propagates through the arithmetic.
  out.values(0) = v(1) - v(0);
  out.values(n - 1) = v(n - 1) - v(n - 2);
  for (Eigen::Index i = 1; i + 1 < n; ++i)
    out.values(i) = (v(i + 1) - v(i - 1)) / 2.0;
  return out;
}

std::vector<Peak> find_peaks(const Series& s) {
  std::vector<Peak> out;
  const Eigen::Index n = s.size();
  Eigen::Index i = 0;
  while (i < n) {
    while (i < n && is_missing(s.values(i)))
      ++i;
    Eigen::Index j = i;
    while (j < n && !is_missing(s.values(j)))
      ++j;
    if (j > i)
      segment_peaks(std::span<const double>(s.values.data() + i, static_cast<std::size_t>(j - i)), i, s, out);
    i = j;
  }
  return out;
}

std::vector<Peak> filter_peaks(std::span<const Peak> peaks, double sigma_mult) {
  std::vector<double> prominences;
  prominences.reserve(peaks.size());
  for (const auto& p : peaks)
    prominences.push_back(p.prominence);
  const auto stats = population_stats(prominences);
  const double threshold = stats.mean + sigma_mult * stats.stddev;
  std::vector<Peak> kept;
  for (const auto& p : peaks)
    if (p.prominence > threshold)
      kept.push_back(p);
  return kept;
}

Series smoothed_gradient(const Series& raw, int window) { return smooth(gradient(smooth(raw, window)), window); }

std::vector<Peak> marker_peaks(const Series& raw, const AnalysisConfig& cfg) {
  cfg.validate();
  const Series signal = smoothed_gradient(raw, cfg.window);
  auto rises = filter_peaks(find_peaks(signal), cfg.sigma_mult);
  Series negated = signal;
  negated.values = -signal.values;
  auto falls = filter_peaks(find_peaks(negated), cfg.sigma_mult);
  for (auto& p : falls)
    p.direction = Direction::fall;
  std::vector<Peak> out;
  out.reserve(rises.size() + falls.size());
  std::merge(rises.begin(), rises.end(), falls.begin(), falls.end(), std::back_inserter(out),
             [](const Peak& a, const Peak& b) { return a.index < b.index; });
  return out;
}

Series z_normalize(const Series& s) {
  std::vector<double> present;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (!is_missing(s.values(i)))
      present.push_back(s.values(i));
  Series out = s;
  const auto stats = population_stats(present);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (is_missing(s.values(i)))
      continue;
    out.values(i) = stats.stddev > 0.0 ? (s.values(i) - stats.mean) / stats.stddev : 0.0;
  }
  return out;
}

JointSignal joint_signal(std::span<const Series> markers, const AnalysisConfig& cfg) {
  cfg.validate();
  if (markers.empty())
    throw ValidationError("joint peaks: need at least one marker series");
  for (const auto& m : markers)
    if (!m.same_axis(markers.front()))
      throw ValidationError("joint peaks: marker series do not share a date axis");

  const Eigen::Index n = markers.front().size();
  Eigen::ArrayXd sum_abs = Eigen::ArrayXd::Zero(n);
  Eigen::ArrayXd sum_signed = Eigen::ArrayXd::Zero(n);
  Eigen::ArrayXd count = Eigen::ArrayXd::Zero(n);
  for (const auto& m : markers) {
    const Series z = z_normalize(smoothed_gradient(m, cfg.window));
    for (Eigen::Index i = 0; i < n; ++i) {
      if (is_missing(z.values(i)))
        continue;
      sum_abs(i) += std::abs(z.values(i));
      sum_signed(i) += z.values(i);
      count(i) += 1.0;
    }
  }
  const Date start = markers.front().start;
  JointSignal js{{start, Eigen::ArrayXd(n), SeriesKind::smoothed}, {start, Eigen::ArrayXd(n), SeriesKind::smoothed}};
  for (Eigen::Index i = 0; i < n; ++i) {
    js.magnitude.values(i) = count(i) > 0 ? sum_abs(i) / count(i) : kMissing;
    js.signed_mean.values(i) = count(i) > 0 ? sum_signed(i) / count(i) : kMissing;
  }
  return js;
}

std::vector<Peak> joint_peaks(std::span<const Series> markers, const AnalysisConfig& cfg) {
  const JointSignal js = joint_signal(markers, cfg);
  auto peaks = filter_peaks(find_peaks(js.magnitude), cfg.sigma_mult);
  for (auto& p : peaks)
    p.direction = js.signed_mean.values(p.index) < 0.0 ? Direction::fall : Direction::rise;
  return peaks;
}

} // namespace crisismon
