#include "crisismon/report.hpp"

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/svg.hpp"

#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

using namespace crisismon;

namespace {

const Date kStart = Date::from_ymd(2020, 3, 1);

MarkerPeak peak_on(Date d, std::string marker = "anxiety") {
  return {std::move(marker), Peak{d, 0, 1.0, 1.0, Direction::rise}};
}

std::vector<EventRecord> fixture_events() {
  std::ifstream in(std::string(CRISISMON_DATA_DIR) + "/events/mental_health.csv");
  REQUIRE(in.good());
  return read_events_csv(in);
}

} // namespace

TEST_CASE("annotate_peaks examples") {
  const Date d = Date::from_ymd(2020, 4, 10);
  std::vector<EventRecord> events{{d + 2, "after"}, {d - 3, "before"}, {d - 7, "too early"}, {d, "same day"}};
  std::vector<MarkerPeak> peaks{peak_on(d)};
  auto a = annotate_peaks(peaks, events, 6);
  REQUIRE(a.size() == 1);
  REQUIRE(a[0].events.size() == 2);
  CHECK(a[0].events[0].description == "before");
  CHECK(a[0].events[1].description == "same day");

  auto none = annotate_peaks(peaks, {}, 6);
  CHECK(none[0].events.empty());

  CHECK(annotate_peaks(peaks, events, 0)[0].events.size() == 1);
  CHECK_THROWS_AS(annotate_peaks(peaks, events, -1), ValidationError);

  std::ostringstream os;
  write_annotations_csv(os, annotate_peaks(std::vector<MarkerPeak>{peak_on(d - 30)}, events, 6));
  CHECK(os.str() == "peak_date,marker,direction,prominence,event_date,description\n2020-03-11,anxiety,rise,1,,\n");
}

TEST_CASE("annotate_peaks on the March 8 event fixture") {
  const auto events = fixture_events();
  CHECK(events.size() == 20);
  std::vector<MarkerPeak> peaks{peak_on(Date::from_ymd(2020, 3, 8))};
  auto a = annotate_peaks(peaks, events, 6);
  REQUIRE(a[0].events.size() == 6);
  CHECK(a[0].events.front().date == Date::from_ymd(2020, 3, 3));
  CHECK(a[0].events.back().date == Date::from_ymd(2020, 3, 8));
}

TEST_CASE("event and stage CSV readers") {
  std::istringstream ev("date,description\n2020-03-03,\"first case, confirmed\"\n");
  auto e = read_events_csv(ev);
  REQUIRE(e.size() == 1);
  CHECK(e[0].description == "first case, confirmed");

  std::istringstream bad_header("when,what\n");
  CHECK_THROWS_AS(read_events_csv(bad_header), ParseError);
  std::istringstream bad_date("date,description\n2020-13-03,x\n");
  CHECK_THROWS_AS(read_events_csv(bad_date), ParseError);

  std::ifstream st(std::string(CRISISMON_DATA_DIR) + "/stages/argentina_2020.csv");
  auto stages = read_stages_csv(st);
  REQUIRE(stages.size() == 3);
  CHECK(stages[0].stage == "preparedness");
  std::istringstream reversed("stage,start,end\nx,2020-03-05,2020-03-01\n");
  CHECK_THROWS_AS(read_stages_csv(reversed), ValidationError);
}

TEST_CASE("write_peaks_csv") {
  std::vector<MarkerPeak> peaks{{"fear", Peak{kStart + 7, 7, 0.25, 0.125, Direction::fall}}};
  std::ostringstream os;
  write_peaks_csv(os, peaks);
  CHECK(os.str() == "date,marker,direction,height,prominence\n2020-03-08,fear,fall,0.25,0.125\n");
}

TEST_CASE("stage_prevalence_table examples") {
  // Median of the whole series is 4; the stage holds a 6.
  SeriesMap m{{"fear", gen::to_series({4, 4, 6, 4, 2}, kStart)}};
  std::vector<StageWindow> stages{{"A", kStart + 1, kStart + 2}, {"B", kStart + 4, kStart + 9}};
  auto t = stage_prevalence_table(m, stages);
  REQUIRE(t.size() == 2);
  CHECK(t[0] == StageCell{"fear", "A", 50.0});
  CHECK(t[1] == StageCell{"fear", "B", -50.0});

  SeriesMap flat{{"x", gen::to_series(std::vector<double>(20, 3.5), kStart)}};
  for (const auto& c : stage_prevalence_table(flat, stages))
    CHECK(c.max_pct_diff == 0.0);

  SeriesMap zero{{"z", gen::to_series(std::vector<double>(20, 0.0), kStart)}};
  CHECK_FALSE(stage_prevalence_table(zero, stages)[0].max_pct_diff.has_value());
  std::vector<StageWindow> outside{{"later", kStart + 100, kStart + 120}};
  CHECK_FALSE(stage_prevalence_table(flat, outside)[0].max_pct_diff.has_value());

  std::ostringstream os;
  write_stage_table_csv(os, t);
  CHECK(os.str() == "marker,stage,max_pct_diff\nfear,A,50\nfear,B,-50\n");
}

TEST_CASE("stage_prevalence_table equals the naive double loop") {
  gen::Rng rng(120);
  std::vector<StageWindow> stages{{"A", kStart, kStart + 45}, {"B", kStart + 40, kStart + 80}, {"C", kStart + 81, kStart + 119}};
  SeriesMap m;
  std::map<std::string, std::vector<double>> raw;
  for (int k = 0; k < 12; ++k) {
    auto v = gen::random_walk(rng, 120, 0.05);
    raw["m" + std::to_string(k)] = v;
    m.emplace("m" + std::to_string(k), gen::to_series(v, kStart));
  }
  auto t = stage_prevalence_table(m, stages);
  REQUIRE(t.size() == 12 * stages.size());
  std::size_t i = 0;
  for (const auto& [name, v] : raw) {
    auto ref = oracle::naive_stage_row(v, kStart, stages);
    for (std::size_t s = 0; s < stages.size(); ++s, ++i) {
      CHECK(t[i].marker == name);
      CHECK(t[i].stage == stages[s].stage);
      REQUIRE(t[i].max_pct_diff.has_value() == ref[s].has_value());
      if (ref[s])
        CHECK(std::abs(*t[i].max_pct_diff - *ref[s]) <= 1e-9);
    }
  }
}

TEST_CASE("heatmap examples") {
  SeriesMap m{{"fear", gen::to_series({0, 50, 100}, kStart)}};
  HeatmapSpec spec;
  spec.markers = {"fear"};
  const auto svg = render_heatmap(m, spec);
  auto cells = svgscan::cells(svg);
  REQUIRE(cells.size() == 3);
  CHECK(*cells[0].lightness > *cells[1].lightness);
  CHECK(*cells[1].lightness > *cells[2].lightness);
  CHECK(*cells[0].lightness == spec.lightest);
  CHECK(*cells[2].lightness == spec.darkest);
  CHECK(cells[2].date == "2020-03-03");
  CHECK(svg == render_heatmap(m, spec));

  SeriesMap same{{"a", gen::to_series({7, 7, 7}, kStart)}, {"b", gen::to_series({7, 7, 7}, kStart)}};
  spec.markers = {"a", "b"};
  auto flat = svgscan::cells(render_heatmap(same, spec));
  REQUIRE(flat.size() == 6);
  for (const auto& c : flat)
    CHECK(*c.lightness == doctest::Approx(heatmap_lightness(0.5, spec)));

  SeriesMap gaps{{"g", gen::to_series({1, NAN, 3}, kStart)}};
  spec.markers = {"g"};
  auto g = svgscan::cells(render_heatmap(gaps, spec));
  CHECK_FALSE(g[1].lightness.has_value());
  CHECK(g[0].lightness.has_value());

  spec.markers = {"nope"};
  CHECK_THROWS_AS(render_heatmap(gaps, spec), ValidationError);
  spec.markers = {};
  CHECK_THROWS_AS(render_heatmap(gaps, spec), ValidationError);

  SeriesMap tricky{{"a<b&\"c\"", gen::to_series({1, 2}, kStart)}};
  spec.markers = {"a<b&\"c\""};
  spec.title = "fear & <loathing>";
  auto t = render_heatmap(tricky, spec);
  CHECK(t.find("a&lt;b&amp;&quot;c&quot;") != std::string::npos);
  CHECK(t.find("fear &amp; &lt;loathing&gt;") != std::string::npos);
}

TEST_CASE("property: heatmap darkness follows value") {
  gen::Rng rng(808);
  for (int iter = 0; iter < 20; ++iter) {
    SeriesMap m;
    HeatmapSpec spec;
    for (int k = 0; k < 4; ++k) {
      std::string name = "m" + std::to_string(k);
      m.emplace(name, gen::to_series(gen::random_walk(rng, 90, 0.05, iter % 2 == 0), kStart));
      spec.markers.push_back(name);
    }
    spec.range = DateRange{kStart + 10, kStart + 70};
    auto cells = svgscan::cells(render_heatmap(m, spec));
    REQUIRE(cells.size() == 4 * 61);
    for (std::size_t a = 0; a < cells.size(); ++a)
      for (std::size_t b = 0; b < cells.size(); ++b) {
        if (!cells[a].value || !cells[b].value || cells[a].marker != cells[b].marker)
          continue;
        if (*cells[a].value > *cells[b].value)
          CHECK(*cells[a].lightness < *cells[b].lightness);
        if (*cells[a].value == *cells[b].value)
          CHECK(*cells[a].lightness == *cells[b].lightness);
      }
  }
}

TEST_CASE("category_view") {
  CategorySet cats{"empath", {}};
  for (const char* name : {"crime", "violence", "police", "sadness"}) {
    Lexicon l{name, {}};
    l.add(name);
    cats.categories.emplace(name, l);
  }
  std::vector<TokenizedDoc> docs;
  gen::Rng rng(4);
  const char* words[] = {"crime", "violence", "police", "sadness", "hola", "chau"};
  for (int i = 0; i < 400; ++i)
    docs.push_back({std::to_string(i), kStart + static_cast<int>(rng() % 30), {words[rng() % 6], words[rng() % 6]}});
  const DateRange range{kStart, kStart + 29};
  const AnalysisConfig cfg{};

  auto v = crime_view(cats, docs, range, {"crime", "police"}, cfg);
  CHECK(v.prevalence.size() == 2);
  std::set<std::string> markers;
  for (const auto& c : svgscan::cells(v.svg))
    markers.insert(c.marker);
  CHECK(markers == std::set<std::string>{"crime", "police"});
  CHECK(svgscan::cells(v.svg).size() == 2 * 30);

  CHECK_THROWS_AS(crime_view(cats, docs, range, {}, cfg), ValidationError);
  CHECK_THROWS_AS(crime_view(cats, docs, range, {"crime", "piracy"}, cfg), LexiconError);

  // The full subset renders the same picture as the general path.
  std::vector<std::string> all{"crime", "police", "sadness", "violence"};
  auto full = crime_view(cats, docs, range, all, cfg);
  const Matcher matcher(cats);
  SeriesMap smoothed;
  for (const auto& [name, dp] : aggregate_daily(docs, matcher, range))
    smoothed.emplace(name, smooth(dp.percent_series(), cfg.window));
  HeatmapSpec spec;
  spec.markers = all;
  CHECK(full.svg == render_heatmap(smoothed, spec));
}
