#include "crisismon/pipeline.hpp"

#include "crisismon/csv.hpp"
#include "crisismon/expansion.hpp"
#include "crisismon/parallel.hpp"
#include "crisismon/report.hpp"

#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace crisismon {

namespace {

constexpr std::size_t kChunkTweets = 1 << 15;

std::ifstream open_input(const std::filesystem::path& p, const char* what) {
  std::ifstream in(p, std::ios::binary);
  if (!in)
    throw IoError(p.string() + ": cannot open " + what);
  return in;
}

std::ofstream open_output(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out)
    throw IoError(p.string() + ": cannot write");
  return out;
}

void ensure_out_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw IoError(dir.string() + ": cannot create output directory: " + ec.message());
}

void require_path(const std::filesystem::path& p, const char* what) {
  if (p.empty())
    throw ValidationError(std::string("config: missing ") + what);
}

// File-name-safe form of a group or construct name.
std::string slug(std::string_view name) {
  std::string out;
  for (unsigned char c : name)
    out += (std::isalnum(c) || c == '-' || c == '_') ? static_cast<char>(c) : '_';
  return out.empty() ? "unnamed" : out;
}

void write_json(const std::filesystem::path& p, const nlohmann::json& j) {
  auto out = open_output(p);
  out << j.dump(2) << '\n';
}

// Reads every corpus file in chunks and hands analyzable, tokenized documents
// to `sink`. Tokenization of a chunk runs on `workers` threads; documents keep
// file order.
struct IngestSummary {
  std::size_t tweets = 0;
  std::size_t analyzable = 0;
  std::size_t skipped_lines = 0;
};

template <typename Sink>
IngestSummary ingest(const RunConfig& cfg, std::ostream& log, Sink&& sink) {
  IngestSummary summary;
  const unsigned workers = cfg.effective_workers();
  std::vector<Tweet> chunk;
  std::vector<TokenizedDoc> docs;
  auto flush = [&] {
    docs.assign(chunk.size(), {});
    parallel_chunks(chunk.size(), workers, [&](unsigned, std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i)
        docs[i] = tokenize(chunk[i]);
    });
    sink(std::span<const TokenizedDoc>(docs));
    chunk.clear();
  };
  for (const auto& path : cfg.corpus) {
    auto in = open_input(path, "corpus");
    CorpusReader reader(in, cfg.parse_options());
    try {
      while (auto t = reader.next()) {
        ++summary.tweets;
        if (!filter_analyzable(*t))
          continue;
        ++summary.analyzable;
        chunk.push_back(std::move(*t));
        if (chunk.size() == kChunkTweets)
          flush();
      }
    } catch (const ParseError& e) {
      throw ParseError(path.string() + ": " + e.what());
    }
    summary.skipped_lines += reader.report().skipped;
    print_skip_report(log, path.string(), reader.report());
  }
  flush();
  return summary;
}

} // namespace

CorpusStats run_stats(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  if (cfg.corpus.empty())
    throw ValidationError("config: no corpus files");
  CorpusStats stats;
  for (const auto& path : cfg.corpus) {
    auto in = open_input(path, "corpus");
    CorpusReader reader(in, cfg.parse_options());
    try {
      while (auto t = reader.next())
        stats.add(*t);
    } catch (const ParseError& e) {
      throw ParseError(path.string() + ": " + e.what());
    }
    print_skip_report(log, path.string(), reader.report());
  }
  ensure_out_dir(cfg.out);
  write_json(cfg.out / "stats.json", stats.to_json());
  return stats;
}

std::vector<MarkerMapping> run_expand(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  require_path(cfg.lexicon_manifest, "lexicon_manifest");
  require_path(cfg.categories, "categories");
  require_path(cfg.embeddings, "embeddings");
  const auto manifest = load_manifest(cfg.lexicon_manifest);
  const CategorySet categories = load_category_set(cfg.categories);
  EmbeddingLoadReport load_report;
  const EmbeddingTable table = load_embeddings<float>(cfg.embeddings, &load_report);
  for (const auto& w : load_report.warnings)
    log << cfg.embeddings.string() << ": " << w << '\n';

  ensure_out_dir(cfg.out);
  std::vector<MarkerMapping> mappings;
  for (const auto& [construct, path] : manifest) {
    Lexicon seed = load_lexicon(path);
    seed.name = construct;
    std::vector<std::string> unexpanded;
    const Lexicon expanded = expand_lexicon(seed, table, cfg.expansion(), &unexpanded);
    for (const auto& w : unexpanded)
      log << construct << ": seed '" << w << "' not in the embedding vocabulary, kept unexpanded\n";
    MarkerMapping mapping = associate_categories(expanded, categories, cfg.expansion());
    write_json(cfg.out / ("expanded_" + slug(construct) + ".json"), to_json(expanded));
    write_json(cfg.out / ("mapping_" + slug(construct) + ".json"), mapping.to_json());
    mappings.push_back(std::move(mapping));
  }
  return mappings;
}

std::map<std::string, std::vector<std::string>> resolve_groups(const RunConfig& cfg, const CategorySet& categories) {
  std::map<std::string, std::vector<std::string>> groups = cfg.groups;
  for (const auto& p : cfg.mappings) {
    auto in = open_input(p, "marker mapping");
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded())
      throw ParseError(p.string() + ": malformed JSON");
    MarkerMapping m = marker_mapping_from_json(j);
    if (!groups.count(m.construct))
      groups.emplace(m.construct, m.markers());
  }
  if (groups.empty()) {
    std::vector<std::string> all;
    for (const auto& [name, lex] : categories.categories)
      all.push_back(name);
    groups.emplace("all", std::move(all));
  }
  for (const auto& [name, markers] : groups) {
    if (markers.empty())
      throw ValidationError("group '" + name + "' has no markers");
    for (const auto& mk : markers)
      if (!categories.categories.count(mk))
        throw LexiconError(LexiconErrc::unknown_category, "group '" + name + "': unknown category '" + mk + "'");
  }
  return groups;
}

void run_analyze(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  if (!cfg.from || !cfg.to)
    throw ValidationError("analyze: --from and --to are required");
  if (cfg.corpus.empty())
    throw ValidationError("config: no corpus files");
  require_path(cfg.categories, "categories");
  const DateRange range{*cfg.from, *cfg.to};
  if (range.days() < 2)
    throw ValidationError("analyze: date range must span at least 2 days");
  const AnalysisConfig acfg = cfg.analysis();

  const CategorySet all_categories = load_category_set(cfg.categories);
  const auto groups = resolve_groups(cfg, all_categories);
  std::set<std::string> needed;
  for (const auto& [name, markers] : groups)
    needed.insert(markers.begin(), markers.end());
  const CategorySet categories = select_categories(all_categories, {needed.begin(), needed.end()});

  std::vector<EventRecord> events;
  if (!cfg.events.empty()) {
    auto in = open_input(cfg.events, "events");
    events = read_events_csv(in);
  }
  std::vector<StageWindow> stages;
  if (!cfg.stages.empty()) {
    auto in = open_input(cfg.stages, "stages");
    stages = read_stages_csv(in);
  }

  const Matcher matcher(categories);
  PrevalenceCounter counter(matcher, range);
  const unsigned workers = cfg.effective_workers();
  const IngestSummary summary =
      ingest(cfg, log, [&](std::span<const TokenizedDoc> docs) { counter.add(docs, workers); });
  if (counter.dropped() > 0)
    log << "analyze: " << counter.dropped() << " analyzable tweets outside " << range.first.to_string() << ".."
        << range.last.to_string() << " dropped\n";
  const PrevalenceTable table = counter.table();

  ensure_out_dir(cfg.out);
  {
    auto out = open_output(cfg.out / "prevalence.csv");
    write_prevalence_csv(out, table);
  }

  SeriesMap raw, smoothed, signal;
  for (const auto& [name, dp] : table) {
    Series r = dp.percent_series();
    smoothed.emplace(name, smooth(r, acfg.window));
    signal.emplace(name, smoothed_gradient(r, acfg.window));
    raw.emplace(name, std::move(r));
  }
  {
    auto out = open_output(cfg.out / "series.csv");
    csv::write_row(out, {"date", "category", "matched", "total", "percent", "kind"});
    for (const auto& [name, dp] : table) {
      for (std::size_t i = 0; i < dp.rows.size(); ++i) {
        const auto& row = dp.rows[i];
        const auto idx = static_cast<Eigen::Index>(i);
        auto value = [](double v) { return is_missing(v) ? std::string() : csv::format_double(v); };
        csv::write_row(out, {row.date.to_string(), name, std::to_string(row.matched), std::to_string(row.total),
                             value(raw.at(name).values(idx)), "raw"});
        csv::write_row(out, {row.date.to_string(), name, "", "", value(smoothed.at(name).values(idx)), "smoothed"});
        csv::write_row(out, {row.date.to_string(), name, "", "", value(signal.at(name).values(idx)), "gradient"});
      }
    }
  }

  for (const auto& [group, markers] : groups) {
    std::vector<MarkerPeak> peaks;
    std::vector<Series> member_series;
    for (const auto& mk : markers) {
      for (const auto& p : marker_peaks(raw.at(mk), acfg))
        peaks.push_back({mk, p});
      member_series.push_back(raw.at(mk));
    }
    std::vector<MarkerPeak> joint;
    for (const auto& p : joint_peaks(member_series, acfg))
      joint.push_back({"JOINT", p});
    peaks.insert(peaks.end(), joint.begin(), joint.end());
    std::stable_sort(peaks.begin(), peaks.end(),
                     [](const MarkerPeak& a, const MarkerPeak& b) { return a.peak.date < b.peak.date; });

    const std::string tag = slug(group);
    {
      auto out = open_output(cfg.out / ("peaks_" + tag + ".csv"));
      write_peaks_csv(out, peaks);
    }
    HeatmapSpec spec;
    spec.markers = markers;
    spec.title = group;
    spec.peaks = joint;
    {
      auto out = open_output(cfg.out / ("heatmap_" + tag + ".svg"));
      out << render_heatmap(smoothed, spec);
    }
    if (!cfg.events.empty()) {
      auto out = open_output(cfg.out / ("annotations_" + tag + ".csv"));
      write_annotations_csv(out, annotate_peaks(joint, events, cfg.lead));
    }
  }

  if (!cfg.stages.empty()) {
    auto out = open_output(cfg.out / "stage_table.csv");
    write_stage_table_csv(out, stage_prevalence_table(smoothed, stages));
  }

  nlohmann::json s;
  s["tweets_read"] = summary.tweets;
  s["analyzable"] = summary.analyzable;
  s["skipped_lines"] = summary.skipped_lines;
  s["dropped_out_of_range"] = counter.dropped();
  s["from"] = range.first.to_string();
  s["to"] = range.last.to_string();
  s["window"] = acfg.window;
  s["sigma_mult"] = acfg.sigma_mult;
  s["groups"] = groups;
  write_json(cfg.out / "summary.json", s);
}

void run_render(const RunConfig& cfg, const std::filesystem::path& prevalence_csv,
                const std::vector<std::string>& markers, const std::filesystem::path& svg_path, std::ostream& log) {
  cfg.validate();
  auto in = open_input(prevalence_csv, "prevalence csv");
  const PrevalenceTable table = read_prevalence_csv(in);
  if (table.empty())
    throw ValidationError(prevalence_csv.string() + ": no rows");
  SeriesMap series;
  for (const auto& [name, dp] : table) {
    Series r = dp.percent_series();
    series.emplace(name, cfg.window > 1 ? smooth(r, cfg.window) : r);
  }
  HeatmapSpec spec;
  if (markers.empty())
    for (const auto& [name, s] : series)
      spec.markers.push_back(name);
  else
    spec.markers = markers;
  if (cfg.from || cfg.to) {
    const Series& axis = series.begin()->second;
    spec.range = DateRange{cfg.from.value_or(axis.start), cfg.to.value_or(axis.range().last)};
  }
  const std::string svg = render_heatmap(series, spec);
  if (!svg_path.parent_path().empty())
    ensure_out_dir(svg_path.parent_path());
  auto out = open_output(svg_path);
  out << svg;
  log << "render: wrote " << svg_path.string() << " (" << spec.markers.size() << " rows)\n";
}

} // namespace crisismon
