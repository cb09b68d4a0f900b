// crisismon: lexicon-based crisis monitoring over tweet corpora.
//
//   crisismon stats   --config run.json
//   crisismon expand  --config run.json
//   crisismon analyze --config run.json --from 2020-03-01 --to 2020-06-30
//   crisismon render  --prevalence out/prevalence.csv --markers fear,anger --svg fear.svg
//
// Exit codes: 0 success, 1 validation/contract failure, 2 I/O or parse failure.

#include "crisismon/error.hpp"
#include "crisismon/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

struct Overrides {
  std::string config;
  std::vector<std::string> corpus;
  std::string manifest, categories, embeddings, events, stages, out;
  std::vector<std::string> mappings;
  std::optional<std::string> from, to;
  std::optional<std::size_t> k, m;
  std::optional<int> window, lead, tz_offset;
  std::optional<double> sigma_mult;
  std::optional<unsigned> workers;
  bool strict = false;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON run configuration");
  cmd->add_option("--corpus", o.corpus, "line-delimited JSON corpus file(s)");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--workers", o.workers, "worker threads (default: all cores)");
  cmd->add_option("--tz-offset", o.tz_offset, "day-bucketing UTC offset in minutes (default -180)");
  cmd->add_flag("--strict", o.strict, "abort on the first malformed corpus line");
}

crisismon::RunConfig build_config(const Overrides& o) {
  using namespace crisismon;
  RunConfig cfg = o.config.empty() ? RunConfig{} : RunConfig::load(o.config);
  if (!o.corpus.empty())
    cfg.corpus.assign(o.corpus.begin(), o.corpus.end());
  if (!o.mappings.empty())
    cfg.mappings.assign(o.mappings.begin(), o.mappings.end());
  auto set_path = [](const std::string& v, std::filesystem::path& dst) {
    if (!v.empty())
      dst = v;
  };
  set_path(o.manifest, cfg.lexicon_manifest);
  set_path(o.categories, cfg.categories);
  set_path(o.embeddings, cfg.embeddings);
  set_path(o.events, cfg.events);
  set_path(o.stages, cfg.stages);
  set_path(o.out, cfg.out);
  if (o.from)
    cfg.from = Date::parse(*o.from);
  if (o.to)
    cfg.to = Date::parse(*o.to);
  if (o.k)
    cfg.k = *o.k;
  if (o.m)
    cfg.m = *o.m;
  if (o.window)
    cfg.window = *o.window;
  if (o.lead)
    cfg.lead = *o.lead;
  if (o.tz_offset)
    cfg.utc_offset_minutes = *o.tz_offset;
  if (o.sigma_mult)
    cfg.sigma_mult = *o.sigma_mult;
  if (o.workers)
    cfg.workers = *o.workers;
  if (o.strict)
    cfg.strict = true;
  cfg.validate();
  return cfg;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lexicon-based crisis and mental-health monitoring over tweet corpora"};
  app.require_subcommand(1);
  Overrides o;

  auto* stats = app.add_subcommand("stats", "corpus statistics -> <out>/stats.json");
  add_common(stats, o);

  auto* expand = app.add_subcommand("expand", "expand seed lexicons and rank categories -> mapping files");
  add_common(expand, o);
  expand->add_option("--manifest", o.manifest, "lexicon manifest JSON");
  expand->add_option("--categories", o.categories, "category set JSON");
  expand->add_option("--embeddings", o.embeddings, "embedding table (text format)");
  expand->add_option("--k", o.k, "neighbors per seed word (default 10)");
  expand->add_option("--m", o.m, "categories kept per construct (default 10)");

  auto* analyze = app.add_subcommand("analyze", "prevalence, peaks, heatmaps and stage table");
  add_common(analyze, o);
  analyze->add_option("--categories", o.categories, "category set JSON");
  analyze->add_option("--mappings", o.mappings, "marker mapping files from expand (one group each)");
  analyze->add_option("--events", o.events, "events CSV (date,description)");
  analyze->add_option("--stages", o.stages, "stage windows CSV (stage,start,end)");
  analyze->add_option("--from", o.from, "first day, YYYY-MM-DD");
  analyze->add_option("--to", o.to, "last day, YYYY-MM-DD");
  analyze->add_option("--window", o.window, "smoothing window in days (default 7)");
  analyze->add_option("--sigma-mult", o.sigma_mult, "prominence threshold multiplier (default 1.0)");
  analyze->add_option("--lead", o.lead, "days before a peak searched for events (default 6)");

  std::string prevalence, svg;
  std::vector<std::string> markers;
  auto* render = app.add_subcommand("render", "heatmap SVG from a prevalence CSV");
  render->add_option("--config", o.config, "JSON run configuration");
  render->add_option("--prevalence", prevalence, "prevalence CSV (default <out>/prevalence.csv)");
  render->add_option("--markers", markers, "rows, in order (default: all)")->delimiter(',');
  render->add_option("--svg", svg, "output SVG (default <out>/heatmap.svg)");
  render->add_option("--out", o.out, "output directory");
  render->add_option("--from", o.from, "first rendered day");
  render->add_option("--to", o.to, "last rendered day");
  render->add_option("--window", o.window, "smoothing window in days, 1 for raw (default 7)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const crisismon::RunConfig cfg = build_config(o);
    if (stats->parsed()) {
      crisismon::run_stats(cfg, std::cerr);
    } else if (expand->parsed()) {
      crisismon::run_expand(cfg, std::cerr);
    } else if (analyze->parsed()) {
      crisismon::run_analyze(cfg, std::cerr);
    } else if (render->parsed()) {
      std::filesystem::path in = prevalence.empty() ? cfg.out / "prevalence.csv" : std::filesystem::path(prevalence);
      std::filesystem::path outsvg = svg.empty() ? cfg.out / "heatmap.svg" : std::filesystem::path(svg);
      crisismon::run_render(cfg, in, markers, outsvg, std::cerr);
    }
  } catch (const crisismon::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
