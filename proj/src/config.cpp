#include "crisismon/config.hpp"

#include "crisismon/parallel.hpp"

#include <fstream>

namespace crisismon {

unsigned RunConfig::effective_workers() const { return workers == 0 ? default_workers() : workers; }

void RunConfig::validate() const {
  expansion().validate();
  analysis().validate();
  if (lead < 0)
    throw ValidationError("config: lead must be >= 0");
  if (from && to && *to < *from)
    throw ValidationError("config: empty date range " + from->to_string() + ".." + to->to_string());
  if (utc_offset_minutes < -24 * 60 || utc_offset_minutes > 24 * 60)
    throw ValidationError("config: utc offset out of range");
}

namespace {

std::filesystem::path resolve(const nlohmann::json& v, const std::filesystem::path& base) {
  std::filesystem::path p = v.get<std::string>();
  return p.is_relative() && !base.empty() ? base / p : p;
}

} // namespace

RunConfig RunConfig::from_json(const nlohmann::json& j, const std::filesystem::path& base) {
  if (!j.is_object())
    throw ParseError("config: expected a JSON object");
  RunConfig c;
  try {
    if (auto it = j.find("corpus"); it != j.end()) {
      if (it->is_string())
        c.corpus.push_back(resolve(*it, base));
      else
        for (const auto& p : *it)
          c.corpus.push_back(resolve(p, base));
    }
    if (auto it = j.find("mappings"); it != j.end())
      for (const auto& p : *it)
        c.mappings.push_back(resolve(p, base));
    auto path_field = [&](const char* key, std::filesystem::path& dst) {
      if (auto it = j.find(key); it != j.end())
        dst = resolve(*it, base);
    };
    path_field("lexicon_manifest", c.lexicon_manifest);
    path_field("categories", c.categories);
    path_field("embeddings", c.embeddings);
    path_field("events", c.events);
    path_field("stages", c.stages);
    path_field("out", c.out);
    c.k = j.value("k", c.k);
    c.m = j.value("m", c.m);
    c.window = j.value("window", c.window);
    c.sigma_mult = j.value("sigma_mult", c.sigma_mult);
    c.lead = j.value("lead", c.lead);
    c.utc_offset_minutes = j.value("utc_offset_minutes", c.utc_offset_minutes);
    c.workers = j.value("workers", c.workers);
    c.strict = j.value("strict", c.strict);
    if (auto it = j.find("from"); it != j.end())
      c.from = Date::parse(it->get<std::string>());
    if (auto it = j.find("to"); it != j.end())
      c.to = Date::parse(it->get<std::string>());
    if (auto it = j.find("groups"); it != j.end())
      c.groups = it->get<std::map<std::string, std::vector<std::string>>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw IoError(path.string() + ": cannot open config");
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded())
    throw ParseError(path.string() + ": malformed JSON");
  return from_json(j, path.parent_path());
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  auto paths = [](const std::vector<std::filesystem::path>& ps) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& p : ps)
      a.push_back(p.string());
    return a;
  };
  j["corpus"] = paths(corpus);
  j["mappings"] = paths(mappings);
  j["lexicon_manifest"] = lexicon_manifest.string();
  j["categories"] = categories.string();
  j["embeddings"] = embeddings.string();
  j["events"] = events.string();
  j["stages"] = stages.string();
  j["out"] = out.string();
  j["k"] = k;
  j["m"] = m;
  j["window"] = window;
  j["sigma_mult"] = sigma_mult;
  j["lead"] = lead;
  j["utc_offset_minutes"] = utc_offset_minutes;
  j["workers"] = workers;
  j["strict"] = strict;
  if (from)
    j["from"] = from->to_string();
  if (to)
    j["to"] = to->to_string();
  j["groups"] = groups;
  return j;
}

} // namespace crisismon
