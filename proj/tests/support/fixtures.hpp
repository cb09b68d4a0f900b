#pragma once

// On-disk fixtures: scratch directories, a planted-burst corpus, small
// category sets and embedding tables.

#include "support/generators.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fixture {

namespace fs = std::filesystem;

class TempDir {
public:
  explicit TempDir(const std::string& tag) {
    static std::random_device rd;
    path_ = fs::temp_directory_path() / ("crisismon-" + tag + "-" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const noexcept { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

private:
  fs::path path_;
};

inline void write_file(const fs::path& p, const std::string& content) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << content;
}

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Marker words: one category per word, plus a background category that
/// never changes rate.
struct BurstSpec {
  int days = 90;
  int tweets_per_day = 400;
  int onset = 40;
  int burst_days = 3;
  double baseline = 0.05;
  double burst = 0.30;
  std::vector<std::string> markers{"miedo", "tristeza", "enojo"};
  std::uint64_t seed = 2020;
};

inline std::string iso_utc(std::int64_t epoch) {
  const auto day = crisismon::Date::from_serial(epoch >= 0 ? epoch / 86400 : (epoch - 86399) / 86400);
  const std::int64_t sec = epoch - day.serial() * 86400;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%sT%02d:%02d:%02dZ", day.to_string().c_str(), static_cast<int>(sec / 3600),
                static_cast<int>(sec / 60 % 60), static_cast<int>(sec % 60));
  return buf;
}

inline crisismon::Date burst_start() { return crisismon::Date::from_ymd(2020, 3, 1); }

/// Corpus in which every marker word appears independently in each tweet with
/// the baseline rate, rising to the burst rate for `burst_days` from `onset`.
/// Each day also carries retweets (never analyzed) and some replies.
inline std::string burst_corpus(const BurstSpec& spec) {
  gen::Rng rng(spec.seed);
  std::ostringstream out;
  std::uniform_int_distribution<int> second(0, 86399), kind(0, 9);
  std::size_t id = 0;
  const crisismon::Date first = burst_start();
  for (int d = 0; d < spec.days; ++d) {
    const bool in_burst = d >= spec.onset && d < spec.onset + spec.burst_days;
    std::bernoulli_distribution hit(in_burst ? spec.burst : spec.baseline);
    // Local midnight is 03:00 UTC at the default offset.
    const std::int64_t day_start = (first + d).serial() * 86400 + 3 * 3600;
    for (int t = 0; t < spec.tweets_per_day; ++t) {
      std::string text = "hoy en casa";
      for (const auto& m : spec.markers)
        if (hit(rng))
          text += " " + m;
      const int k = kind(rng);
      const char* kname = k == 0 ? "reply" : "original";
      out << gen::tweet_line(std::to_string(id++), iso_utc(day_start + second(rng)), text, kname,
                             "u" + std::to_string(rng() % 500))
          << '\n';
    }
    for (int t = 0; t < spec.tweets_per_day / 4; ++t) {
      out << gen::tweet_line(std::to_string(id++), iso_utc(day_start + second(rng)),
                             "RT " + spec.markers.front() + " " + spec.markers.front(), "retweet", "rt")
          << '\n';
    }
  }
  return out.str();
}

inline std::string burst_categories(const BurstSpec& spec) {
  nlohmann::json j;
  j["name"] = "empath-burst";
  j["categories"] = nlohmann::json::object();
  for (const auto& m : spec.markers)
    j["categories"][m] = nlohmann::json::array({m});
  j["categories"]["hogar"] = nlohmann::json::array({"casa"});
  return j.dump(2);
}

/// Full analyze configuration for the burst fixture in `dir`.
inline nlohmann::json burst_config(const fs::path& dir, const BurstSpec& spec, const fs::path& out) {
  write_file(dir / "corpus.jsonl", burst_corpus(spec));
  write_file(dir / "categories.json", burst_categories(spec));
  nlohmann::json cfg;
  cfg["corpus"] = {(dir / "corpus.jsonl").string()};
  cfg["categories"] = (dir / "categories.json").string();
  cfg["from"] = burst_start().to_string();
  cfg["to"] = (burst_start() + (spec.days - 1)).to_string();
  cfg["out"] = out.string();
  cfg["groups"] = {{"burst", spec.markers}};
  return cfg;
}

/// Runs the CLI, returning its exit code; stderr goes to `log`.
inline int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string("\"") + CRISISMON_CLI + "\" " + args + " 2>\"" + log.string() + "\" >/dev/null";
  const int status = std::system(cmd.c_str());
  if (status == -1)
    return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

inline std::vector<std::string> list_files(const fs::path& dir) {
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(dir))
    names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  return names;
}

} // namespace fixture
