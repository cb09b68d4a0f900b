#pragma once

#include "crisismon/date.hpp"
#include "crisismon/text.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace crisismon {

enum class TweetKind { original, reply, retweet };

std::string_view to_string(TweetKind kind);
std::optional<TweetKind> tweet_kind_from_string(std::string_view s);

struct Tweet {
  std::string id;
  std::int64_t created_at = 0; // seconds since epoch, UTC
  Date date;                   // local calendar day of created_at
  std::string text;
  TweetKind kind = TweetKind::original;
  std::string user_id;
  bool has_hashtag = false;
  std::string lang;
};

struct TokenizedDoc {
  std::string tweet_id;
  Date date;
  TokenList tokens;
};

/// Default day-bucketing offset: UTC-3 (Argentina).
inline constexpr int kDefaultUtcOffsetMinutes = -180;

struct ParseOptions {
  bool strict = false;
  int utc_offset_minutes = kDefaultUtcOffsetMinutes;
  bool check_unique_ids = true;
};

struct SkippedLine {
  std::size_t line = 0;
  std::string reason;
};

struct ParseReport {
  std::size_t lines = 0;
  std::size_t parsed = 0;
  std::size_t skipped = 0;
  std::vector<SkippedLine> skips; // first kMaxRecordedSkips only

  static constexpr std::size_t kMaxRecordedSkips = 1000;
};

/// Parses one JSON line into a Tweet; throws ParseError describing the defect.
Tweet parse_tweet(std::string_view line, int utc_offset_minutes = kDefaultUtcOffsetMinutes);

/// Pulls tweets from a line-delimited JSON stream in file order.
///
/// Blank lines are ignored. In lenient mode a malformed line (bad JSON,
/// missing or mistyped field, duplicate id) is recorded in report() and
/// skipped; in strict mode it raises ParseError carrying the line number.
/// A stream that goes bad raises IoError.
class CorpusReader {
public:
  explicit CorpusReader(std::istream& in, ParseOptions options = {});

  std::optional<Tweet> next();
  const ParseReport& report() const noexcept { return report_; }

private:
  std::istream& in_;
  ParseOptions options_;
  ParseReport report_;
  std::unordered_set<std::string> seen_ids_;
  std::string line_;
};

/// Reads a whole stream.
std::vector<Tweet> parse_corpus(std::istream& in, const ParseOptions& options = {}, ParseReport* report = nullptr);

/// Writes one "path:line: reason" line per recorded skip plus a summary.
void print_skip_report(std::ostream& os, std::string_view source, const ParseReport& report);

/// Only original tweets and replies carry analyzable content.
inline bool filter_analyzable(const Tweet& t) noexcept { return t.kind != TweetKind::retweet; }

inline TokenizedDoc tokenize(const Tweet& t) { return {t.id, t.date, preprocess(t.text)}; }

struct UserStats {
  std::size_t users = 0;
  std::size_t min = 0;
  std::size_t max = 0;
  std::size_t median = 0; // lower median for even user counts
  double avg = 0.0;
};

struct CorpusStats {
  std::size_t total = 0;
  std::size_t n_original = 0;
  std::size_t n_retweet = 0;
  std::size_t n_reply = 0;
  std::size_t n_with_hashtag = 0;
  std::unordered_map<std::string, std::size_t> tweets_per_user;
  std::map<Date, std::size_t> per_day;

  void add(const Tweet& t);
  /// Key-wise summation; merging partial stats equals one pass over the union.
  void merge(const CorpusStats& other);

  /// Absent for an empty corpus.
  std::optional<UserStats> per_user() const;

  nlohmann::json to_json() const;
};

template <typename Range>
CorpusStats compute_corpus_stats(const Range& tweets) {
  CorpusStats stats;
  for (const Tweet& t : tweets)
    stats.add(t);
  return stats;
}

} // namespace crisismon
