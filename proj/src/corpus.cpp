#include "crisismon/corpus.hpp"

#include "crisismon/error.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>

namespace crisismon {

std::string_view to_string(TweetKind kind) {
  switch (kind) {
  case TweetKind::original:
    return "original";
  case TweetKind::reply:
    return "reply";
  case TweetKind::retweet:
    return "retweet";
  }
  return "original";
}

std::optional<TweetKind> tweet_kind_from_string(std::string_view s) {
  if (s == "original")
    return TweetKind::original;
  if (s == "reply")
    return TweetKind::reply;
  if (s == "retweet")
    return TweetKind::retweet;
  return std::nullopt;
}

namespace {

const std::string& required_string(const nlohmann::json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw ParseError(std::string("missing field '") + key + "'");
  if (!it->is_string())
    throw ParseError(std::string("field '") + key + "' is not a string");
  return it->get_ref<const std::string&>();
}

} // namespace

Tweet parse_tweet(std::string_view line, int utc_offset_minutes) {
  nlohmann::json obj = nlohmann::json::parse(line.begin(), line.end(), nullptr, false);
  if (obj.is_discarded())
    throw ParseError("malformed JSON");
  if (!obj.is_object())
    throw ParseError("line is not a JSON object");

  Tweet t;
  t.id = required_string(obj, "id");
  if (t.id.empty())
    throw ParseError("empty id");
  t.created_at = parse_timestamp(required_string(obj, "created_at"));
  t.date = local_date(t.created_at, utc_offset_minutes);
  t.text = required_string(obj, "text");
  const std::string& kind = required_string(obj, "kind");
  auto parsed_kind = tweet_kind_from_string(kind);
  if (!parsed_kind)
    throw ParseError("unknown kind '" + kind + "'");
  t.kind = *parsed_kind;
  t.user_id = required_string(obj, "user_id");
  if (auto it = obj.find("lang"); it != obj.end() && it->is_string())
    t.lang = it->get<std::string>();
  t.has_hashtag = contains_hashtag(t.text);
  return t;
}

CorpusReader::CorpusReader(std::istream& in, ParseOptions options) : in_(in), options_(options) {}

std::optional<Tweet> CorpusReader::next() {
  while (true) {
    if (!std::getline(in_, line_)) {
      if (in_.bad())
        throw IoError("corpus stream became unreadable after line " + std::to_string(report_.lines));
      return std::nullopt;
    }
    ++report_.lines;
    if (!line_.empty() && line_.back() == '\r')
      line_.pop_back();
    if (std::all_of(line_.begin(), line_.end(), [](unsigned char c) { return std::isspace(c); }))
      continue;
    try {
      Tweet t = parse_tweet(line_, options_.utc_offset_minutes);
      if (options_.check_unique_ids && !seen_ids_.insert(t.id).second)
        throw ParseError("duplicate id '" + t.id + "'");
      ++report_.parsed;
      return t;
    } catch (const ParseError& e) {
      if (options_.strict)
        throw ParseError("line " + std::to_string(report_.lines) + ": " + e.what());
      ++report_.skipped;
      if (report_.skips.size() < ParseReport::kMaxRecordedSkips)
        report_.skips.push_back({report_.lines, e.what()});
    }
  }
}

std::vector<Tweet> parse_corpus(std::istream& in, const ParseOptions& options, ParseReport* report) {
  CorpusReader reader(in, options);
  std::vector<Tweet> out;
  while (auto t = reader.next())
    out.push_back(std::move(*t));
  if (report)
    *report = reader.report();
  return out;
}

void print_skip_report(std::ostream& os, std::string_view source, const ParseReport& report) {
  for (const auto& s : report.skips)
    os << source << ':' << s.line << ": skipped: " << s.reason << '\n';
  if (report.skipped > report.skips.size())
    os << source << ": " << (report.skipped - report.skips.size()) << " further skipped lines not listed\n";
  if (report.skipped > 0)
    os << source << ": " << report.parsed << " tweets parsed, " << report.skipped << " lines skipped\n";
}

void CorpusStats::add(const Tweet& t) {
  ++total;
  switch (t.kind) {
  case TweetKind::original:
    ++n_original;
    break;
  case TweetKind::reply:
    ++n_reply;
    break;
  case TweetKind::retweet:
    ++n_retweet;
    break;
  }
  if (t.has_hashtag)
    ++n_with_hashtag;
  ++tweets_per_user[t.user_id];
  ++per_day[t.date];
}

void CorpusStats::merge(const CorpusStats& other) {
  total += other.total;
  n_original += other.n_original;
  n_retweet += other.n_retweet;
  n_reply += other.n_reply;
  n_with_hashtag += other.n_with_hashtag;
  for (const auto& [user, n] : other.tweets_per_user)
    tweets_per_user[user] += n;
  for (const auto& [day, n] : other.per_day)
    per_day[day] += n;
}

std::optional<UserStats> CorpusStats::per_user() const {
  if (tweets_per_user.empty())
    return std::nullopt;
  std::vector<std::size_t> counts;
  counts.reserve(tweets_per_user.size());
  std::size_t sum = 0;
  for (const auto& [user, n] : tweets_per_user) {
    counts.push_back(n);
    sum += n;
  }
  std::sort(counts.begin(), counts.end());
  UserStats s;
  s.users = counts.size();
  s.min = counts.front();
  s.max = counts.back();
  s.median = counts[(counts.size() - 1) / 2];
  s.avg = static_cast<double>(sum) / static_cast<double>(counts.size());
  return s;
}

nlohmann::json CorpusStats::to_json() const {
  nlohmann::json j;
  j["total"] = total;
  j["n_original"] = n_original;
  j["n_retweet"] = n_retweet;
  j["n_reply"] = n_reply;
  j["n_with_hashtag"] = n_with_hashtag;
  if (auto u = per_user()) {
    j["per_user"] = {{"users", u->users}, {"min", u->min}, {"avg", u->avg}, {"max", u->max}, {"median", u->median}};
  } else {
    j["per_user"] = nullptr;
  }
  nlohmann::json days = nlohmann::json::object();
  for (const auto& [day, n] : per_day)
    days[day.to_string()] = n;
  j["per_day"] = std::move(days);
  return j;
}

} // namespace crisismon
