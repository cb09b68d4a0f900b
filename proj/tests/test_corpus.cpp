#include "crisismon/corpus.hpp"
#include "crisismon/error.hpp"

#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <sstream>

using namespace crisismon;

namespace {
std::string line(const std::string& id, const std::string& kind = "original", const std::string& user = "u1",
                 const std::string& text = "hola", const std::string& at = "2020-03-08T14:00:00Z") {
  return gen::tweet_line(id, at, text, kind, user) + "\n";
}
} // namespace

TEST_CASE("dates and timestamps") {
  CHECK(Date::parse("2020-03-08").to_string() == "2020-03-08");
  CHECK(Date::parse("2020-03-01") - Date::parse("2020-02-28") == 2);
  CHECK_THROWS_AS(Date::parse("2020-02-30"), ParseError);
  CHECK_THROWS_AS(Date::parse("2020/03/01"), ParseError);

  const auto t = parse_timestamp("2020-03-08T01:30:00Z");
  CHECK(parse_timestamp("2020-03-08T01:30:00.123Z") == t);
  CHECK(parse_timestamp("2020-03-07T22:30:00-03:00") == t);
  CHECK(parse_timestamp("2020-03-08 04:30:00+0300") == t);
  CHECK_THROWS_AS(parse_timestamp("2020-03-08T25:00:00Z"), ParseError);
  CHECK_THROWS_AS(parse_timestamp("yesterday"), ParseError);

  // 01:30 UTC is still the previous day in Argentina.
  CHECK(local_date(t, kDefaultUtcOffsetMinutes) == Date::parse("2020-03-07"));
  CHECK(local_date(t, 0) == Date::parse("2020-03-08"));
  CHECK(local_date(-1, 0) == Date::parse("1969-12-31"));
}

TEST_CASE("parse_corpus") {
  SUBCASE("empty stream") {
    std::istringstream in("");
    ParseReport rep;
    CHECK(parse_corpus(in, {}, &rep).empty());
    CHECK(rep.skipped == 0);
  }
  SUBCASE("three lines in order") {
    std::istringstream in(line("a") + line("b", "reply") + "\n" + line("c", "retweet"));
    auto tweets = parse_corpus(in);
    REQUIRE(tweets.size() == 3);
    CHECK(tweets[0].id == "a");
    CHECK(tweets[1].kind == TweetKind::reply);
    CHECK(tweets[2].kind == TweetKind::retweet);
    CHECK(tweets[0].date == Date::parse("2020-03-08"));
  }
  SUBCASE("truncated line is skipped in lenient mode") {
    std::string bad = line("b");
    bad.resize(bad.size() / 2);
    std::istringstream in(line("a") + bad + "\n" + line("c"));
    ParseReport rep;
    auto tweets = parse_corpus(in, {}, &rep);
    CHECK(tweets.size() == 2);
    CHECK(rep.skipped == 1);
    REQUIRE(rep.skips.size() == 1);
    CHECK(rep.skips[0].line == 2);
  }
  SUBCASE("strict mode aborts with the line number") {
    std::istringstream in(line("a") + "{\"id\":\"x\"}\n");
    ParseOptions opts;
    opts.strict = true;
    try {
      parse_corpus(in, opts);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
  SUBCASE("field defects") {
    std::istringstream in(line("a", "quote") + line("") + gen::tweet_line("z", "2020-13-01", "t", "original", "u") +
                          "\n[1,2]\n" + line("a") + line("a"));
    ParseReport rep;
    auto tweets = parse_corpus(in, {}, &rep);
    CHECK(tweets.size() == 1); // first "a" original; the second "a" is a duplicate id
    CHECK(rep.skipped == 5);
  }
}

TEST_CASE("filter_analyzable") {
  Tweet t;
  t.kind = TweetKind::original;
  CHECK(filter_analyzable(t));
  t.kind = TweetKind::retweet;
  CHECK_FALSE(filter_analyzable(t));
  t.kind = TweetKind::reply;
  CHECK(filter_analyzable(t));
}

TEST_CASE("compute_corpus_stats examples") {
  SUBCASE("empty") {
    std::vector<Tweet> none;
    auto s = compute_corpus_stats(none);
    CHECK(s.total == 0);
    CHECK_FALSE(s.per_user().has_value());
    CHECK(s.to_json()["per_user"].is_null());
  }
  SUBCASE("two users") {
    std::istringstream in(line("1", "original", "u1", "#hola") + line("2", "reply", "u1") + line("3", "retweet", "u2"));
    auto s = compute_corpus_stats(parse_corpus(in));
    CHECK(s.total == 3);
    CHECK(s.n_original + s.n_reply + s.n_retweet == s.total);
    CHECK(s.n_with_hashtag == 1);
    auto u = s.per_user();
    REQUIRE(u);
    CHECK(u->avg == doctest::Approx(1.5));
    CHECK(u->min == 1);
    CHECK(u->max == 2);
    CHECK(u->median == 1);
  }
}

TEST_CASE("corpus stats equal a naive counter on 10,000 tweets") {
  gen::Rng rng(9);
  auto tweets = gen::random_tweets(rng, 10000, 2500);
  auto s = compute_corpus_stats(tweets);
  auto ref = oracle::naive_stats(tweets);
  auto u = s.per_user();
  REQUIRE(u);
  CHECK(s.total == ref.total);
  CHECK(s.n_original == ref.original);
  CHECK(s.n_reply == ref.reply);
  CHECK(s.n_retweet == ref.retweet);
  CHECK(s.n_with_hashtag == ref.hashtags);
  CHECK(u->users == ref.users);
  CHECK(u->min == ref.min);
  CHECK(u->max == ref.max);
  CHECK(u->median == ref.median);
  CHECK(u->avg == ref.avg);
}

TEST_CASE("property: partitioned stats merge to the single-pass result") {
  gen::Rng rng(17);
  for (int iter = 0; iter < 20; ++iter) {
    auto tweets = gen::random_tweets(rng, 500 + iter * 37, 90);
    const auto whole = compute_corpus_stats(tweets);
    const std::size_t cut = tweets.size() / 3;
    CorpusStats merged = compute_corpus_stats(std::span(tweets).subspan(0, cut));
    merged.merge(compute_corpus_stats(std::span(tweets).subspan(cut)));
    CHECK(merged.to_json() == whole.to_json());

    std::size_t analyzable = 0, retweets = 0;
    for (const auto& t : tweets) {
      analyzable += filter_analyzable(t);
      retweets += t.kind == TweetKind::retweet;
    }
    CHECK(analyzable + retweets == tweets.size());
  }
}
