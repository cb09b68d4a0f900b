#include "crisismon/lexicon.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>

using namespace crisismon;

namespace {
LexiconErrc code_of(auto&& fn) {
  try {
    fn();
  } catch (const LexiconError& e) {
    return e.code();
  }
  FAIL("expected LexiconError");
  return LexiconErrc::malformed_json;
}
} // namespace

TEST_CASE("load_lexicon examples") {
  auto a = parse_lexicon(R"({"name":"x","terms":["Miedo","miedo"]})");
  CHECK(a.name == "x");
  CHECK(a.terms.size() == 1);
  CHECK(a.contains({"miedo"}));

  auto b = parse_lexicon(R"({"name":"x","terms":["panic attack"]})");
  REQUIRE(b.terms.size() == 1);
  CHECK(b.terms.begin()->size() == 2);

  CHECK(code_of([] { parse_lexicon(R"({"name":"x","terms":[]})"); }) == LexiconErrc::empty_terms);
  CHECK(code_of([] { parse_lexicon(R"({"name":"x","terms":["!!", "#"]})"); }) == LexiconErrc::empty_terms);
  CHECK(code_of([] { parse_lexicon(R"({"name":"x","terms":[)"); }) == LexiconErrc::malformed_json);
  CHECK(code_of([] { parse_lexicon(R"({"terms":["a"]})"); }) == LexiconErrc::malformed_json);
  CHECK(code_of([] { load_lexicon("/nonexistent/lexicon.json"); }) == LexiconErrc::missing_file);
}

TEST_CASE("category sets") {
  auto two = parse_category_set(R"({"name":"empath","categories":{"fear":["miedo"],"joy":["alegría"]}})");
  CHECK(two.categories.size() == 2);

  CHECK(code_of([] { parse_category_set(R"({"name":"e","categories":{"fear":["a"],"fear":["b"]}})"); }) ==
        LexiconErrc::duplicate_category);
  CHECK(code_of([] { parse_category_set(R"({"name":"e","categories":{"fear":[]}})"); }) == LexiconErrc::empty_terms);

  nlohmann::json big{{"name", "empath"}, {"categories", nlohmann::json::object()}};
  for (int c = 0; c < 200; ++c)
    big["categories"]["cat" + std::to_string(c)] = {"palabra" + std::to_string(c), "común"};
  CHECK(parse_category_set(big.dump()).categories.size() == 200);

  CHECK(select_categories(two, {"joy"}).categories.size() == 1);
  CHECK(code_of([&] { select_categories(two, {"anger"}); }) == LexiconErrc::unknown_category);
}

TEST_CASE("property: serialization round-trips and term order does not matter") {
  std::mt19937_64 rng(5);
  const std::vector<std::string> words = {"Miedo", "pánico", "ataque de pánico", "wound-up", "ANGUSTIA", "sueño",
                                          "covid-19", "triste", "llorar", "solo", "soledad", "dolor"};
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<std::string> terms = words;
    std::shuffle(terms.begin(), terms.end(), rng);
    terms.resize(1 + rng() % terms.size());
    nlohmann::json j{{"name", "lex"}, {"terms", terms}};
    const Lexicon lex = parse_lexicon(j.dump());
    CHECK(parse_lexicon(to_json(lex).dump()) == lex);

    std::shuffle(terms.begin(), terms.end(), rng);
    j["terms"] = terms;
    CHECK(parse_lexicon(j.dump()) == lex);
  }
  auto set = parse_category_set(R"({"name":"s","categories":{"a":["x y","z"],"b":["Ñandú"]}})");
  CHECK(parse_category_set(to_json(set).dump()) == set);
}

TEST_CASE("manifest paths resolve against the manifest directory") {
  auto dir = std::filesystem::temp_directory_path() / "crisismon_manifest_test";
  std::filesystem::create_directories(dir / "lex");
  {
    std::ofstream(dir / "lex" / "anxiety.json") << R"({"name":"anxiety","terms":["miedo"]})";
    std::ofstream(dir / "manifest.json") << R"({"constructs":{"anxiety":"lex/anxiety.json"}})";
  }
  auto m = load_manifest(dir / "manifest.json");
  REQUIRE(m.size() == 1);
  CHECK(m[0].first == "anxiety");
  CHECK(load_lexicon(m[0].second).terms.size() == 1);
  std::filesystem::remove_all(dir);
}
