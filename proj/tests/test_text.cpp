#include "crisismon/text.hpp"

#include <doctest.h>

#include <random>

using crisismon::preprocess;
using crisismon::split_hashtag;
using crisismon::TokenList;

TEST_CASE("preprocess drops urls and mentions and splits hashtags") {
  CHECK(preprocess("Vamos!! #QuedateEnCasa http://t.co/x @juan") == TokenList{"vamos", "quedate", "en", "casa"});
  CHECK(preprocess("").empty());
  CHECK(preprocess("covid-19 es grave…") == TokenList{"covid", "19", "es", "grave"});
}

TEST_CASE("preprocess keeps accents and folds case") {
  CHECK(preprocess("ANSIEDAD y Pánico") == TokenList{"ansiedad", "y", "pánico"});
  CHECK(preprocess("Él está TRISTE") == TokenList{"él", "está", "triste"});
  // Decomposed input is recomposed by compatibility normalization.
  CHECK(preprocess("pa\xCC\x81nico") == preprocess("pánico"));
  // Fullwidth forms fold to ASCII.
  CHECK(preprocess("ＣＯＶＩＤ１９") == TokenList{"covid", "19"});
}

TEST_CASE("preprocess url forms") {
  CHECK(preprocess("ver https://example.com/a?b=c#frag ya") == TokenList{"ver", "ya"});
  CHECK(preprocess("ver www.gob.ar/salud ya") == TokenList{"ver", "ya"});
  CHECK(preprocess("WWW.GOB.AR") .empty());
  // "www" without the dot is a word.
  CHECK(preprocess("www") == TokenList{"www"});
  CHECK(preprocess("nota:hola") == TokenList{"nota", "hola"});
}

TEST_CASE("preprocess mentions and bare symbols") {
  CHECK(preprocess("@Ministerio_Salud informa") == TokenList{"informa"});
  CHECK(preprocess("# @ solos") == TokenList{"solos"});
  CHECK(preprocess("a#b") == TokenList{"a", "b"});
}

TEST_CASE("split_hashtag boundaries") {
  CHECK(split_hashtag("QuedateEnCasa") == TokenList{"quedate", "en", "casa"});
  CHECK(split_hashtag("covid19") == TokenList{"covid", "19"});
  CHECK(split_hashtag("argentina") == TokenList{"argentina"});
  CHECK(split_hashtag("quedate_en_casa") == TokenList{"quedate", "en", "casa"});
  CHECK(split_hashtag("COVID19Argentina") == TokenList{"covid", "19", "argentina"});
  CHECK(split_hashtag("CuarentenaYa2020") == TokenList{"cuarentena", "ya", "2020"});
  CHECK(split_hashtag("quedateencasa") == TokenList{"quedateencasa"});
}

TEST_CASE("contains_hashtag") {
  CHECK(crisismon::contains_hashtag("hola #mundo"));
  CHECK_FALSE(crisismon::contains_hashtag("hola # mundo"));
  CHECK_FALSE(crisismon::contains_hashtag("sin etiquetas"));
}

namespace {

std::string random_text(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces = {
      "a", "B", "ñ", "É", "ü", "ß", "İ", "Σ", "ς", "0", "7", "٣", " ", "\t", "\n", "#", "@", "_", "-", ".", ",", "!",
      "…", "http://", "https://x.y/", "www.", "www", "t.co/", ":", "/", "\xCC\x81", "😷", "ﬁ", "²", "Ⅻ", "QuedateEn",
      "Casa", "covid19", "¿", "?", "'", "\"", "(", ")"};
  std::uniform_int_distribution<std::size_t> len(0, 30), pick(0, pieces.size() - 1);
  std::string s;
  for (std::size_t n = len(rng); n > 0; --n)
    s += pieces[pick(rng)];
  return s;
}

} // namespace

TEST_CASE("property: tokens never carry separators and preprocessing is idempotent") {
  std::mt19937_64 rng(20200301);
  for (int iter = 0; iter < 3000; ++iter) {
    const std::string text = random_text(rng);
    const TokenList tokens = preprocess(text);
    for (const auto& t : tokens) {
      CHECK_FALSE(t.empty());
      CHECK(t.find_first_of("#@ \t\n\r") == std::string::npos);
      CHECK(t.find("://") == std::string::npos);
    }
    const TokenList again = preprocess(crisismon::join_tokens(tokens));
    CHECK_MESSAGE(again == tokens, "input: " << text);
  }
}
