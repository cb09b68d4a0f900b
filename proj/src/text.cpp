#include "crisismon/text.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <stdexcept>

namespace crisismon {

namespace {

enum class CharClass { letter, digit, mark, other };

CharClass classify(UChar32 c) {
  if (u_isalpha(c))
    return CharClass::letter;
  if (u_isdigit(c))
    return CharClass::digit;
  switch (u_charType(c)) {
  case U_NON_SPACING_MARK:
  case U_ENCLOSING_MARK:
  case U_COMBINING_SPACING_MARK:
    return CharClass::mark;
  default:
    return CharClass::other;
  }
}

bool is_word_char(UChar32 c) { return c == '_' || classify(c) != CharClass::other; }

const icu::Normalizer2& nfkc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFKCInstance(status);
  if (U_FAILURE(status) || n == nullptr)
    throw std::runtime_error("ICU NFKC normalizer unavailable");
  return *n;
}

icu::UnicodeString normalize(const icu::UnicodeString& s) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = nfkc().normalize(s, status);
  if (U_FAILURE(status))
    throw std::runtime_error("ICU normalization failed");
  return out;
}

std::vector<UChar32> code_points(const icu::UnicodeString& s) {
  std::vector<UChar32> cps;
  cps.reserve(static_cast<std::size_t>(s.length()));
  for (int32_t i = 0; i < s.length();) {
    UChar32 c = s.char32At(i);
    cps.push_back(c);
    i += U16_LENGTH(c);
  }
  return cps;
}

Token finish_token(const icu::UnicodeString& piece) {
  icu::UnicodeString lower(piece);
  lower.toLower(icu::Locale::getRoot());
  std::string out;
  normalize(lower).toUTF8String(out);
  return out;
}

bool ascii_alpha(UChar32 c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool ascii_alnum(UChar32 c) { return ascii_alpha(c) || (c >= '0' && c <= '9'); }

// Length of a URL starting at i (up to the next whitespace), or 0.
std::size_t url_length(const std::vector<UChar32>& cps, std::size_t i) {
  if (!ascii_alpha(cps[i]) || (i > 0 && ascii_alnum(cps[i - 1])))
    return 0;
  auto lower = [&](std::size_t k) { return k < cps.size() ? u_tolower(cps[k]) : UChar32{-1}; };
  bool www = lower(i) == 'w' && lower(i + 1) == 'w' && lower(i + 2) == 'w' && lower(i + 3) == '.';
  if (!www) {
    std::size_t k = i;
    while (k < cps.size() && (ascii_alnum(cps[k]) || cps[k] == '+' || cps[k] == '.' || cps[k] == '-'))
      ++k;
    if (!(lower(k) == ':' && lower(k + 1) == '/' && lower(k + 2) == '/'))
      return 0;
  }
  std::size_t end = i;
  while (end < cps.size() && !u_isUWhiteSpace(cps[end]))
    ++end;
  return end - i;
}

// Cuts a code point sequence into letter runs and digit runs; combining marks
// extend a letter run.
template <typename Emit>
void tokenize_runs(const std::vector<UChar32>& cps, std::size_t begin, std::size_t end, Emit&& emit) {
  icu::UnicodeString current;
  CharClass current_class = CharClass::other;
  auto flush = [&] {
    if (!current.isEmpty())
      emit(current);
    current.remove();
    current_class = CharClass::other;
  };
  for (std::size_t i = begin; i < end; ++i) {
    CharClass cls = classify(cps[i]);
    if (cls == CharClass::mark) {
      if (current_class == CharClass::letter)
        current.append(cps[i]);
      else
        flush();
      continue;
    }
    if (cls == CharClass::other) {
      flush();
      continue;
    }
    if (cls != current_class)
      flush();
    current_class = cls;
    current.append(cps[i]);
  }
  flush();
}

TokenList split_code_points(const std::vector<UChar32>& cps) {
  TokenList out;
  icu::UnicodeString current;
  CharClass current_class = CharClass::other;
  UChar32 prev = 0;
  auto flush = [&] {
    if (!current.isEmpty())
      out.push_back(finish_token(current));
    current.remove();
    current_class = CharClass::other;
  };
  for (UChar32 c : cps) {
    CharClass cls = classify(c);
    if (cls == CharClass::other) {
      flush();
      prev = 0;
      continue;
    }
    if (cls == CharClass::mark) {
      if (current_class == CharClass::letter)
        current.append(c);
      else
        flush();
      continue;
    }
    bool boundary = cls != current_class ||
                    (cls == CharClass::letter && u_islower(prev) && (u_isupper(c) || u_istitle(c)));
    if (boundary)
      flush();
    current_class = cls;
    current.append(c);
    prev = c;
  }
  flush();
  return out;
}

} // namespace

TokenList split_hashtag(std::string_view tag) {
  auto cps = code_points(normalize(icu::UnicodeString::fromUTF8(icu::StringPiece(tag.data(), tag.size()))));
  return split_code_points(cps);
}

TokenList preprocess(std::string_view text) {
  TokenList out;
  if (text.empty())
    return out;
  auto cps = code_points(normalize(icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), text.size()))));
  auto emit = [&](const icu::UnicodeString& piece) { out.push_back(finish_token(piece)); };

  std::size_t segment = 0; // start of plain text not yet tokenized
  std::size_t i = 0;
  while (i < cps.size()) {
    UChar32 c = cps[i];
    if ((c == '@' || c == '#') && i + 1 < cps.size() && is_word_char(cps[i + 1])) {
      tokenize_runs(cps, segment, i, emit);
      std::size_t end = i + 1;
      while (end < cps.size() && is_word_char(cps[end]))
        ++end;
      if (c == '#') {
        std::vector<UChar32> tag(cps.begin() + static_cast<std::ptrdiff_t>(i + 1),
                                 cps.begin() + static_cast<std::ptrdiff_t>(end));
        for (auto& piece : split_code_points(tag))
          out.push_back(std::move(piece));
      }
      i = segment = end;
      continue;
    }
    if (std::size_t n = url_length(cps, i); n > 0) {
      tokenize_runs(cps, segment, i, emit);
      i = segment = i + n;
      continue;
    }
    ++i;
  }
  tokenize_runs(cps, segment, cps.size(), emit);
  return out;
}

bool contains_hashtag(std::string_view text) {
  auto cps = code_points(normalize(icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), text.size()))));
  for (std::size_t i = 0; i + 1 < cps.size(); ++i)
    if (cps[i] == '#' && is_word_char(cps[i + 1]))
      return true;
  return false;
}

std::string join_tokens(const TokenList& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty())
      out += ' ';
    out += t;
  }
  return out;
}

} // namespace crisismon
