#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace crisismon {

using Token = std::string;
using TokenList = std::vector<Token>;

/// Normalizes a post into word tokens.
///
/// URLs (scheme:// or www. runs up to the next whitespace) and @mentions are
/// dropped, hashtags are replaced by their split constituent words, and the
/// remainder is NFKC-normalized, lowercased and cut into maximal runs of
/// letters or of digits. Everything else separates tokens. Accents are kept;
/// no stemming.
TokenList preprocess(std::string_view text);

/// Splits a hashtag body (no leading '#') at lower->upper case changes,
/// letter<->digit changes and underscores, then lowercases each piece.
TokenList split_hashtag(std::string_view tag);

/// True when the text carries at least one '#' immediately followed by a word character.
bool contains_hashtag(std::string_view text);

/// Joins tokens with single spaces.
std::string join_tokens(const TokenList& tokens);

} // namespace crisismon
