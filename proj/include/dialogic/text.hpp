#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dialogic::text {

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
std::vector<std::string> split_ws(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Corpus storage form: lowercase, single spaces, trailing sentence
/// punctuation detached into its own token ("nights." -> "nights .").
std::string normalize_text(std::string_view s);

/// Lowercase, trimmed, whitespace-collapsed annotation value.
std::string normalize_value(std::string_view s);

/// "8:45" -> "08:45". Anything that is not h:mm / hh:mm is returned as is.
std::string canonical_time(std::string_view s);
bool is_time(std::string_view s);

/// "zero" .. "thirty" -> 0 .. 30.
std::optional<int> number_word(std::string_view s);

/// Form used when comparing values against utterances and entity records:
/// normalize_text, drop punctuation-only tokens, number words to digits,
/// canonical times.
std::string match_form(std::string_view s);

/// True when `needle` occurs in `hay` delimited on both sides by the string
/// edge or a non-alphanumeric character.
bool contains_phrase(std::string_view hay, std::string_view needle);

bool starts_with(std::string_view s, std::string_view prefix);
bool ends_with(std::string_view s, std::string_view suffix);

}  // namespace dialogic::text
