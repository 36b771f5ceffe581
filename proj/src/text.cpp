#include "dialogic/text.hpp"

#include <array>
#include <cctype>

namespace dialogic::text {

namespace {

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

bool is_detachable(char c) { return c == '.' || c == ',' || c == '?' || c == '!' || c == ';'; }

bool is_punct_token(std::string_view tok) {
  for (char c : tok) {
    if (is_alnum(c) || c == '[' || c == ']' || c == '_') return false;
  }
  return !tok.empty();
}

constexpr std::array<std::string_view, 31> kNumberWords = {
    "zero",     "one",       "two",      "three",    "four",     "five",     "six",
    "seven",    "eight",     "nine",     "ten",      "eleven",   "twelve",   "thirteen",
    "fourteen", "fifteen",   "sixteen",  "seventeen", "eighteen", "nineteen", "twenty",
    "twenty-one", "twenty-two", "twenty-three", "twenty-four", "twenty-five", "twenty-six",
    "twenty-seven", "twenty-eight", "twenty-nine", "thirty"};

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string normalize_text(std::string_view s) {
  std::vector<std::string> out;
  for (auto& tok : split_ws(to_lower(s))) {
    std::vector<std::string> tail;
    while (tok.size() > 1 && is_detachable(tok.back())) {
      tail.emplace_back(1, tok.back());
      tok.pop_back();
    }
    out.push_back(tok);
    for (auto it = tail.rbegin(); it != tail.rend(); ++it) out.push_back(*it);
  }
  return join(out, " ");
}

std::string normalize_value(std::string_view s) { return join(split_ws(to_lower(s)), " "); }

bool is_time(std::string_view s) {
  auto colon = s.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon > 2) return false;
  if (s.size() - colon - 1 != 2) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i == colon) continue;
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::string canonical_time(std::string_view s) {
  if (!is_time(s)) return std::string(s);
  if (s.find(':') == 1) return "0" + std::string(s);
  return std::string(s);
}

std::optional<int> number_word(std::string_view s) {
  for (std::size_t i = 0; i < kNumberWords.size(); ++i) {
    if (kNumberWords[i] == s) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::string match_form(std::string_view s) {
  std::vector<std::string> out;
  for (auto& tok : split_ws(normalize_text(s))) {
    if (is_punct_token(tok)) continue;
    if (auto n = number_word(tok)) {
      out.push_back(std::to_string(*n));
    } else {
      out.push_back(canonical_time(tok));
    }
  }
  return join(out, " ");
}

bool contains_phrase(std::string_view hay, std::string_view needle) {
  if (needle.empty()) return false;
  std::size_t pos = hay.find(needle);
  while (pos != std::string_view::npos) {
    bool left = pos == 0 || !is_alnum(hay[pos - 1]);
    std::size_t end = pos + needle.size();
    bool right = end == hay.size() || !is_alnum(hay[end]);
    if (left && right) return true;
    pos = hay.find(needle, pos + 1);
  }
  return false;
}

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace dialogic::text
