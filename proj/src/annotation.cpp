#include "dialogic/annotation.hpp"

#include "dialogic/error.hpp"
#include "dialogic/ontology.hpp"
#include "dialogic/text.hpp"

namespace dialogic {

std::string serialize_goal(const SlotMap& goal) {
  std::string out;
  for (const auto& [domain, slots] : goal) {
    if (!out.empty()) out += ' ';
    out += '[' + domain + ']';
    bool first = true;
    for (const auto& [slot, value] : slots) {
      out += first ? " " : " , ";
      out += slot + " is " + value;
      first = false;
    }
  }
  return out;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t'; }

void parse_section_body(SlotMap& out, const std::string& domain, std::string_view text, std::size_t body_begin,
                        std::size_t body_end) {
  std::size_t i = body_begin;
  bool any = false;
  while (i <= body_end) {
    std::size_t comma = text.find(',', i);
    if (comma == std::string_view::npos || comma > body_end) comma = body_end;
    std::string_view item = text.substr(i, comma - i);
    std::string trimmed = text::trim(item);
    if (trimmed.empty()) {
      if (comma == body_end && !any) break;
      throw ParseError(i, "empty slot entry in [" + domain + "]");
    }
    auto is_pos = trimmed.find(" is ");
    if (is_pos == std::string::npos) {
      throw ParseError(i, "malformed triplet '" + trimmed + "', expected '<slot> is <value>'");
    }
    std::string slot = canonical_slot(trimmed.substr(0, is_pos));
    std::string value = text::normalize_value(trimmed.substr(is_pos + 4));
    if (slot.empty() || value.empty()) throw ParseError(i, "malformed triplet '" + trimmed + "'");
    out.set(domain, slot, value);
    any = true;
    if (comma == body_end) break;
    i = comma + 1;
  }
  if (!any) out.add_domain(domain);
}

}  // namespace

SlotMap parse_goal(std::string_view text) {
  SlotMap out;
  std::size_t i = 0;
  while (i < text.size() && is_space(text[i])) ++i;
  while (i < text.size()) {
    if (text[i] != '[') throw ParseError(i, "expected '[domain]'");
    std::size_t close = text.find(']', i);
    if (close == std::string_view::npos) throw ParseError(i, "unterminated domain marker");
    std::string domain = text::normalize_value(text.substr(i + 1, close - i - 1));
    if (domain.empty() || domain.find('[') != std::string::npos) throw ParseError(i, "invalid domain marker");
    // The section body runs until the next '[' that starts a token.
    std::size_t body_begin = close + 1;
    std::size_t next = body_begin;
    while (true) {
      next = text.find('[', next);
      if (next == std::string_view::npos) {
        next = text.size();
        break;
      }
      if (next > 0 && is_space(text[next - 1])) break;
      throw ParseError(next, "unexpected '['");
    }
    std::size_t body_end = next;
    if (text.substr(body_begin, body_end - body_begin).find(']') != std::string_view::npos) {
      throw ParseError(body_begin, "unexpected ']'");
    }
    parse_section_body(out, domain, text, body_begin, body_end);
    i = next;
  }
  return out;
}

std::string serialize_act(const DialogAct& act) {
  std::string out;
  auto emit = [&](const std::string& tok) {
    if (!out.empty()) out += ' ';
    out += tok;
  };
  const ActTriple* prev = nullptr;
  for (const auto& t : act.triples) {
    bool same_domain = prev && prev->domain == t.domain;
    if (!same_domain) emit('[' + t.domain + ']');
    bool continue_group = same_domain && prev->act == t.act && prev->slot != kNone && t.slot != kNone;
    if (!continue_group) emit('[' + t.act + ']');
    if (t.slot != kNone) emit(t.slot);
    prev = &t;
  }
  return out;
}

DialogAct parse_act(std::string_view text) {
  DialogAct act;
  std::string domain;
  std::string current_act;
  bool expect_act = false;
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_space(text[i])) {
      ++i;
      continue;
    }
    if (text[i] == '[') {
      std::size_t close = text.find(']', i);
      if (close == std::string_view::npos) throw ParseError(i, "unterminated marker");
      std::string name = text::normalize_value(text.substr(i + 1, close - i - 1));
      if (name.empty()) throw ParseError(i, "empty marker");
      if (expect_act) {
        if (!is_act_type(name)) throw ParseError(i, "unknown act type '" + name + "'");
        current_act = name;
        expect_act = false;
        act.triples.push_back({domain, current_act, std::string(kNone)});
      } else if (is_act_type(name)) {
        if (domain.empty()) throw ParseError(i, "act '" + name + "' before any domain marker");
        current_act = name;
        act.triples.push_back({domain, current_act, std::string(kNone)});
      } else {
        domain = name;
        expect_act = true;
      }
      i = close + 1;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j]) && text[j] != '[') ++j;
    std::string slot = canonical_slot(text.substr(i, j - i));
    if (current_act.empty() || expect_act) throw ParseError(i, "slot '" + slot + "' before any act marker");
    // The marker pushed a slotless placeholder; the first slot fills it.
    ActTriple& last = act.triples.back();
    if (last.domain == domain && last.act == current_act && last.slot == kNone) {
      last.slot = slot;
    } else {
      act.triples.push_back({domain, current_act, slot});
    }
    i = j;
  }
  if (expect_act) throw ParseError(text.size(), "domain marker [" + domain + "] without an act");
  return act;
}

namespace {

struct Split {
  std::string annotation;
  std::string rest;
};

Split split_line(std::string_view line, std::string_view prefix) {
  if (!text::starts_with(line, prefix)) {
    throw ParseError(0, "line does not start with '" + std::string(prefix) + "'");
  }
  std::size_t open = prefix.size();
  std::size_t close = line.find(')', open);
  if (close == std::string_view::npos) throw ParseError(open - 1, "unbalanced parentheses");
  std::size_t inner_open = line.find('(', open);
  if (inner_open != std::string_view::npos && inner_open < close) {
    throw ParseError(inner_open, "unbalanced parentheses");
  }
  if (close + 1 >= line.size() || line[close + 1] != ':') throw ParseError(close + 1, "expected ':' after annotation");
  return {std::string(line.substr(open, close - open)), text::trim(line.substr(close + 2))};
}

}  // namespace

UserLine parse_user_line(std::string_view line) {
  Split s = split_line(line, kUserPrefix);
  try {
    return {TurnBelief(parse_goal(s.annotation)), s.rest};
  } catch (const ParseError& e) {
    throw ParseError(kUserPrefix.size() + e.column(), e.message());
  }
}

SystemLine parse_system_line(std::string_view line) {
  Split s = split_line(line, kSystemPrefix);
  try {
    return {parse_act(s.annotation), s.rest};
  } catch (const ParseError& e) {
    throw ParseError(kSystemPrefix.size() + e.column(), e.message());
  }
}

std::string format_user_line(const SlotMap& belief, std::string_view utterance) {
  return std::string(kUserPrefix) + serialize_goal(belief) + "): " + std::string(utterance);
}

std::string format_system_line(const DialogAct& act, std::string_view response) {
  return std::string(kSystemPrefix) + serialize_act(act) + "): " + std::string(response);
}

}  // namespace dialogic
