#include <algorithm>
#include <regex>

#include "dialogic/revision.hpp"
#include "dialogic/text.hpp"

namespace dialogic {

namespace {

const std::vector<std::pair<std::string, std::string>>& domain_keywords() {
  static const std::vector<std::pair<std::string, std::string>> kw = {
      {"hotel", "hotel"},          {"hotels", "hotel"},         {"guesthouse", "hotel"},   {"guest house", "hotel"},
      {"place to stay", "hotel"},  {"room", "hotel"},           {"lodging", "hotel"},      {"restaurant", "restaurant"},
      {"restaurants", "restaurant"}, {"food", "restaurant"},    {"eat", "restaurant"},     {"dine", "restaurant"},
      {"dinner", "restaurant"},    {"lunch", "restaurant"},     {"table", "restaurant"},   {"train", "train"},
      {"trains", "train"},         {"taxi", "taxi"},            {"cab", "taxi"},           {"attraction", "attraction"},
      {"attractions", "attraction"}, {"museum", "attraction"},  {"college", "attraction"}, {"theatre", "attraction"},
      {"cinema", "attraction"},    {"nightclub", "attraction"}, {"church", "attraction"},  {"pool", "attraction"},
      {"entertainment", "attraction"}, {"architecture", "attraction"}, {"visit", "attraction"},
      {"hospital", "hospital"},    {"police", "police"}};
  return kw;
}

/// Surface forms too common in ordinary speech to be read as a value.
const std::set<std::string>& stoplist() {
  static const std::set<std::string> s = {"ask", "all", "any", "none", "yes", "no", "free", "one", "the", "a",
                                          "dontcare", "not mentioned", "park"};
  return s;
}

bool is_number(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string last_domain(const SlotMap& m) {
  std::string d;
  for (const auto& dom : m.domains()) {
    if (dom != kGeneral) d = dom;
  }
  return d;
}

bool in_window(const std::vector<std::string>& toks, std::size_t i, std::size_t before,
               const std::set<std::string>& words) {
  for (std::size_t k = 1; k <= before && k <= i; ++k) {
    if (words.count(toks[i - k])) return true;
  }
  return false;
}

}  // namespace

LexicalAuxPredictor::LexicalAuxPredictor(const Ontology& ontology, const SeedDataset& seeds, const EntityDb* db)
    : ontology_(ontology) {
  for (const auto& [domain, schema] : ontology.domains()) {
    for (const auto& [slot, values] : schema.informable) {
      for (const auto& v : values) add_value(domain, slot, v, v);
    }
  }
  auto observe = [&](const SlotMap& m) {
    for (const auto& t : m.triples()) {
      if (t.slot != kNone && ontology.check_triple(t).empty()) add_value(t.domain, t.slot, t.value, t.value);
    }
  };
  for (const auto& d : seeds) {
    observe(d.initial_goal);
    for (const auto& t : d.turns) observe(t.belief);
  }
  if (db) {
    for (const auto& [domain, schema] : ontology.domains()) {
      const auto* rows = db->table(domain);
      if (!rows || !schema.is_informable("name")) continue;
      for (const auto& e : *rows) {
        if (auto it = e.find("name"); it != e.end()) add_value(domain, "name", text::normalize_value(it->second), it->second);
      }
    }
  }
  // common spellings of canonical values
  for (const auto& [domain, schema] : ontology.domains()) {
    for (const auto& [slot, values] : schema.informable) {
      for (const auto& v : values) {
        if (v == "guesthouse") add_value(domain, slot, v, "guest house");
        if (v == "centre") {
          add_value(domain, slot, v, "center");
          add_value(domain, slot, v, "city centre");
          add_value(domain, slot, v, "central");
        }
        if (v == "moderate") add_value(domain, slot, v, "moderately priced");
      }
    }
  }
}

void LexicalAuxPredictor::add_value(const std::string& domain, const std::string& slot, const std::string& value,
                                    const std::string& surface) {
  if (value == kDontcare || value == "yes" || value == "no" || text::is_time(value)) return;
  std::string key = text::match_form(surface);
  if (key.empty() || is_number(key) || stoplist().count(key)) return;
  if (slot == "parking" || slot == "internet" || slot == "stars" || slot == "stay" || slot == "people") return;
  auto& e = lexicon_[key];
  e.value = value;
  std::pair<std::string, std::string> ds{domain, slot};
  if (std::find(e.slots.begin(), e.slots.end(), ds) == e.slots.end()) e.slots.push_back(ds);
  longest_ = std::max(longest_, text::split_ws(key).size());
}

std::string LexicalAuxPredictor::focus_domain(const std::vector<Turn>& context,
                                              const std::vector<std::string>& tokens) const {
  std::string joined = text::join(tokens, " ");
  std::size_t best = std::string::npos;
  std::string focus;
  for (const auto& [kw, domain] : domain_keywords()) {
    if (!ontology_.has_domain(domain)) continue;
    std::size_t pos = joined.find(kw);
    while (pos != std::string::npos) {
      bool left = pos == 0 || joined[pos - 1] == ' ';
      bool right = pos + kw.size() == joined.size() || joined[pos + kw.size()] == ' ';
      if (left && right) break;
      pos = joined.find(kw, pos + 1);
    }
    if (pos != std::string::npos && (best == std::string::npos || pos < best)) {
      best = pos;
      focus = domain;
    }
  }
  if (!focus.empty()) return focus;
  for (auto it = context.rbegin(); it != context.rend(); ++it) {
    std::string d;
    for (const auto& t : it->act.triples) {
      if (t.domain != kGeneral) d = t.domain;
    }
    if (d.empty()) d = last_domain(it->belief);
    if (!d.empty()) return d;
  }
  return {};
}

TurnBelief LexicalAuxPredictor::predict_belief(const std::vector<Turn>& context, std::string_view utterance) {
  const std::vector<std::string> toks = text::split_ws(text::match_form(utterance));
  const std::string focus = focus_domain(context, toks);
  const DomainSchema* fschema = focus.empty() ? nullptr : ontology_.find(focus);
  TurnBelief out;
  auto emit = [&](const std::string& d, const std::string& s, const std::string& v) {
    SlotTriple t{d, s, v};
    if (ontology_.check_triple(t).empty() && !out.get(d, s)) out.set(d, s, v);
  };
  auto focus_has = [&](std::string_view slot) { return fschema && fschema->is_informable(slot); };

  static const std::set<std::string> kFrom = {"from", "departing", "leaving"};
  static const std::set<std::string> kTo = {"to", "into", "towards", "reach", "at", "destination"};
  static const std::set<std::string> kArrive = {"arrive", "arrives", "arriving", "arrival", "by", "before"};
  static const std::set<std::string> kLeave = {"leave", "leaves", "leaving", "depart", "departs", "departing",
                                               "after", "departure"};
  static const std::set<std::string> kDays = {"monday", "tuesday", "wednesday", "thursday",
                                              "friday", "saturday", "sunday"};
  static const std::regex kStarTok(R"((\d+)-stars?)");

  for (std::size_t i = 0; i < toks.size();) {
    const std::string& tok = toks[i];
    // numbers with a unit word
    if (is_number(tok) && i + 1 < toks.size()) {
      const std::string& unit = toks[i + 1];
      if ((unit == "people" || unit == "person" || unit == "persons" || unit == "guests" || unit == "adults") &&
          focus_has("people")) {
        emit(focus, "people", tok);
      } else if ((unit == "nights" || unit == "night" || unit == "days") && focus_has("stay")) {
        emit(focus, "stay", tok);
      } else if ((unit == "star" || unit == "stars") && ontology_.find("hotel")) {
        emit("hotel", "stars", tok);
      }
      ++i;
      continue;
    }
    std::smatch m;
    if (std::regex_match(tok, m, kStarTok) && ontology_.find("hotel")) {
      emit("hotel", "stars", m[1].str());
      ++i;
      continue;
    }
    if (text::is_time(tok)) {
      if (focus_has("arrive") && in_window(toks, i, 3, kArrive)) {
        emit(focus, "arrive", tok);
      } else if (focus_has("leave") && in_window(toks, i, 3, kLeave)) {
        emit(focus, "leave", tok);
      } else if (focus_has("time")) {
        emit(focus, "time", tok);
      } else if (focus_has("leave")) {
        emit(focus, "leave", tok);
      }
      ++i;
      continue;
    }
    if (kDays.count(tok) && focus_has("day")) {
      emit(focus, "day", tok);
      ++i;
      continue;
    }
    // longest lexicon match starting here
    const Entry* hit = nullptr;
    std::size_t len = 0;
    std::string surface;
    for (std::size_t n = std::min(longest_, toks.size() - i); n >= 1; --n) {
      std::string key = toks[i];
      for (std::size_t k = 1; k < n; ++k) key += " " + toks[i + k];
      if (auto it = lexicon_.find(key); it != lexicon_.end()) {
        hit = &it->second;
        len = n;
        surface = key;
        break;
      }
    }
    if (!hit) {
      ++i;
      continue;
    }
    std::vector<std::pair<std::string, std::string>> cands;
    for (const auto& ds : hit->slots) {
      if (ds.first == focus) cands.push_back(ds);
    }
    if (cands.empty() && focus.empty()) {
      std::set<std::string> doms;
      for (const auto& ds : hit->slots) doms.insert(ds.first);
      if (doms.size() == 1) cands = hit->slots;
    }
    // the bare domain word ("hotel") is weak evidence once the slot is known
    if (!cands.empty() && surface == cands.front().first) {
      const auto& d = cands.front().first;
      bool known = false;
      for (const auto& turn : context) {
        for (const auto& ds : cands) known = known || turn.belief.get(d, ds.second) != nullptr;
      }
      if (known) cands.clear();
    }
    if (!cands.empty()) {
      auto has = [&](const char* s) {
        return std::find_if(cands.begin(), cands.end(), [&](const auto& ds) { return ds.second == s; }) != cands.end();
      };
      const std::string& d = cands.front().first;
      if (has("departure") && has("destination")) {
        emit(d, in_window(toks, i, 2, kFrom) ? "departure" : "destination", hit->value);
      } else if (has("destination") && in_window(toks, i, 2, kTo)) {
        emit(d, "destination", hit->value);
      } else if (has("departure") && in_window(toks, i, 2, kFrom)) {
        emit(d, "departure", hit->value);
      } else {
        for (const auto& ds : cands) {
          if (ds.second != "departure" && ds.second != "destination") {
            emit(ds.first, ds.second, hit->value);
            break;
          }
        }
      }
    }
    i += len;
  }

  // parking / internet
  if (fschema && focus == "hotel") {
    for (const char* slot : {"parking", "internet"}) {
      if (!focus_has(slot)) continue;
      if (value_expressed({focus, slot, "no"}, utterance)) {
        emit(focus, slot, "no");
      } else if (value_expressed({focus, slot, "yes"}, utterance)) {
        emit(focus, slot, "yes");
      }
    }
  }

  // a no-preference answer to the slot the system just asked about
  if (!context.empty() && value_expressed({focus.empty() ? "x" : focus, "x", std::string(kDontcare)}, utterance)) {
    for (const auto& t : context.back().act.triples) {
      if (t.act == "request" && ontology_.find(t.domain) && ontology_.at(t.domain).is_informable(t.slot)) {
        emit(t.domain, t.slot, std::string(kDontcare));
      }
    }
  }
  return out;
}

std::optional<DialogAct> LexicalAuxPredictor::predict_act(const std::vector<Turn>&, std::string_view,
                                                          const TurnBelief& belief, const DbResult& db) {
  DialogAct a;
  std::string d = last_domain(belief);
  if (d.empty() || !ontology_.find(d)) {
    a.triples.push_back({std::string(kGeneral), "reqmore", std::string(kNone)});
    return a;
  }
  const DomainSchema& s = ontology_.at(d);
  if (db.bucket == DbBucket::Zero && s.permits("nooffer")) {
    a.triples.push_back({d, "nooffer", std::string(kNone)});
  } else if (s.queryable && db.bucket != DbBucket::NoResult && ontology_.act_slot_valid(d, "choice")) {
    a.triples.push_back({d, "inform", "choice"});
  }
  a.triples.push_back({std::string(kGeneral), "reqmore", std::string(kNone)});
  return a;
}

}  // namespace dialogic
