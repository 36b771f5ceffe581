#include "dialogic/revision.hpp"

#include <algorithm>

#include "dialogic/text.hpp"

namespace dialogic {

TurnBelief merge_beliefs(const TurnBelief& gpt, const TurnBelief& aux) {
  TurnBelief out = gpt;
  for (const auto& t : aux.triples()) {
    if (t.slot == kNone) {
      out.add_domain(t.domain);
    } else if (!out.get(t.domain, t.slot)) {
      out.set(t.domain, t.slot, t.value);
    }
  }
  return out;
}

bool is_exempt(const SlotTriple& t) { return t.domain == kGeneral || t.slot == kNone; }

const std::vector<std::string>& dontcare_cues() {
  static const std::vector<std::string> cues = {
      "dontcare",  "do not care", "don't care",    "do n't care",    "dont care",     "does not matter",
      "doesn't matter", "does n't matter", "not matter", "no preference", "any",      "anything",
      "anywhere",  "anytime",     "whatever",      "not particular", "no particular", "either is fine",
      "either one", "i do not mind", "i don't mind", "i do n't mind"};
  return cues;
}

namespace {

const std::vector<std::string>& variants(const std::string& v) {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"guesthouse", {"guest house", "guesthouses", "guest houses"}},
      {"centre", {"center", "central", "city centre", "city center"}},
      {"moderate", {"moderately", "moderately priced"}},
      {"expensive", {"pricey", "upscale"}},
      {"cheap", {"inexpensive", "cheaply", "cheaper"}},
      {"hotel", {"hotels"}},
  };
  static const std::vector<std::string> none;
  auto it = table.find(v);
  return it == table.end() ? none : it->second;
}

const std::vector<std::string>& boolean_terms(std::string_view slot) {
  static const std::vector<std::string> parking = {"parking", "park", "carpark", "car park"};
  static const std::vector<std::string> internet = {"internet", "wifi", "wi-fi", "wi fi", "wireless"};
  return slot == "parking" ? parking : internet;
}

bool negated_before(const std::vector<std::string>& toks, std::size_t i) {
  static const std::set<std::string> negators = {"no", "not", "n't", "dont", "don't", "doesn't", "without",
                                                  "never", "nor", "won't", "didn't", "isn't"};
  for (std::size_t k = 1; k <= 3 && k <= i; ++k) {
    if (negators.count(toks[i - k])) return true;
  }
  return false;
}

/// +1 positive mention, -1 negated mention, 0 none.
int boolean_cue(std::string_view slot, const std::string& u) {
  auto toks = text::split_ws(u);
  bool pos = false, neg = false;
  for (const auto& term : boolean_terms(slot)) {
    auto term_toks = text::split_ws(term);
    for (std::size_t i = 0; i + term_toks.size() <= toks.size(); ++i) {
      if (!std::equal(term_toks.begin(), term_toks.end(), toks.begin() + static_cast<std::ptrdiff_t>(i))) continue;
      (negated_before(toks, i) ? neg : pos) = true;
    }
  }
  return neg ? -1 : pos ? 1 : 0;
}

}  // namespace

bool value_expressed(const SlotTriple& t, std::string_view utterance) {
  if (is_exempt(t)) return true;
  std::string u = text::match_form(utterance);
  if (t.value == kDontcare) {
    for (const auto& c : dontcare_cues()) {
      if (text::contains_phrase(u, text::match_form(c))) return true;
    }
    return false;
  }
  if ((t.slot == "parking" || t.slot == "internet") && (t.value == "yes" || t.value == "no" || t.value == "free")) {
    int cue = boolean_cue(t.slot, u);
    return t.value == "no" ? cue < 0 : cue > 0;
  }
  std::string v = text::match_form(t.value);
  if (text::contains_phrase(u, v)) return true;
  for (const auto& alt : variants(v)) {
    if (text::contains_phrase(u, text::match_form(alt))) return true;
  }
  return false;
}

TurnBelief slot_value_match_filter(const TurnBelief& belief, std::string_view utterance, const Ontology&,
                                   std::vector<SlotTriple>* dropped) {
  TurnBelief out;
  for (const auto& t : belief.triples()) {
    if (value_expressed(t, utterance)) {
      out.add(t);
    } else if (dropped) {
      dropped->push_back(t);
    }
  }
  return out;
}

BeliefRevision revise_belief(const TurnBelief& gpt, const std::vector<Turn>& context, std::string_view utterance,
                             AuxPredictor& aux, const Ontology& ontology) {
  BeliefRevision r;
  r.aux = aux.predict_belief(context, utterance);
  TurnBelief merged = merge_beliefs(gpt, r.aux);
  r.belief = slot_value_match_filter(merged, utterance, ontology, &r.report.overgeneration_drops);
  for (const auto& t : r.belief.triples()) {
    if (t.slot != kNone && !gpt.get(t.domain, t.slot)) r.report.degeneration_fixes.push_back(t);
  }
  return r;
}

// ---- act rules

namespace {

bool in_db_domain(const ActTriple& t, const ActContext& ctx) {
  return ctx.db.bucket == DbBucket::Zero && t.domain == ctx.db.domain;
}

bool booking_context(const std::string& domain, const ActContext& ctx) {
  for (const auto& a : ctx.prior_acts) {
    if (a.has(domain, "offerbook")) return true;
  }
  if (const auto* slots = ctx.state.slots(domain)) {
    for (const auto& kv : *slots) {
      if (is_booking_slot(domain, kv.first)) return true;
    }
  }
  return false;
}

}  // namespace

ActRuleSet ActRuleSet::defaults() {
  std::vector<ActRule> r;
  r.push_back({"R1-permitted", ActRule::Action::Drop,
               [](const DialogAct& a, std::size_t i, const ActContext& ctx) {
                 const auto& t = a.triples[i];
                 if (!ctx.ontology) return false;
                 return !ctx.ontology->permits_act(t.domain, t.act) || !ctx.ontology->act_slot_valid(t.domain, t.slot);
               },
               nullptr,
               {}});
  r.push_back({"R3-offerbooked-context", ActRule::Action::Replace,
               [](const DialogAct& a, std::size_t i, const ActContext& ctx) {
                 const auto& t = a.triples[i];
                 return t.act == "offerbooked" && !a.has(t.domain, "offerbook") && !booking_context(t.domain, ctx);
               },
               [](const ActTriple& t, const ActContext&) { return ActTriple{t.domain, "inform", t.slot}; },
               {}});
  r.push_back({"R2-no-result", ActRule::Action::Replace,
               [](const DialogAct& a, std::size_t i, const ActContext& ctx) {
                 const auto& t = a.triples[i];
                 static const std::set<std::string> offers = {"inform", "recommend", "select", "offerbook"};
                 return in_db_domain(t, ctx) && offers.count(t.act) > 0;
               },
               [](const ActTriple& t, const ActContext&) { return ActTriple{t.domain, "nooffer", std::string(kNone)}; },
               {}});
  r.push_back({"R4-undiscussed-domain", ActRule::Action::Drop,
               [](const DialogAct& a, std::size_t i, const ActContext& ctx) {
                 const auto& t = a.triples[i];
                 return t.domain != kGeneral && !ctx.mentioned.count(t.domain);
               },
               nullptr,
               {}});
  r.push_back({"R5-dedupe", ActRule::Action::Drop,
               [](const DialogAct& a, std::size_t i, const ActContext&) {
                 return std::find(a.triples.begin(), a.triples.begin() + static_cast<std::ptrdiff_t>(i),
                                  a.triples[i]) != a.triples.begin() + static_cast<std::ptrdiff_t>(i);
               },
               nullptr,
               {}});
  r.push_back({"R0-empty-fallback", ActRule::Action::Inject,
               [](const DialogAct& a, std::size_t, const ActContext&) { return a.triples.empty(); },
               nullptr,
               {std::string(kGeneral), "reqmore", std::string(kNone)}});
  return ActRuleSet(std::move(r));
}

ActRevision validate_act(const DialogAct& act, const ActContext& ctx, const ActRuleSet& rules) {
  ActRevision out;
  out.act = act;
  bool was_nonempty = !act.empty();
  for (const auto& rule : rules.rules()) {
    if (rule.action == ActRule::Action::Inject) {
      if (out.act.empty() && was_nonempty) out.emptied = true;
      if (rule.when(out.act, std::string::npos, ctx)) {
        out.act.triples.push_back(rule.inject);
        out.firings.push_back({rule.name, rule.inject, rule.inject});
      }
      continue;
    }
    DialogAct next;
    for (std::size_t i = 0; i < out.act.triples.size(); ++i) {
      const auto& t = out.act.triples[i];
      if (!rule.when(out.act, i, ctx)) {
        next.triples.push_back(t);
        continue;
      }
      if (rule.action == ActRule::Action::Drop) {
        out.firings.push_back({rule.name, t, std::nullopt});
      } else {
        ActTriple r = rule.replace(t, ctx);
        out.firings.push_back({rule.name, t, r});
        next.triples.push_back(std::move(r));
      }
    }
    out.act = std::move(next);
  }
  if (out.act.empty() && was_nonempty) out.emptied = true;
  return out;
}

ActRevision validate_act(const DialogAct& act, const DialogueState& state, const DbResult& db,
                         const Ontology& ontology, const ActRuleSet& rules) {
  ActContext ctx;
  ctx.ontology = &ontology;
  ctx.state = state;
  for (const auto& d : state.domains()) ctx.mentioned.insert(d);
  ctx.db = db;
  return validate_act(act, ctx, rules);
}

std::vector<std::string> missing_placeholders(const DialogAct& act, std::string_view response) {
  std::vector<std::string> out;
  for (const auto& t : act.triples) {
    if ((t.act != "inform" && t.act != "offerbooked") || t.slot == kNone) continue;
    std::string ph = "[value_" + t.slot + "]";
    if (response.find(ph) == std::string_view::npos && std::find(out.begin(), out.end(), t.slot) == out.end()) {
      out.push_back(t.slot);
    }
  }
  return out;
}

}  // namespace dialogic
