#include "dialogic/types.hpp"

#include <algorithm>

#include "dialogic/error.hpp"

namespace dialogic {

void SlotMap::set(const std::string& domain, const std::string& slot, const std::string& value) {
  entries_[domain].insert_or_assign(slot, value);
}

void SlotMap::add_domain(const std::string& domain) { (void)entries_[domain]; }

void SlotMap::add(const SlotTriple& t) {
  if (t.slot == kNone) {
    add_domain(t.domain);
  } else {
    set(t.domain, t.slot, t.value);
  }
}

const std::string* SlotMap::get(std::string_view domain, std::string_view slot) const {
  const Slots* s = entries_.find(domain);
  return s ? s->find(slot) : nullptr;
}

const SlotMap::Slots* SlotMap::slots(std::string_view domain) const { return entries_.find(domain); }

bool SlotMap::erase(std::string_view domain, std::string_view slot) {
  Slots* s = entries_.find(domain);
  if (!s || !s->erase(slot)) return false;
  if (s->empty()) entries_.erase(domain);
  return true;
}

void SlotMap::truncate_slots(std::string_view domain, std::size_t n) {
  if (Slots* s = entries_.find(domain)) s->truncate(n);
}

std::vector<SlotTriple> SlotMap::triples() const {
  std::vector<SlotTriple> out;
  for (const auto& [domain, slots] : entries_) {
    if (slots.empty()) {
      out.push_back({domain, std::string(kNone), std::string(kNone)});
      continue;
    }
    for (const auto& [slot, value] : slots) out.push_back({domain, slot, value});
  }
  return out;
}

std::vector<std::string> SlotMap::domains() const {
  std::vector<std::string> out;
  for (const auto& kv : entries_) out.push_back(kv.first);
  return out;
}

std::size_t SlotMap::slot_count() const {
  std::size_t n = 0;
  for (const auto& kv : entries_) n += kv.second.size();
  return n;
}

void accumulate_into(DialogueState& state, const TurnBelief& belief) {
  for (const auto& [domain, slots] : belief) {
    if (domain == kGeneral) continue;
    for (const auto& [slot, value] : slots) state.set(domain, slot, value);
  }
}

DialogueState accumulate_state(const std::vector<TurnBelief>& turn_beliefs) {
  DialogueState state;
  for (const auto& b : turn_beliefs) accumulate_into(state, b);
  return state;
}

bool DialogAct::has(std::string_view domain, std::string_view act) const {
  return std::any_of(triples.begin(), triples.end(),
                     [&](const ActTriple& t) { return t.domain == domain && t.act == act; });
}

bool DialogAct::has_act(std::string_view act) const {
  return std::any_of(triples.begin(), triples.end(), [&](const ActTriple& t) { return t.act == act; });
}

std::string_view to_string(DbBucket b) {
  switch (b) {
    case DbBucket::Zero: return "db_0";
    case DbBucket::One: return "db_1";
    case DbBucket::Few: return "db_2";
    case DbBucket::Many: return "db_3";
    case DbBucket::NoResult: return "db_nores";
  }
  return "db_nores";
}

std::optional<DbBucket> parse_bucket(std::string_view s) {
  for (DbBucket b : {DbBucket::Zero, DbBucket::One, DbBucket::Few, DbBucket::Many, DbBucket::NoResult}) {
    if (to_string(b) == s) return b;
  }
  return std::nullopt;
}

std::string_view to_string(DialogueSource s) {
  switch (s) {
    case DialogueSource::Seed: return "seed";
    case DialogueSource::Simulated: return "simulated";
    case DialogueSource::DstAugmented: return "dst_augmented";
  }
  return "seed";
}

std::optional<DialogueSource> parse_source(std::string_view s) {
  for (DialogueSource v : {DialogueSource::Seed, DialogueSource::Simulated, DialogueSource::DstAugmented}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

void GenConfig::validate() const {
  if (!(select_temperature > 0)) throw ConfigError("select temperature must be > 0");
  if (n_shots < 1) throw ConfigError("n_shots must be >= 1");
  if (max_turns < 1) throw ConfigError("max_turns must be >= 1");
  if (max_domains < 1) throw ConfigError("max_domains must be >= 1");
  if (max_slots_per_domain < 1) throw ConfigError("max_slots_per_domain must be >= 1");
  if (retries < 0) throw ConfigError("retries must be >= 0");
  if (decode.temperature < 0 || decode.temperature > 2) throw ConfigError("temperature must be in [0, 2]");
  if (decode.top_p < 0 || decode.top_p > 2) throw ConfigError("top_p must be in [0, 2]");
  if (decode.max_tokens < 1) throw ConfigError("max_tokens must be >= 1");
  if (context_budget < 1) throw ConfigError("context_budget must be >= 1");
}

}  // namespace dialogic
