#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dialogic/ordered_map.hpp"

namespace dialogic {

inline constexpr std::string_view kNone = "none";
inline constexpr std::string_view kGeneral = "general";
inline constexpr std::string_view kDontcare = "dontcare";

struct SlotTriple {
  std::string domain;
  std::string slot;
  std::string value;

  friend bool operator==(const SlotTriple&, const SlotTriple&) = default;
};

/// domain -> slot -> value, insertion ordered. A domain with no slots is a
/// domain-only entry, i.e. the triple (domain, none, none).
class SlotMap {
 public:
  using Slots = OrderedMap<std::string, std::string>;

  /// Inserts or overwrites; an existing (domain, slot) keeps its position.
  void set(const std::string& domain, const std::string& slot, const std::string& value);
  /// Adds a domain-only entry if the domain is not present yet.
  void add_domain(const std::string& domain);
  /// Adds a triple, treating (d, none, none) as a domain-only entry.
  void add(const SlotTriple& t);

  const std::string* get(std::string_view domain, std::string_view slot) const;
  const Slots* slots(std::string_view domain) const;
  bool has_domain(std::string_view domain) const { return entries_.contains(domain); }

  /// Removes one slot; a domain left without slots is removed as well.
  bool erase(std::string_view domain, std::string_view slot);
  bool erase_domain(std::string_view domain) { return entries_.erase(domain); }
  void truncate_domains(std::size_t n) { entries_.truncate(n); }
  void truncate_slots(std::string_view domain, std::size_t n);

  /// All triples in order; domain-only entries come out as (d, none, none).
  std::vector<SlotTriple> triples() const;
  std::vector<std::string> domains() const;
  /// Number of (domain, slot, value) entries, not counting domain-only ones.
  std::size_t slot_count() const;
  bool empty() const { return entries_.empty(); }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  friend bool operator==(const SlotMap& a, const SlotMap& b) { return a.entries_ == b.entries_; }

 private:
  OrderedMap<std::string, Slots> entries_;
};

/// Target constraints of a simulated user.
struct UserGoal : SlotMap {
  UserGoal() = default;
  explicit UserGoal(SlotMap m) : SlotMap(std::move(m)) {}
};

/// What the user mentions in one turn (a delta, not the accumulated state).
struct TurnBelief : SlotMap {
  TurnBelief() = default;
  explicit TurnBelief(SlotMap m) : SlotMap(std::move(m)) {}
};

struct DialogueState : SlotMap {
  DialogueState() = default;
  explicit DialogueState(SlotMap m) : SlotMap(std::move(m)) {}
};

/// Left fold with last-writer-wins per (domain, slot). Domain-only entries
/// and the general domain contribute nothing.
DialogueState accumulate_state(const std::vector<TurnBelief>& turn_beliefs);
void accumulate_into(DialogueState& state, const TurnBelief& belief);

struct ActTriple {
  std::string domain;
  std::string act;
  std::string slot;  // "none" for slotless acts

  friend bool operator==(const ActTriple&, const ActTriple&) = default;
};

struct DialogAct {
  std::vector<ActTriple> triples;

  bool empty() const { return triples.empty(); }
  bool has(std::string_view domain, std::string_view act) const;
  bool has_act(std::string_view act) const;
  friend bool operator==(const DialogAct&, const DialogAct&) = default;
};

enum class DbBucket { Zero, One, Few, Many, NoResult };

std::string_view to_string(DbBucket b);
std::optional<DbBucket> parse_bucket(std::string_view s);

struct DbResult {
  std::string domain{kGeneral};
  int count = 0;
  DbBucket bucket = DbBucket::NoResult;

  friend bool operator==(const DbResult&, const DbResult&) = default;
};

struct Turn {
  std::string user;
  TurnBelief gpt_belief;
  TurnBelief aux_belief;
  TurnBelief belief;
  DbResult db;
  DialogAct gpt_act;
  DialogAct act;
  std::string system_response;

  friend bool operator==(const Turn&, const Turn&) = default;
};

enum class DialogueSource { Seed, Simulated, DstAugmented };

std::string_view to_string(DialogueSource s);
std::optional<DialogueSource> parse_source(std::string_view s);

struct Dialogue {
  std::string id;
  UserGoal initial_goal;
  UserGoal final_goal;
  std::vector<Turn> turns;
  DialogueSource source = DialogueSource::Seed;

  friend bool operator==(const Dialogue&, const Dialogue&) = default;
};

using SeedDataset = std::vector<Dialogue>;

struct DecodeParams {
  double temperature = 0.7;
  double top_p = 1.0;
  double frequency_penalty = 1.0;
  int max_tokens = 256;

  /// temperature 0.7, top_p 1.0, frequency penalty 1.0.
  static DecodeParams standard() { return {}; }
  /// Nucleus sampling with p = 0.7.
  static DecodeParams nucleus() { return {1.0, 0.7, 1.0, 256}; }
};

struct GenConfig {
  int n_shots = 2;
  double select_temperature = 0.2;
  int max_turns = 12;
  int max_domains = 4;
  int max_slots_per_domain = 6;
  DecodeParams decode;
  int retries = 3;
  std::optional<unsigned long long> rng_seed;
  /// Prompt length limit in estimated tokens.
  int context_budget = 4000;

  /// Throws ConfigError on an invalid combination.
  void validate() const;
};

}  // namespace dialogic
