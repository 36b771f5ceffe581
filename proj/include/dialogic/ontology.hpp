#pragma once

#include <array>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dialogic/ordered_map.hpp"
#include "dialogic/types.hpp"

namespace dialogic {

/// The twelve dialog act types of the MultiWOZ ontology.
inline constexpr std::array<std::string_view, 12> kActTypes = {
    "inform", "request", "select", "recommend", "nooffer", "offerbook",
    "offerbooked", "nobook", "welcome", "greet", "bye", "reqmore"};

/// Act-only slot valid in every domain ("i found [value_choice] hotels").
inline constexpr std::string_view kChoiceSlot = "choice";

bool is_act_type(std::string_view s);

/// Maps surface spellings to the canonical slot name ("book stay" -> "stay",
/// "arriveby" -> "arrive", ...). Unknown names are returned lowercased.
std::string canonical_slot(std::string_view slot);

struct DomainSchema {
  /// Informable slot -> candidate values (empty list: open-valued).
  OrderedMap<std::string, std::vector<std::string>> informable;
  /// Slots that exist in the domain but are never user constraints
  /// (reference, phone, ...).
  std::vector<std::string> extra;
  std::set<std::string> requestable;
  std::set<std::string> acts;
  bool queryable = false;

  bool is_informable(std::string_view slot) const { return informable.contains(slot); }
  /// informable ∪ extra
  bool has_slot(std::string_view slot) const;
  bool permits(std::string_view act) const { return acts.count(std::string(act)) > 0; }
  /// Permits offerbook or offerbooked.
  bool bookable() const;
};

class Ontology {
 public:
  /// Validates the ontology invariants; throws SchemaError / OntologyError.
  static Ontology from_json(const nlohmann::ordered_json& j);
  static Ontology load(const std::filesystem::path& path);
  nlohmann::ordered_json to_json() const;

  const DomainSchema* find(std::string_view domain) const { return domains_.find(domain); }
  /// Throws OntologyError for an unknown domain.
  const DomainSchema& at(std::string_view domain) const;
  bool has_domain(std::string_view domain) const { return domains_.contains(domain); }
  const OrderedMap<std::string, DomainSchema>& domains() const { return domains_; }

  bool permits_act(std::string_view domain, std::string_view act) const;
  /// Slot valid in the domain for a dialog act: the domain's slot universe,
  /// `choice`, or `none`.
  bool act_slot_valid(std::string_view domain, std::string_view slot) const;
  /// Slot exists in any domain (or is `choice` / `none`).
  bool knows_slot(std::string_view slot) const;

  /// Empty string when valid, else a description naming domain.slot.
  std::string check_triple(const SlotTriple& t) const;
  std::string check_act_triple(const ActTriple& t) const;

 private:
  OrderedMap<std::string, DomainSchema> domains_;
};

}  // namespace dialogic
