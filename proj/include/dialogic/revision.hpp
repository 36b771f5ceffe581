#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dialogic/database.hpp"
#include "dialogic/ontology.hpp"
#include "dialogic/types.hpp"

namespace dialogic {

/// Union of both beliefs; the LLM value wins on a (domain, slot) collision.
/// LLM entries keep their order, aux-only entries follow.
TurnBelief merge_beliefs(const TurnBelief& gpt, const TurnBelief& aux);

/// `none` sentinels and the general domain always pass the filter.
bool is_exempt(const SlotTriple& t);

/// True when the utterance expresses the triple's value: literal match on
/// token boundaries (numbers and times normalized, a few spelling variants),
/// a parking/internet cue for yes/no, or a no-preference cue for dontcare.
bool value_expressed(const SlotTriple& t, std::string_view utterance);

/// Phrases accepted as "no preference".
const std::vector<std::string>& dontcare_cues();

/// Keeps the triples whose value is expressed in the utterance. Dropped
/// triples are appended to `dropped` when given.
TurnBelief slot_value_match_filter(const TurnBelief& belief, std::string_view utterance, const Ontology& ontology,
                                   std::vector<SlotTriple>* dropped = nullptr);

class AuxPredictor {
 public:
  virtual ~AuxPredictor() = default;
  virtual TurnBelief predict_belief(const std::vector<Turn>& context, std::string_view utterance) = 0;
  /// Empty optional: the predictor has no act model.
  virtual std::optional<DialogAct> predict_act(const std::vector<Turn>& context, std::string_view utterance,
                                               const TurnBelief& belief, const DbResult& db) = 0;
  virtual std::string name() const = 0;
};

/// Rule-based stand-in for a trained state tracker: a value lexicon from the
/// ontology and seed corpus plus cue rules for numbers, times, directions,
/// booleans and no-preference answers.
class LexicalAuxPredictor : public AuxPredictor {
 public:
  LexicalAuxPredictor(const Ontology& ontology, const SeedDataset& seeds, const EntityDb* db = nullptr);

  TurnBelief predict_belief(const std::vector<Turn>& context, std::string_view utterance) override;
  std::optional<DialogAct> predict_act(const std::vector<Turn>& context, std::string_view utterance,
                                       const TurnBelief& belief, const DbResult& db) override;
  std::string name() const override { return "lexical"; }

  /// Domain the utterance is about: keyword hit, else the latest context
  /// domain. Empty when unknown.
  std::string focus_domain(const std::vector<Turn>& context, const std::vector<std::string>& tokens) const;

 private:
  struct Entry {
    std::string value;  ///< canonical value
    std::vector<std::pair<std::string, std::string>> slots;
  };
  void add_value(const std::string& domain, const std::string& slot, const std::string& value,
                 const std::string& surface);

  const Ontology& ontology_;
  std::map<std::string, Entry> lexicon_;  ///< match-form surface -> entry
  std::size_t longest_ = 1;               ///< longest surface in tokens
};

/// Talks to an external tracker over newline-delimited JSON, either through
/// a child process's stdin/stdout or by HTTP POST. Calls are serialized.
class ExternalAuxPredictor : public AuxPredictor {
 public:
  struct Config {
    std::vector<std::string> command;  ///< argv for subprocess mode
    std::string url;                   ///< http(s)://host[:port]/path for HTTP mode
    int timeout_seconds = 30;
  };
  ExternalAuxPredictor(Config cfg, const Ontology& ontology);
  ~ExternalAuxPredictor() override;

  TurnBelief predict_belief(const std::vector<Turn>& context, std::string_view utterance) override;
  std::optional<DialogAct> predict_act(const std::vector<Turn>& context, std::string_view utterance,
                                       const TurnBelief& belief, const DbResult& db) override;
  std::string name() const override { return "external"; }

 private:
  std::string roundtrip(const std::string& request_line);

  Config cfg_;
  const Ontology& ontology_;
  std::mutex mu_;
  int child_pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string pending_;
};

struct RevisionReport {
  std::vector<SlotTriple> degeneration_fixes;   ///< aux-only triples that survived
  std::vector<SlotTriple> overgeneration_drops;  ///< triples removed by the filter
  bool empty() const { return degeneration_fixes.empty() && overgeneration_drops.empty(); }
};

struct BeliefRevision {
  TurnBelief belief;
  TurnBelief aux;
  RevisionReport report;
};

/// filter(merge(gpt, aux.predict_belief(...))).
BeliefRevision revise_belief(const TurnBelief& gpt, const std::vector<Turn>& context, std::string_view utterance,
                             AuxPredictor& aux, const Ontology& ontology);

/// Everything the act rules may look at.
struct ActContext {
  const Ontology* ontology = nullptr;
  DialogueState state;               ///< accumulated belief including this turn
  std::set<std::string> mentioned;   ///< domains named so far, domain-only entries included
  DbResult db;
  std::vector<DialogAct> prior_acts;  ///< revised acts of earlier turns
};

struct RuleFiring {
  std::string rule;
  ActTriple before;
  std::optional<ActTriple> after;  ///< empty when the triple was dropped
};

struct ActRule {
  enum class Action { Drop, Replace, Inject };
  std::string name;
  Action action = Action::Drop;
  /// Drop/Replace: evaluated per triple (index into act). Inject: evaluated
  /// once with index npos.
  std::function<bool(const DialogAct& act, std::size_t index, const ActContext& ctx)> when;
  std::function<ActTriple(const ActTriple& t, const ActContext& ctx)> replace;
  ActTriple inject;
};

class ActRuleSet {
 public:
  ActRuleSet() = default;
  explicit ActRuleSet(std::vector<ActRule> rules) : rules_(std::move(rules)) {}

  /// R1 permitted act/slot, R3 offerbooked needs booking context, R2 no
  /// result means nooffer, R4 undiscussed domain, R5 dedupe, then the
  /// empty-act fallback (general, reqmore).
  static ActRuleSet defaults();

  void add(ActRule r) { rules_.push_back(std::move(r)); }
  const std::vector<ActRule>& rules() const { return rules_; }

 private:
  std::vector<ActRule> rules_;
};

struct ActRevision {
  DialogAct act;
  std::vector<RuleFiring> firings;
  /// The rules removed every triple (before any fallback injection).
  bool emptied = false;
};

ActRevision validate_act(const DialogAct& act, const ActContext& ctx, const ActRuleSet& rules);
ActRevision validate_act(const DialogAct& act, const DialogueState& state, const DbResult& db,
                         const Ontology& ontology, const ActRuleSet& rules);

/// Slots named by inform/offerbooked triples whose `[value_slot]`
/// placeholder is absent from the response.
std::vector<std::string> missing_placeholders(const DialogAct& act, std::string_view response);

}  // namespace dialogic
