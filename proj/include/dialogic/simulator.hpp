#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dialogic/backend.hpp"
#include "dialogic/database.hpp"
#include "dialogic/exemplar.hpp"
#include "dialogic/goal_gen.hpp"
#include "dialogic/ontology.hpp"
#include "dialogic/prompt.hpp"
#include "dialogic/revision.hpp"
#include "dialogic/types.hpp"

namespace dialogic {

/// Shared read-only inputs of a run. Backend and aux must tolerate
/// concurrent calls.
struct SimEnv {
  const Ontology& ontology;
  const SeedDataset& seeds;
  CompletionBackend& backend;
  AuxPredictor& aux;
  const EntityDb& db;
  GenConfig cfg;
  ActRuleSet rules = ActRuleSet::defaults();
  PromptStyle style;
  std::string task_description{kTaskDescription};
};

enum class RunStatus { Active, FinishedBye, FinishedMaxTurns, Failed };
std::string_view to_string(RunStatus s);

struct TurnTrace {
  int turn = 0;
  std::string prompt;  ///< prompt at the start of the turn
  std::string user_raw;
  std::string system_raw;
  std::optional<std::string> response_raw;  ///< set when the response was regenerated
  RevisionReport belief_report;
  std::vector<RuleFiring> firings;
  bool aux_act_used = false;
  int user_attempts = 1;
  int system_attempts = 1;
  std::vector<std::string> missing_placeholders;
};

struct SimulationResult {
  Dialogue dialogue;
  RunStatus status = RunStatus::Active;
  std::string failure_kind;  ///< backend / parse / context_budget / goal / aux
  std::string failure;
  ExampleSelection examples;
  std::vector<TurnTrace> trace;
  std::string prompt;  ///< final prompt text
};

/// Runs the turn loop against explicit demonstrations.
SimulationResult simulate_dialogue(const UserGoal& goal, const std::vector<const Dialogue*>& examples,
                                   const SimEnv& env, const std::string& id = "sim");

/// Samples cfg.n_shots demonstrations by goal similarity, then runs.
SimulationResult simulate_dialogue(const UserGoal& goal, const SimEnv& env, Rng& rng, const std::string& id = "sim");

/// Active domain for the DB lookup: last non-general domain of the revised
/// turn belief; `general` when only general was mentioned; `previous` when
/// the belief is empty.
std::string active_domain(const TurnBelief& belief, const std::string& previous);

nlohmann::ordered_json trace_json(const SimulationResult& r);

// ---- turn-level augmentation

enum class LastActKind { Request, Reqmore, Other };
std::string_view to_string(LastActKind k);

/// Thrown when a turn offers nothing to augment.
class UnaugmentableError : public Error {
 public:
  using Error::Error;
};

struct TurnBeliefDraw {
  TurnBelief belief;
  LastActKind kind = LastActKind::Other;
  std::string domain;
  std::vector<std::string> requested;  ///< informable slots the last act requested
};

LastActKind classify_last_act(const DialogAct& act, const Ontology& ontology);

TurnBeliefDraw generate_turn_belief(const Dialogue& source, int turn_idx, const ValuePool& values, Rng& rng);

struct DstAugSpec {
  const Dialogue* source = nullptr;
  int turn_index = 0;
  LastActKind kind = LastActKind::Other;
  TurnBelief belief;
  int n_shots = 2;
  /// Demonstrations to use instead of sampling them.
  std::optional<std::vector<DstExample>> examples;
  std::string id_suffix;
};

struct DstResult {
  bool accepted = false;
  Dialogue dialogue;
  std::string prompt;
  std::string utterance;
  int attempts = 0;
  std::vector<SlotTriple> unexpressed;  ///< of the last attempt
};

/// Seed user turns usable as turn-level demonstrations (excluding one
/// dialogue id).
std::vector<DstExample> dst_example_pool(const SeedDataset& seeds, const std::string& exclude_id);

DstResult augment_dst_turn(const DstAugSpec& spec, const SimEnv& env, Rng& rng);

// ---- batches

struct BatchOptions {
  int n = 1;
  GoalStrategy strategy;
  RsDistribution dist;
  GoalLimits limits;
  unsigned long long seed = 0;
  int workers = 1;
  std::optional<UserGoal> fixed_goal;
  std::vector<std::string> pinned_examples;  ///< dialogue ids
  std::string id_prefix = "sim";
};

struct BatchReport {
  int requested = 0;
  int succeeded = 0;
  int failed = 0;
  int rejected = 0;
  int skipped = 0;
  int turns = 0;
  std::map<std::string, int> failures_by_kind;
  std::map<std::string, int> statuses;
  std::vector<std::string> messages;
  nlohmann::ordered_json to_json() const;
};

struct BatchResult {
  std::vector<Dialogue> dialogues;
  BatchReport report;
  std::vector<SimulationResult> runs;  ///< every run, failed ones included
};

BatchResult simulate_batch(const BatchOptions& opt, const SimEnv& env);

struct DstBatchOptions {
  int passes = 1;
  unsigned long long seed = 0;
  int workers = 1;
};

struct DstBatchResult {
  std::vector<Dialogue> dialogues;
  BatchReport report;
};

DstBatchResult augment_dst_corpus(const DstBatchOptions& opt, const SimEnv& env);

/// Writes one JSON object per turn of every run.
void write_trace(const std::vector<SimulationResult>& runs, const std::filesystem::path& path);

}  // namespace dialogic
