#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dialogic/ontology.hpp"
#include "dialogic/rng.hpp"
#include "dialogic/types.hpp"

namespace dialogic {

struct RsRow {
  int n_domains;
  int min_slots;
  int max_slots;
  double probability;
};

/// Distribution over (number of domains, slot-count range) rows.
struct RsDistribution {
  std::vector<RsRow> rows{{1, 4, 6, 0.3}, {2, 3, 5, 0.6}, {3, 2, 5, 0.1}};
  /// Throws ConfigError unless probabilities sum to 1 and min <= max.
  void validate() const;
  const RsRow& draw(Rng& rng) const;
};

struct GoalStrategy {
  enum class Kind { RandomSampling, ValueSubstitution, Combination };
  Kind kind = Kind::Combination;
  int n_source_dialogues = 2;
  double drop_probability = 0.3;
};

std::string_view to_string(GoalStrategy::Kind k);
/// Accepts "random", "substitution", "combination" (and the long forms).
GoalStrategy::Kind parse_strategy(std::string_view s);

struct GoalLimits {
  int max_domains = 4;
  int max_slots_per_domain = 6;
};

/// Candidate values per (domain, slot): the ontology list, or for
/// open-valued slots the values observed in the seed corpus.
class ValuePool {
 public:
  ValuePool(const Ontology& ontology, const SeedDataset& seeds);
  /// Never contains `dontcare`. May be empty for open-valued slots nobody
  /// used in the seeds.
  const std::vector<std::string>& candidates(std::string_view domain, std::string_view slot) const;
  const Ontology& ontology() const { return ontology_; }

 private:
  const Ontology& ontology_;
  std::map<std::string, std::vector<std::string>, std::less<>> observed_;
};

/// Domains eligible for random goals: queryable or bookable.
std::vector<std::string> goal_domains(const Ontology& ontology);

UserGoal generate_goal_random(const ValuePool& values, const RsDistribution& dist, const GoalLimits& limits,
                              Rng& rng);

UserGoal generate_goal_substitution(const Dialogue& seed, const ValuePool& values, Rng& rng);

struct CombinationResult {
  UserGoal goal;
  std::vector<std::string> source_ids;  ///< draw order
  std::vector<std::size_t> source_indices;
};

/// The first source is uniform over the seeds, the rest are drawn by goal
/// similarity to it with temperature `tau`.
CombinationResult generate_goal_combination(const SeedDataset& seeds, const GoalStrategy& cfg,
                                            const GoalLimits& limits, double tau, Rng& rng);

/// Union with later-wins, independent drops (never emptying), truncation.
UserGoal combine_goals(const std::vector<const SlotMap*>& sources, double drop_probability,
                       const GoalLimits& limits, Rng& rng);

}  // namespace dialogic
