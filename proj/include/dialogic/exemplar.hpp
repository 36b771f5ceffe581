#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "dialogic/rng.hpp"
#include "dialogic/types.hpp"

namespace dialogic {

/// Jaccard(domains) * Jaccard(domain-qualified slot names). Throws Error if
/// either goal is empty. Two empty slot sets count as identical.
double goal_similarity(const SlotMap& g1, const SlotMap& g2);

/// exp(w_j / tau) / sum_k exp(w_k / tau), with max-subtraction.
std::vector<double> softmax(const std::vector<double>& w, double tau);

/// Draws k distinct indices, renormalizing the remaining mass after each
/// draw. Order is draw order.
std::vector<std::size_t> sample_without_replacement(const std::vector<double>& probs, std::size_t k, Rng& rng);

struct ChosenExample {
  std::string id;
  std::size_t index = 0;    ///< position in the pool
  double similarity = 0.0;
  double probability = 0.0;  ///< selection probability over the full pool
};

struct ExampleSelection {
  UserGoal target_goal;
  std::vector<ChosenExample> chosen;
  double tau = 0.2;
};

std::vector<double> pool_similarities(const SlotMap& target, const SeedDataset& pool);

/// Dialogue id -> selection probability.
std::map<std::string, double> selection_probabilities(const SlotMap& target, const SeedDataset& pool, double tau);

/// Throws Error when k > |pool| or the pool is empty.
ExampleSelection sample_examples(const UserGoal& target, const SeedDataset& pool, std::size_t k, double tau,
                                 Rng& rng);

/// Resolves chosen ids against the pool.
std::vector<const Dialogue*> selected_dialogues(const ExampleSelection& sel, const SeedDataset& pool);

}  // namespace dialogic
