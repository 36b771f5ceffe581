#include "dialogic/goal_gen.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "dialogic/error.hpp"
#include "dialogic/exemplar.hpp"
#include "dialogic/text.hpp"

namespace dialogic {

void RsDistribution::validate() const {
  if (rows.empty()) throw ConfigError("goal distribution has no rows");
  double total = 0;
  for (const auto& r : rows) {
    if (r.n_domains < 1 || r.min_slots < 1 || r.min_slots > r.max_slots || r.probability < 0) {
      throw ConfigError("invalid goal distribution row (" + std::to_string(r.n_domains) + ", " +
                        std::to_string(r.min_slots) + ", " + std::to_string(r.max_slots) + ")");
    }
    total += r.probability;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ConfigError("goal distribution probabilities sum to " + std::to_string(total));
}

const RsRow& RsDistribution::draw(Rng& rng) const {
  double u = uniform_real(rng);
  double acc = 0;
  for (const auto& r : rows) {
    acc += r.probability;
    if (u < acc) return r;
  }
  return rows.back();
}

std::string_view to_string(GoalStrategy::Kind k) {
  switch (k) {
    case GoalStrategy::Kind::RandomSampling: return "random";
    case GoalStrategy::Kind::ValueSubstitution: return "substitution";
    case GoalStrategy::Kind::Combination: return "combination";
  }
  return "combination";
}

GoalStrategy::Kind parse_strategy(std::string_view s) {
  std::string v = text::to_lower(s);
  if (v == "random" || v == "random_sampling" || v == "random-sampling") return GoalStrategy::Kind::RandomSampling;
  if (v == "substitution" || v == "value_substitution" || v == "value-substitution") {
    return GoalStrategy::Kind::ValueSubstitution;
  }
  if (v == "combination") return GoalStrategy::Kind::Combination;
  throw ConfigError("unknown goal strategy '" + std::string(s) + "'");
}

ValuePool::ValuePool(const Ontology& ontology, const SeedDataset& seeds) : ontology_(ontology) {
  auto observe = [&](const SlotMap& m) {
    for (const auto& [d, slots] : m) {
      for (const auto& [s, v] : slots) {
        if (v == kDontcare || v == kNone) continue;
        auto& vec = observed_[d + "." + s];
        if (std::find(vec.begin(), vec.end(), v) == vec.end()) vec.push_back(v);
      }
    }
  };
  for (const auto& d : seeds) {
    observe(d.initial_goal);
    observe(d.final_goal);
    for (const auto& t : d.turns) observe(t.belief);
  }
}

const std::vector<std::string>& ValuePool::candidates(std::string_view domain, std::string_view slot) const {
  static const std::vector<std::string> kEmpty;
  if (const DomainSchema* d = ontology_.find(domain)) {
    if (const auto* vals = d->informable.find(slot); vals && !vals->empty()) return *vals;
  }
  auto it = observed_.find(std::string(domain) + "." + std::string(slot));
  return it == observed_.end() ? kEmpty : it->second;
}

std::vector<std::string> goal_domains(const Ontology& ontology) {
  std::vector<std::string> out;
  for (const auto& [name, d] : ontology.domains()) {
    if (name != kGeneral && (d.queryable || d.bookable())) out.push_back(name);
  }
  return out;
}

UserGoal generate_goal_random(const ValuePool& values, const RsDistribution& dist, const GoalLimits& limits,
                              Rng& rng) {
  const Ontology& ontology = values.ontology();
  auto domains = goal_domains(ontology);
  if (domains.empty()) throw OntologyError("ontology has no queryable or bookable domain");
  const RsRow& row = dist.draw(rng);
  std::size_t n_domains = std::min<std::size_t>({static_cast<std::size_t>(row.n_domains), domains.size(),
                                                 static_cast<std::size_t>(limits.max_domains)});
  UserGoal goal;
  for (std::size_t di : sample_indices(rng, domains.size(), n_domains)) {
    const std::string& domain = domains[di];
    std::vector<std::string> slots;
    for (const auto& [slot, cands] : ontology.at(domain).informable) {
      if (!values.candidates(domain, slot).empty()) slots.push_back(slot);
    }
    if (slots.empty()) throw OntologyError("domain '" + domain + "' has no informable slots to sample");
    int hi = std::min({row.max_slots, static_cast<int>(slots.size()), limits.max_slots_per_domain});
    int lo = std::min(row.min_slots, hi);
    auto picks = sample_indices(rng, slots.size(), static_cast<std::size_t>(uniform_int(rng, lo, hi)));
    std::sort(picks.begin(), picks.end());
    for (std::size_t si : picks) {
      const auto& cands = values.candidates(domain, slots[si]);
      goal.set(domain, slots[si], cands[uniform_index(rng, cands.size())]);
    }
  }
  return goal;
}

UserGoal generate_goal_substitution(const Dialogue& seed, const ValuePool& values, Rng& rng) {
  if (seed.initial_goal.empty()) throw Error("seed '" + seed.id + "' has an empty goal");
  UserGoal goal;
  for (const auto& [domain, slots] : seed.initial_goal) {
    goal.add_domain(domain);
    for (const auto& [slot, value] : slots) {
      const auto& cands = values.candidates(domain, slot);
      if (value == kDontcare || cands.empty()) {
        goal.set(domain, slot, value);
      } else {
        goal.set(domain, slot, cands[uniform_index(rng, cands.size())]);
      }
    }
  }
  return goal;
}

UserGoal combine_goals(const std::vector<const SlotMap*>& sources, double drop_probability,
                       const GoalLimits& limits, Rng& rng) {
  SlotMap all;
  for (const SlotMap* s : sources) {
    for (const auto& t : s->triples()) all.add(t);
  }
  std::vector<SlotTriple> slotted;
  for (const auto& t : all.triples()) {
    if (t.slot != kNone) slotted.push_back(t);
  }
  SlotMap kept = all;
  std::size_t dropped = 0;
  for (const auto& t : slotted) {
    if (bernoulli(rng, drop_probability)) {
      kept.erase(t.domain, t.slot);
      ++dropped;
    }
  }
  if (!slotted.empty() && dropped == slotted.size()) {
    const auto& keep = slotted[uniform_index(rng, slotted.size())];
    SlotMap one;
    // rebuild in union order so the survivor keeps its position
    for (const auto& t : all.triples()) {
      if (t.slot == kNone) {
        one.add_domain(t.domain);
      } else if (t.domain == keep.domain && t.slot == keep.slot) {
        one.set(t.domain, t.slot, t.value);
      }
    }
    kept = one;
  }
  kept.truncate_domains(static_cast<std::size_t>(limits.max_domains));
  for (const auto& d : kept.domains()) kept.truncate_slots(d, static_cast<std::size_t>(limits.max_slots_per_domain));
  return UserGoal(std::move(kept));
}

CombinationResult generate_goal_combination(const SeedDataset& seeds, const GoalStrategy& cfg,
                                            const GoalLimits& limits, double tau, Rng& rng) {
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (!seeds[i].initial_goal.empty()) usable.push_back(i);
  }
  std::size_t n = static_cast<std::size_t>(std::max(1, cfg.n_source_dialogues));
  if (usable.size() < n) {
    throw Error("combination needs " + std::to_string(n) + " seed dialogues, have " + std::to_string(usable.size()));
  }
  CombinationResult r;
  std::size_t first = usable[uniform_index(rng, usable.size())];
  r.source_indices.push_back(first);
  if (n > 1) {
    std::vector<std::size_t> rest;
    std::vector<double> w;
    for (std::size_t i : usable) {
      if (i == first) continue;
      rest.push_back(i);
      w.push_back(goal_similarity(seeds[first].initial_goal, seeds[i].initial_goal));
    }
    for (std::size_t k : sample_without_replacement(softmax(w, tau), n - 1, rng)) r.source_indices.push_back(rest[k]);
  }
  std::vector<const SlotMap*> sources;
  for (std::size_t i : r.source_indices) {
    r.source_ids.push_back(seeds[i].id);
    sources.push_back(&seeds[i].initial_goal);
  }
  r.goal = combine_goals(sources, cfg.drop_probability, limits, rng);
  return r;
}

}  // namespace dialogic
