#include "dialogic/exemplar.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "dialogic/error.hpp"

namespace dialogic {

namespace {

template <class T>
double jaccard(const std::set<T>& a, const std::set<T>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t inter = 0;
  for (const auto& x : a) inter += b.count(x);
  return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

void key_sets(const SlotMap& g, std::set<std::string>& domains, std::set<std::string>& slots) {
  for (const auto& [d, s] : g) {
    domains.insert(d);
    for (const auto& kv : s) slots.insert(d + "." + kv.first);
  }
}

}  // namespace

double goal_similarity(const SlotMap& g1, const SlotMap& g2) {
  if (g1.empty() || g2.empty()) throw Error("goal similarity is undefined for an empty goal");
  std::set<std::string> d1, d2, s1, s2;
  key_sets(g1, d1, s1);
  key_sets(g2, d2, s2);
  return jaccard(d1, d2) * jaccard(s1, s2);
}

std::vector<double> softmax(const std::vector<double>& w, double tau) {
  if (!(tau > 0)) throw Error("temperature must be positive");
  std::vector<double> p(w.size());
  if (w.empty()) return p;
  double m = *std::max_element(w.begin(), w.end());
  double z = 0;
  for (std::size_t i = 0; i < w.size(); ++i) z += p[i] = std::exp((w[i] - m) / tau);
  for (auto& x : p) x /= z;
  return p;
}

std::vector<std::size_t> sample_without_replacement(const std::vector<double>& probs, std::size_t k, Rng& rng) {
  if (k > probs.size()) throw Error("cannot draw " + std::to_string(k) + " from " + std::to_string(probs.size()));
  std::vector<double> mass = probs;
  std::vector<std::size_t> out;
  out.reserve(k);
  for (std::size_t n = 0; n < k; ++n) {
    double total = 0;
    for (double m : mass) total += m;
    std::size_t pick = mass.size();
    if (total > 0) {
      double u = uniform_real(rng) * total;
      double acc = 0;
      for (std::size_t i = 0; i < mass.size(); ++i) {
        if (mass[i] <= 0) continue;
        acc += mass[i];
        pick = i;
        if (u < acc) break;
      }
    } else {
      // every remaining weight underflowed; fall back to uniform
      std::vector<std::size_t> left;
      for (std::size_t i = 0; i < mass.size(); ++i) {
        if (std::find(out.begin(), out.end(), i) == out.end()) left.push_back(i);
      }
      pick = left[uniform_index(rng, left.size())];
    }
    out.push_back(pick);
    mass[pick] = 0;
  }
  return out;
}

std::vector<double> pool_similarities(const SlotMap& target, const SeedDataset& pool) {
  std::vector<double> w;
  w.reserve(pool.size());
  for (const auto& d : pool) w.push_back(d.initial_goal.empty() ? 0.0 : goal_similarity(target, d.initial_goal));
  return w;
}

std::map<std::string, double> selection_probabilities(const SlotMap& target, const SeedDataset& pool, double tau) {
  if (pool.empty()) throw Error("example pool is empty");
  auto p = softmax(pool_similarities(target, pool), tau);
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < pool.size(); ++i) out[pool[i].id] += p[i];
  return out;
}

ExampleSelection sample_examples(const UserGoal& target, const SeedDataset& pool, std::size_t k, double tau,
                                 Rng& rng) {
  if (pool.empty()) throw Error("example pool is empty");
  if (k > pool.size()) {
    throw Error("requested " + std::to_string(k) + " examples from a pool of " + std::to_string(pool.size()));
  }
  auto w = pool_similarities(target, pool);
  auto p = softmax(w, tau);
  ExampleSelection sel;
  sel.target_goal = target;
  sel.tau = tau;
  for (std::size_t i : sample_without_replacement(p, k, rng)) sel.chosen.push_back({pool[i].id, i, w[i], p[i]});
  return sel;
}

std::vector<const Dialogue*> selected_dialogues(const ExampleSelection& sel, const SeedDataset& pool) {
  std::vector<const Dialogue*> out;
  for (const auto& c : sel.chosen) {
    if (c.index < pool.size() && pool[c.index].id == c.id) {
      out.push_back(&pool[c.index]);
      continue;
    }
    auto it = std::find_if(pool.begin(), pool.end(), [&](const Dialogue& d) { return d.id == c.id; });
    if (it == pool.end()) throw Error("selected example '" + c.id + "' not in pool");
    out.push_back(&*it);
  }
  return out;
}

}  // namespace dialogic
