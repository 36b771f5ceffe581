#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "dialogic/annotation.hpp"
#include "dialogic/error.hpp"
#include "dialogic/exemplar.hpp"
#include "dialogic/goal_gen.hpp"
#include "fixtures.hpp"

using namespace dialogic;

namespace {

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t inter = 0;
  for (const auto& x : a) inter += b.count(x);
  return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

double oracle_similarity(const SlotMap& g1, const SlotMap& g2) {
  std::set<std::string> d1, d2, s1, s2;
  for (const auto& t : g1.triples()) {
    d1.insert(t.domain);
    if (t.slot != "none") s1.insert(t.domain + "-" + t.slot);
  }
  for (const auto& t : g2.triples()) {
    d2.insert(t.domain);
    if (t.slot != "none") s2.insert(t.domain + "-" + t.slot);
  }
  return jaccard(d1, d2) * jaccard(s1, s2);
}

}  // namespace

TEST(Similarity, HandComputedCases) {
  SlotMap a = parse_goal("[hotel] area is south , stay is 5 [train] day is monday");
  SlotMap b = parse_goal("[hotel] area is north , stars is 4");
  // domains 1/2, slots {hotel-area} of {hotel-area, hotel-stay, train-day, hotel-stars} = 1/4
  EXPECT_DOUBLE_EQ(goal_similarity(a, b), 0.125);
  EXPECT_DOUBLE_EQ(goal_similarity(a, a), 1.0);
  EXPECT_DOUBLE_EQ(goal_similarity(parse_goal("[police]"), parse_goal("[police]")), 1.0);
  EXPECT_DOUBLE_EQ(goal_similarity(parse_goal("[police]"), parse_goal("[hotel] area is north")), 0.0);
  EXPECT_THROW(goal_similarity(SlotMap{}, a), Error);
}

TEST(Similarity, AgreesWithOracleOnSeedPairs) {
  const auto& seeds = dialogic::testing::seeds();
  for (const auto& x : seeds) {
    for (const auto& y : seeds) {
      EXPECT_NEAR(goal_similarity(x.initial_goal, y.initial_goal), oracle_similarity(x.initial_goal, y.initial_goal),
                  1e-12);
    }
  }
}

TEST(Softmax, MatchesDefinition) {
  std::vector<double> w{0.1, 0.5, 0.9};
  auto p = softmax(w, 0.2);
  double z = 0;
  for (double x : w) z += std::exp(x / 0.2);
  for (std::size_t i = 0; i < w.size(); ++i) EXPECT_NEAR(p[i], std::exp(w[i] / 0.2) / z, 1e-12);
  auto big = softmax({1000.0, 1000.0}, 0.001);
  EXPECT_NEAR(big[0], 0.5, 1e-12);
  EXPECT_ANY_THROW(softmax(w, 0.0));
}

TEST(Sampling, WithoutReplacementIsDistinct) {
  Rng rng(3);
  std::vector<double> p{0.1, 0.2, 0.3, 0.4};
  for (int i = 0; i < 200; ++i) {
    auto idx = sample_without_replacement(p, 3, rng);
    ASSERT_EQ(idx.size(), 3u);
    std::set<std::size_t> u(idx.begin(), idx.end());
    EXPECT_EQ(u.size(), 3u);
  }
}

TEST(Sampling, FrequenciesFollowProbabilities) {
  Rng rng(11);
  std::vector<double> p{0.1, 0.6, 0.3};
  std::vector<int> first(3, 0);
  const int n = 20000;
  for (int i = 0; i < n; ++i) ++first[sample_without_replacement(p, 1, rng)[0]];
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(first[i] / static_cast<double>(n), p[i], 0.015);
}

TEST(Sampling, ExamplesErrors) {
  const auto& seeds = dialogic::testing::seeds();
  Rng rng(1);
  UserGoal g(parse_goal("[hotel] area is north"));
  EXPECT_THROW(sample_examples(g, seeds, seeds.size() + 1, 0.2, rng), Error);
  EXPECT_THROW(sample_examples(g, SeedDataset{}, 1, 0.2, rng), Error);
  auto sel = sample_examples(g, seeds, 2, 0.2, rng);
  ASSERT_EQ(sel.chosen.size(), 2u);
  EXPECT_NE(sel.chosen[0].id, sel.chosen[1].id);
  auto probs = selection_probabilities(g, seeds, 0.2);
  double total = 0;
  for (const auto& [id, p] : probs) total += p;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_EQ(selected_dialogues(sel, seeds).size(), 2u);
}

TEST(GoalGen, DistributionValidation) {
  RsDistribution d;
  EXPECT_NO_THROW(d.validate());
  d.rows = {{1, 4, 6, 0.5}, {2, 3, 5, 0.4}};
  EXPECT_THROW(d.validate(), ConfigError);
  d.rows = {{1, 6, 4, 1.0}};
  EXPECT_THROW(d.validate(), ConfigError);
  EXPECT_EQ(parse_strategy("substitution"), GoalStrategy::Kind::ValueSubstitution);
  EXPECT_THROW(parse_strategy("magic"), Error);
}

TEST(GoalGen, RandomGoalsRespectRowsAndOntology) {
  const auto& o = dialogic::testing::ontology();
  ValuePool pool(o, dialogic::testing::seeds());
  RsDistribution dist;
  GoalLimits lim;
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    auto g = generate_goal_random(pool, dist, lim, rng);
    auto domains = g.domains();
    ASSERT_GE(domains.size(), 1u);
    ASSERT_LE(domains.size(), 3u);
    const RsRow* row = nullptr;
    for (const auto& r : dist.rows)
      if (r.n_domains == static_cast<int>(domains.size())) row = &r;
    ASSERT_NE(row, nullptr);
    for (const auto& d : domains) {
      std::size_t n = g.slots(d)->size();
      EXPECT_LE(n, static_cast<std::size_t>(lim.max_slots_per_domain));
      EXPECT_LE(n, static_cast<std::size_t>(row->max_slots));
    }
    for (const auto& t : g.triples()) {
      EXPECT_EQ(o.check_triple(t), "") << serialize_goal(g);
      EXPECT_NE(t.value, "dontcare");
    }
  }
}

TEST(GoalGen, SubstitutionKeepsSlotStructure) {
  const auto& seeds = dialogic::testing::seeds();
  ValuePool pool(dialogic::testing::ontology(), seeds);
  Rng rng(9);
  for (const auto& s : seeds) {
    auto g = generate_goal_substitution(s, pool, rng);
    auto a = s.initial_goal.triples();
    auto b = g.triples();
    ASSERT_EQ(a.size(), b.size()) << s.id;
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].domain, b[i].domain);
      EXPECT_EQ(a[i].slot, b[i].slot);
      if (a[i].value == "dontcare") EXPECT_EQ(b[i].value, "dontcare");
    }
  }
}

TEST(GoalGen, CombineLaterWinsAndNeverEmpty) {
  SlotMap a = parse_goal("[hotel] area is south , stars is 4");
  SlotMap b = parse_goal("[hotel] area is north [train] day is monday");
  Rng rng(2);
  auto g = combine_goals({&a, &b}, 0.0, {}, rng);
  EXPECT_EQ(serialize_goal(g), "[hotel] area is north , stars is 4 [train] day is monday");
  for (int i = 0; i < 200; ++i) EXPECT_FALSE(combine_goals({&a, &b}, 1.0, {}, rng).empty());
  GoalLimits tight{1, 1};
  auto t = combine_goals({&a, &b}, 0.0, tight, rng);
  EXPECT_EQ(t.domains().size(), 1u);
  EXPECT_EQ(t.slot_count(), 1u);
}

TEST(GoalGen, CombinationDrawsDistinctSources) {
  const auto& seeds = dialogic::testing::seeds();
  Rng rng(4);
  GoalStrategy cfg;
  for (int i = 0; i < 100; ++i) {
    auto r = generate_goal_combination(seeds, cfg, {}, 0.2, rng);
    ASSERT_EQ(r.source_ids.size(), 2u);
    EXPECT_NE(r.source_ids[0], r.source_ids[1]);
    EXPECT_FALSE(r.goal.empty());
    EXPECT_LE(r.goal.domains().size(), 4u);
  }
}
