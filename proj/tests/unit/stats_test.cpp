#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "dialogic/annotation.hpp"
#include "dialogic/error.hpp"
#include "dialogic/stats.hpp"
#include "fixtures.hpp"

using namespace dialogic;

namespace {

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) {
    for (auto& c : w) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    out.push_back(w);
  }
  return out;
}

struct Oracle {
  long long tokens = 0;
  std::set<std::string> uni;
  std::set<std::string> tri;
  void add(const std::string& utt) {
    auto w = words(utt);
    tokens += static_cast<long long>(w.size());
    uni.insert(w.begin(), w.end());
    for (std::size_t i = 0; i + 2 < w.size(); ++i) tri.insert(w[i] + '\x1f' + w[i + 1] + '\x1f' + w[i + 2]);
  }
};

Dialogue tiny(const std::string& id, const std::string& goal, std::vector<std::pair<std::string, std::string>> turns) {
  Dialogue d;
  d.id = id;
  d.initial_goal = d.final_goal = UserGoal(parse_goal(goal));
  for (auto& [u, s] : turns) {
    Turn t;
    t.user = u;
    t.system_response = s;
    d.turns.push_back(t);
  }
  return d;
}

}  // namespace

TEST(Stats, EmptyCorpusIsAllZero) {
  auto s = compute_stats({});
  EXPECT_EQ(s.total_dialogues, 0);
  EXPECT_EQ(s.total_turns, 0);
  EXPECT_DOUBLE_EQ(s.avg_turns, 0.0);
  EXPECT_DOUBLE_EQ(s.avg_domains, 0.0);
  EXPECT_EQ(s.both.unique_3grams, 0);
}

TEST(Stats, HandCountedCorpus) {
  std::vector<Dialogue> c{
      tiny("a", "[hotel] area is north [train] day is monday [general]",
           {{"I need a hotel", "a hotel ok"}, {"thanks", "bye now"}}),
      tiny("b", "[police]", {{"where is the police", "the police is here"}})};
  auto s = compute_stats(c);
  EXPECT_EQ(s.total_dialogues, 2);
  EXPECT_EQ(s.total_turns, 3);
  EXPECT_EQ(s.total_domains, 3);
  EXPECT_DOUBLE_EQ(s.avg_turns, 1.5);
  EXPECT_DOUBLE_EQ(s.avg_domains, 1.5);
  // system: a hotel ok | bye now | the police is here
  EXPECT_EQ(s.system.tokens, 9);
  EXPECT_EQ(s.system.unique_tokens, 9);
  EXPECT_EQ(s.system.unique_3grams, 3);
  // user adds i need (a hotel) | thanks | where (is the police)
  EXPECT_EQ(s.both.unique_tokens, 13);
  EXPECT_EQ(s.both.unique_3grams, 3 + 2 + 2);
}

TEST(Stats, MatchesOracleOnSeeds) {
  const auto& seeds = dialogic::testing::seeds();
  Oracle both, sys;
  long long turns = 0, domains = 0;
  for (const auto& d : seeds) {
    turns += static_cast<long long>(d.turns.size());
    std::set<std::string> ds;
    for (const auto& name : d.final_goal.domains())
      if (name != "general") ds.insert(name);
    domains += static_cast<long long>(ds.size());
    for (const auto& t : d.turns) {
      both.add(t.user);
      both.add(t.system_response);
      sys.add(t.system_response);
    }
  }
  auto s = compute_stats(seeds);
  EXPECT_EQ(s.total_turns, turns);
  EXPECT_EQ(s.total_domains, domains);
  EXPECT_EQ(s.both.tokens, both.tokens);
  EXPECT_EQ(s.both.unique_tokens, static_cast<long long>(both.uni.size()));
  EXPECT_EQ(s.both.unique_3grams, static_cast<long long>(both.tri.size()));
  EXPECT_EQ(s.system.unique_tokens, static_cast<long long>(sys.uni.size()));
  EXPECT_EQ(s.system.unique_3grams, static_cast<long long>(sys.tri.size()));
  EXPECT_NEAR(s.avg_turns, static_cast<double>(turns) / static_cast<double>(seeds.size()), 1e-12);
}

TEST(Stats, AveragesFromTotals) {
  CorpusStats s;
  s.total_dialogues = 85;
  s.total_turns = 599;
  s.total_domains = 170;
  fill_averages(s);
  EXPECT_NEAR(s.avg_turns, 7.05, 0.005);
  EXPECT_DOUBLE_EQ(s.avg_domains, 2.0);
}

TEST(Stats, CombinedScore) {
  EXPECT_DOUBLE_EQ(combined_score(80.0, 70.0, 15.0), 90.0);
  EXPECT_THROW(combined_score(-1.0, 0.0, 0.0), Error);
}

TEST(Stats, JsonAndTable) {
  auto s = compute_stats(dialogic::testing::seeds());
  auto j = s.to_json();
  EXPECT_EQ(j.at("total_dialogues"), s.total_dialogues);
  EXPECT_EQ(j.at("system_only").at("unique_3grams"), s.system.unique_3grams);
  EXPECT_NE(s.table().find("Uniq. 3-grams"), std::string::npos);
}
