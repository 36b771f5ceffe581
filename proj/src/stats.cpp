#include "dialogic/stats.hpp"

#include <set>
#include <sstream>

#include <fmt/format.h>

#include "dialogic/error.hpp"
#include "dialogic/text.hpp"

namespace dialogic {

namespace {

class Counter {
 public:
  void add(const std::string& utterance) {
    auto toks = text::split_ws(text::to_lower(utterance));
    tokens_ += static_cast<long long>(toks.size());
    for (const auto& t : toks) vocab_.insert(t);
    for (std::size_t i = 0; i + 2 < toks.size(); ++i) {
      trigrams_.insert(toks[i] + '\x1f' + toks[i + 1] + '\x1f' + toks[i + 2]);
    }
  }
  NgramCounts counts() const {
    return {tokens_, static_cast<long long>(vocab_.size()), static_cast<long long>(trigrams_.size())};
  }

 private:
  long long tokens_ = 0;
  std::set<std::string> vocab_;
  std::set<std::string> trigrams_;
};

}  // namespace

void fill_averages(CorpusStats& s) {
  if (s.total_dialogues == 0) {
    s = CorpusStats{};
    return;
  }
  s.avg_turns = static_cast<double>(s.total_turns) / static_cast<double>(s.total_dialogues);
  s.avg_domains = static_cast<double>(s.total_domains) / static_cast<double>(s.total_dialogues);
}

CorpusStats compute_stats(const std::vector<Dialogue>& corpus) {
  CorpusStats s;
  Counter both, sys;
  for (const auto& d : corpus) {
    s.total_dialogues++;
    s.total_turns += static_cast<long long>(d.turns.size());
    for (const auto& dom : d.final_goal.domains()) {
      if (dom != kGeneral) s.total_domains++;
    }
    for (const auto& t : d.turns) {
      both.add(t.user);
      both.add(t.system_response);
      sys.add(t.system_response);
    }
  }
  s.both = both.counts();
  s.system = sys.counts();
  fill_averages(s);
  return s;
}

double combined_score(double inform, double success, double bleu) {
  if (inform < 0 || success < 0 || bleu < 0) throw Error("combined score inputs must be non-negative");
  return bleu + 0.5 * (inform + success);
}

nlohmann::ordered_json CorpusStats::to_json() const {
  auto ng = [](const NgramCounts& c) {
    return nlohmann::ordered_json{{"tokens", c.tokens}, {"unique_tokens", c.unique_tokens},
                                  {"unique_3grams", c.unique_3grams}};
  };
  nlohmann::ordered_json j;
  j["total_dialogues"] = total_dialogues;
  j["total_turns"] = total_turns;
  j["total_domains"] = total_domains;
  j["avg_turns"] = avg_turns;
  j["avg_domains"] = avg_domains;
  j["both_speakers"] = ng(both);
  j["system_only"] = ng(system);
  return j;
}

std::string CorpusStats::table() const {
  std::ostringstream o;
  o << fmt::format("{:<20}{:>12}\n", "Total dialogues", total_dialogues);
  o << fmt::format("{:<20}{:>12}\n", "Total turns", total_turns);
  o << fmt::format("{:<20}{:>12}\n", "Total domains", total_domains);
  o << fmt::format("{:<20}{:>12.2f}\n", "Avg. turns", avg_turns);
  o << fmt::format("{:<20}{:>12.2f}\n", "Avg. domains", avg_domains);
  o << fmt::format("{:<20}{:>12}{:>12}\n", "", "both", "system");
  o << fmt::format("{:<20}{:>12}{:>12}\n", "Uniq. tokens", both.unique_tokens, system.unique_tokens);
  o << fmt::format("{:<20}{:>12}{:>12}\n", "Uniq. 3-grams", both.unique_3grams, system.unique_3grams);
  return o.str();
}

}  // namespace dialogic
