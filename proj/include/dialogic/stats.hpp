#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dialogic/types.hpp"

namespace dialogic {

struct NgramCounts {
  long long tokens = 0;          ///< running token count
  long long unique_tokens = 0;
  long long unique_3grams = 0;
};

struct CorpusStats {
  long long total_dialogues = 0;
  long long total_turns = 0;    ///< user-system pairs
  long long total_domains = 0;  ///< distinct goal domains per dialogue, general excluded
  double avg_turns = 0.0;
  double avg_domains = 0.0;
  NgramCounts both;    ///< user and system utterances
  NgramCounts system;  ///< system responses only

  nlohmann::ordered_json to_json() const;
  /// Plain text table for terminals.
  std::string table() const;
};

/// Whitespace tokens of the lowercased text; 3-grams never cross utterances.
CorpusStats compute_stats(const std::vector<Dialogue>& corpus);

/// Averages from totals; zero dialogues give zeros.
void fill_averages(CorpusStats& s);

/// BLEU + 0.5 * (Inform + Success).
double combined_score(double inform, double success, double bleu);

}  // namespace dialogic
