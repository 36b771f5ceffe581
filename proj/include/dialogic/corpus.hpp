#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "dialogic/ontology.hpp"
#include "dialogic/types.hpp"

namespace dialogic {

enum class ValidationMode {
  Strict,   ///< first ontology violation throws OntologyError
  Lenient,  ///< offending triples are dropped and reported
};

struct CorpusIssue {
  std::string dialogue_id;
  int turn = -1;  ///< -1: goal level
  std::string message;
};

struct LoadedCorpus {
  SeedDataset dialogues;
  std::vector<CorpusIssue> issues;
};

LoadedCorpus load_corpus(const std::filesystem::path& path, const Ontology& ontology,
                         ValidationMode mode = ValidationMode::Strict);
LoadedCorpus corpus_from_json(const nlohmann::ordered_json& j, const Ontology& ontology,
                              ValidationMode mode = ValidationMode::Strict);

/// Strict-mode load that returns just the dialogues.
SeedDataset load_seed_corpus(const std::filesystem::path& path, const Ontology& ontology);

nlohmann::ordered_json corpus_to_json(const std::vector<Dialogue>& dialogues);
void save_corpus(const std::vector<Dialogue>& dialogues, const std::filesystem::path& path);

nlohmann::ordered_json slot_map_to_json(const SlotMap& m);
nlohmann::ordered_json act_to_json(const DialogAct& a);

const Dialogue* find_dialogue(const std::vector<Dialogue>& corpus, std::string_view id);

}  // namespace dialogic
