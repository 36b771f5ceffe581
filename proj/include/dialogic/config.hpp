#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dialogic/backend.hpp"
#include "dialogic/goal_gen.hpp"
#include "dialogic/revision.hpp"
#include "dialogic/types.hpp"

namespace dialogic {

struct BackendConfig {
  std::string kind = "mock";  ///< live | replay | mock
  std::filesystem::path transcript;
  std::filesystem::path record;
  std::filesystem::path mock_config;
  nlohmann::json mock_inline;  ///< mock description given directly in the config file
  HttpConfig http;
};

struct AuxConfig {
  std::string kind = "lexical";  ///< lexical | external | none
  std::vector<std::string> command;
  std::string url;
  int timeout_seconds = 30;
};

/// Config file values merged with flag overrides.
struct RunConfig {
  std::filesystem::path ontology;
  std::filesystem::path seeds;
  std::filesystem::path db_dir;
  std::filesystem::path out;
  std::filesystem::path trace;
  GoalStrategy strategy;
  RsDistribution dist;
  GenConfig gen;
  BackendConfig backend;
  AuxConfig aux;
  std::optional<int> workers;  ///< default: backend concurrency limit
  unsigned long long seed = 0;

  /// Overlays the keys present in `j` onto this config. Throws ConfigError.
  void merge_json(const nlohmann::json& j);
  static RunConfig from_file(const std::filesystem::path& path);
};

DecodeParams decode_preset(std::string_view name);

/// Throws ConfigError naming the flag when a required input path is absent
/// or unreadable.
void require_file(const std::filesystem::path& p, const std::string& flag);
void require_dir(const std::filesystem::path& p, const std::string& flag);

/// Builds the completion backend, wrapping it in a recorder when asked.
BackendPtr make_backend(const BackendConfig& cfg);

/// Empty when the config asks for no auxiliary predictor; the caller then
/// uses a predictor that returns nothing.
std::unique_ptr<AuxPredictor> make_aux(const AuxConfig& cfg, const Ontology& ontology, const SeedDataset& seeds,
                                       const EntityDb* db);

/// Predicts nothing; revision then reduces to the filter.
class NullAuxPredictor : public AuxPredictor {
 public:
  TurnBelief predict_belief(const std::vector<Turn>&, std::string_view) override { return {}; }
  std::optional<DialogAct> predict_act(const std::vector<Turn>&, std::string_view, const TurnBelief&,
                                       const DbResult&) override {
    return std::nullopt;
  }
  std::string name() const override { return "none"; }
};

}  // namespace dialogic
