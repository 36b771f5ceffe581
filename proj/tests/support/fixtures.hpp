#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "dialogic/corpus.hpp"
#include "dialogic/database.hpp"
#include "dialogic/ontology.hpp"

namespace dialogic::testing {

inline std::filesystem::path data_path(const std::string& rel) { return std::filesystem::path(DIALOGIC_DATA_DIR) / rel; }

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline const Ontology& ontology() {
  static const Ontology o = Ontology::load(data_path("ontology.json"));
  return o;
}

inline const SeedDataset& seeds() {
  static const SeedDataset s = load_seed_corpus(data_path("seeds/seeds.json"), ontology());
  return s;
}

inline const EntityDb& db() {
  static const EntityDb d = EntityDb::load_dir(data_path("db"), ontology());
  return d;
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("dialogic_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace dialogic::testing
