#include "dialogic/config.hpp"

#include <fstream>

#include "dialogic/error.hpp"

namespace dialogic {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

template <typename T>
void take(const json& j, const char* key, T& dst) {
  if (!j.contains(key)) return;
  try {
    dst = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

void take_path(const json& j, const char* key, fs::path& dst) {
  std::string s;
  take(j, key, s);
  if (!s.empty()) dst = s;
}

void merge_decode(const json& j, DecodeParams& d) {
  if (!j.is_object()) throw ConfigError("config key 'decode' must be an object");
  take(j, "temperature", d.temperature);
  take(j, "top_p", d.top_p);
  take(j, "frequency_penalty", d.frequency_penalty);
  take(j, "max_tokens", d.max_tokens);
}

}  // namespace

DecodeParams decode_preset(std::string_view name) {
  if (name == "standard") return DecodeParams::standard();
  if (name == "nucleus") return DecodeParams::nucleus();
  throw ConfigError("unknown decode preset '" + std::string(name) + "' (standard, nucleus)");
}

void RunConfig::merge_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  take_path(j, "ontology", ontology);
  take_path(j, "seeds", seeds);
  take_path(j, "db_dir", db_dir);
  take_path(j, "out", out);
  take_path(j, "trace", trace);
  if (j.contains("strategy")) {
    std::string s;
    take(j, "strategy", s);
    try {
      strategy.kind = parse_strategy(s);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }
  take(j, "n_source_dialogues", strategy.n_source_dialogues);
  take(j, "drop_probability", strategy.drop_probability);
  if (j.contains("rs_distribution")) {
    const json& rows = j.at("rs_distribution");
    if (!rows.is_array()) throw ConfigError("config key 'rs_distribution' must be an array");
    dist.rows.clear();
    for (const auto& r : rows) {
      if (!r.is_array() || r.size() != 4) throw ConfigError("rs_distribution rows are [domains, min, max, p]");
      dist.rows.push_back({r[0].get<int>(), r[1].get<int>(), r[2].get<int>(), r[3].get<double>()});
    }
  }
  if (j.contains("gen")) {
    const json& g = j.at("gen");
    take(g, "n_shots", gen.n_shots);
    take(g, "select_temperature", gen.select_temperature);
    take(g, "max_turns", gen.max_turns);
    take(g, "max_domains", gen.max_domains);
    take(g, "max_slots_per_domain", gen.max_slots_per_domain);
    take(g, "retries", gen.retries);
    take(g, "context_budget", gen.context_budget);
    if (g.contains("decode_preset")) gen.decode = decode_preset(g.at("decode_preset").get<std::string>());
    if (g.contains("decode")) merge_decode(g.at("decode"), gen.decode);
  }
  take(j, "seed", seed);
  if (j.contains("workers")) workers = j.at("workers").get<int>();
  if (j.contains("backend")) {
    const json& b = j.at("backend");
    take(b, "kind", backend.kind);
    take_path(b, "transcript", backend.transcript);
    take_path(b, "record", backend.record);
    if (b.contains("mock")) {
      if (b.at("mock").is_string()) {
        backend.mock_config = b.at("mock").get<std::string>();
      } else {
        backend.mock_inline = b.at("mock");
      }
    }
    take(b, "endpoint", backend.http.endpoint);
    take(b, "model", backend.http.model);
    take(b, "timeout_seconds", backend.http.timeout_seconds);
    take(b, "retries", backend.http.retries);
    take(b, "max_concurrency", backend.http.max_concurrency);
    take(b, "requests_per_second", backend.http.requests_per_second);
    take(b, "burst", backend.http.burst);
  }
  if (j.contains("aux")) {
    const json& a = j.at("aux");
    take(a, "kind", aux.kind);
    take(a, "command", aux.command);
    take(a, "url", aux.url);
    take(a, "timeout_seconds", aux.timeout_seconds);
  }
}

RunConfig RunConfig::from_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config: cannot open '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("--config: " + std::string(e.what()));
  }
  RunConfig c;
  c.merge_json(j);
  return c;
}

void require_file(const fs::path& p, const std::string& flag) {
  if (p.empty()) throw ConfigError(flag + " is required");
  std::error_code ec;
  if (!fs::is_regular_file(p, ec)) throw ConfigError(flag + ": no such file '" + p.string() + "'");
}

void require_dir(const fs::path& p, const std::string& flag) {
  if (p.empty()) throw ConfigError(flag + " is required");
  std::error_code ec;
  if (!fs::is_directory(p, ec)) throw ConfigError(flag + ": no such directory '" + p.string() + "'");
}

BackendPtr make_backend(const BackendConfig& cfg) {
  BackendPtr b;
  if (cfg.kind == "replay") {
    require_file(cfg.transcript, "--transcript");
    b = std::make_shared<ReplayBackend>(cfg.transcript);
  } else if (cfg.kind == "mock") {
    json spec = cfg.mock_inline;
    if (!cfg.mock_config.empty()) {
      require_file(cfg.mock_config, "--mock-config");
      std::ifstream in(cfg.mock_config);
      try {
        spec = json::parse(in);
      } catch (const json::parse_error& e) {
        throw ConfigError("--mock-config: " + std::string(e.what()));
      }
    }
    if (spec.is_null()) spec = json{{"mode", "rule"}};
    try {
      b = MockBackend::from_json(spec);
    } catch (const SchemaError& e) {
      throw ConfigError(std::string("--mock-config: ") + e.what());
    } catch (const json::exception& e) {
      throw ConfigError(std::string("--mock-config: ") + e.what());
    }
  } else if (cfg.kind == "live") {
    b = std::make_shared<HttpBackend>(cfg.http);
  } else {
    throw ConfigError("--backend must be live, replay or mock");
  }
  if (!cfg.record.empty()) b = record_transcript(std::move(b), cfg.record);
  return b;
}

std::unique_ptr<AuxPredictor> make_aux(const AuxConfig& cfg, const Ontology& ontology, const SeedDataset& seeds,
                                       const EntityDb* db) {
  if (cfg.kind == "lexical") return std::make_unique<LexicalAuxPredictor>(ontology, seeds, db);
  if (cfg.kind == "none") return std::make_unique<NullAuxPredictor>();
  if (cfg.kind == "external") {
    if (cfg.command.empty() && cfg.url.empty()) throw ConfigError("--aux external needs --aux-command or --aux-url");
    return std::make_unique<ExternalAuxPredictor>(ExternalAuxPredictor::Config{cfg.command, cfg.url, cfg.timeout_seconds},
                                                  ontology);
  }
  throw ConfigError("--aux must be lexical, external or none");
}

}  // namespace dialogic
