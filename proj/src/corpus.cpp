#include "dialogic/corpus.hpp"

#include <fstream>

#include "dialogic/error.hpp"
#include "dialogic/text.hpp"

namespace dialogic {

namespace {

using json = nlohmann::ordered_json;

class Reader {
 public:
  Reader(const Ontology& o, ValidationMode mode, std::vector<CorpusIssue>& issues)
      : ontology_(o), mode_(mode), issues_(issues) {}

  Dialogue dialogue(const json& j, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "dialogue must be an object");
    Dialogue d;
    d.id = string_field(j, "id", path);
    id_ = d.id;
    turn_ = -1;
    d.initial_goal = UserGoal(slot_map(required(j, "goal", path), path + "/goal"));
    d.final_goal = j.contains("final_goal") ? UserGoal(slot_map(j.at("final_goal"), path + "/final_goal"))
                                            : d.initial_goal;
    if (j.contains("source")) {
      auto src = parse_source(string_field(j, "source", path));
      if (!src) throw SchemaError(path + "/source", "unknown source tag");
      d.source = *src;
    }
    const json& turns = required(j, "turns", path);
    if (!turns.is_array()) throw SchemaError(path + "/turns", "expected an array");
    for (std::size_t t = 0; t < turns.size(); ++t) {
      turn_ = static_cast<int>(t);
      d.turns.push_back(turn(turns[t], path + "/turns/" + std::to_string(t)));
    }
    return d;
  }

 private:
  const json& required(const json& j, const char* key, const std::string& path) {
    if (!j.contains(key)) throw SchemaError(path + "/" + key, "missing required field");
    return j.at(key);
  }

  std::string string_field(const json& j, const char* key, const std::string& path) {
    const json& v = required(j, key, path);
    if (!v.is_string()) throw SchemaError(path + "/" + key, "expected a string");
    return v.get<std::string>();
  }

  void violation(const std::string& msg) {
    std::string where = "dialogue " + id_ + (turn_ >= 0 ? " turn " + std::to_string(turn_) : " goal");
    if (mode_ == ValidationMode::Strict) throw OntologyError(where + ": " + msg);
    issues_.push_back({id_, turn_, msg});
  }

  SlotMap slot_map(const json& j, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected {domain: {slot: value}}");
    SlotMap out;
    for (auto d = j.begin(); d != j.end(); ++d) {
      const std::string domain = text::normalize_value(d.key());
      if (!d.value().is_object()) throw SchemaError(path + "/" + d.key(), "expected {slot: value}");
      bool kept_any = false;
      for (auto s = d.value().begin(); s != d.value().end(); ++s) {
        if (!s.value().is_string()) throw SchemaError(path + "/" + d.key() + "/" + s.key(), "expected a string value");
        SlotTriple t{domain, canonical_slot(s.key()), text::normalize_value(s.value().get<std::string>())};
        if (auto err = ontology_.check_triple(t); !err.empty()) {
          violation(err);
          continue;
        }
        out.add(t);
        kept_any = true;
      }
      if (d.value().empty()) {
        if (auto err = ontology_.check_triple({domain, std::string(kNone), std::string(kNone)}); !err.empty()) {
          violation(err);
          continue;
        }
        out.add_domain(domain);
      } else if (!kept_any) {
        continue;
      }
    }
    return out;
  }

  DialogAct act(const json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected [[domain, act, slot], ...]");
    DialogAct a;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const json& t = j[i];
      std::string p = path + "/" + std::to_string(i);
      if (!t.is_array() || t.size() != 3 || !t[0].is_string() || !t[1].is_string() || !t[2].is_string()) {
        throw SchemaError(p, "expected [domain, act, slot]");
      }
      ActTriple at{text::normalize_value(t[0].get<std::string>()), text::normalize_value(t[1].get<std::string>()),
                   canonical_slot(t[2].get<std::string>())};
      if (at.slot.empty()) at.slot = std::string(kNone);
      if (auto err = ontology_.check_act_triple(at); !err.empty()) {
        violation(err);
        continue;
      }
      a.triples.push_back(std::move(at));
    }
    return a;
  }

  Turn turn(const json& j, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "turn must be an object");
    Turn t;
    t.user = text::normalize_text(string_field(j, "user", path));
    t.belief = TurnBelief(slot_map(required(j, "belief", path), path + "/belief"));
    t.gpt_belief = j.contains("gpt_belief") ? TurnBelief(slot_map(j.at("gpt_belief"), path + "/gpt_belief")) : t.belief;
    if (j.contains("aux_belief")) t.aux_belief = TurnBelief(slot_map(j.at("aux_belief"), path + "/aux_belief"));
    if (j.contains("db")) {
      const json& db = j.at("db");
      if (!db.is_object()) throw SchemaError(path + "/db", "expected an object");
      t.db.domain = text::normalize_value(string_field(db, "domain", path + "/db"));
      const json& count = required(db, "count", path + "/db");
      if (!count.is_number_integer() || count.get<int>() < 0) {
        throw SchemaError(path + "/db/count", "expected a nonnegative integer");
      }
      t.db.count = count.get<int>();
      auto bucket = parse_bucket(string_field(db, "bucket", path + "/db"));
      if (!bucket) throw SchemaError(path + "/db/bucket", "unknown bucket token");
      t.db.bucket = *bucket;
    }
    t.act = act(required(j, "act", path), path + "/act");
    t.gpt_act = j.contains("gpt_act") ? act(j.at("gpt_act"), path + "/gpt_act") : t.act;
    t.system_response = text::normalize_text(string_field(j, "resp", path));
    return t;
  }

  const Ontology& ontology_;
  ValidationMode mode_;
  std::vector<CorpusIssue>& issues_;
  std::string id_;
  int turn_ = -1;
};

}  // namespace

LoadedCorpus corpus_from_json(const nlohmann::ordered_json& j, const Ontology& ontology, ValidationMode mode) {
  if (!j.is_object() || !j.contains("dialogues")) throw SchemaError("/dialogues", "missing required field");
  const json& list = j.at("dialogues");
  if (!list.is_array()) throw SchemaError("/dialogues", "expected an array");
  LoadedCorpus out;
  Reader reader(ontology, mode, out.issues);
  for (std::size_t i = 0; i < list.size(); ++i) {
    out.dialogues.push_back(reader.dialogue(list[i], "/dialogues/" + std::to_string(i)));
  }
  return out;
}

LoadedCorpus load_corpus(const std::filesystem::path& path, const Ontology& ontology, ValidationMode mode) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus file '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
  return corpus_from_json(j, ontology, mode);
}

SeedDataset load_seed_corpus(const std::filesystem::path& path, const Ontology& ontology) {
  return load_corpus(path, ontology, ValidationMode::Strict).dialogues;
}

nlohmann::ordered_json slot_map_to_json(const SlotMap& m) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [domain, slots] : m) {
    nlohmann::ordered_json d = nlohmann::ordered_json::object();
    for (const auto& [slot, value] : slots) d[slot] = value;
    j[domain] = std::move(d);
  }
  return j;
}

nlohmann::ordered_json act_to_json(const DialogAct& a) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& t : a.triples) j.push_back({t.domain, t.act, t.slot});
  return j;
}

nlohmann::ordered_json corpus_to_json(const std::vector<Dialogue>& dialogues) {
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& d : dialogues) {
    nlohmann::ordered_json jd;
    jd["id"] = d.id;
    jd["source"] = std::string(to_string(d.source));
    jd["goal"] = slot_map_to_json(d.initial_goal);
    jd["final_goal"] = slot_map_to_json(d.final_goal);
    nlohmann::ordered_json turns = nlohmann::ordered_json::array();
    for (const auto& t : d.turns) {
      nlohmann::ordered_json jt;
      jt["user"] = t.user;
      jt["belief"] = slot_map_to_json(t.belief);
      jt["gpt_belief"] = slot_map_to_json(t.gpt_belief);
      jt["aux_belief"] = slot_map_to_json(t.aux_belief);
      jt["db"] = {{"domain", t.db.domain}, {"count", t.db.count}, {"bucket", std::string(to_string(t.db.bucket))}};
      jt["act"] = act_to_json(t.act);
      jt["gpt_act"] = act_to_json(t.gpt_act);
      jt["resp"] = t.system_response;
      turns.push_back(std::move(jt));
    }
    jd["turns"] = std::move(turns);
    list.push_back(std::move(jd));
  }
  nlohmann::ordered_json j;
  j["dialogues"] = std::move(list);
  return j;
}

void save_corpus(const std::vector<Dialogue>& dialogues, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write corpus file '" + path.string() + "'");
  out << corpus_to_json(dialogues).dump(1) << '\n';
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

const Dialogue* find_dialogue(const std::vector<Dialogue>& corpus, std::string_view id) {
  for (const auto& d : corpus) {
    if (d.id == id) return &d;
  }
  return nullptr;
}

}  // namespace dialogic
