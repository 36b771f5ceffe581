#include "dialogic/database.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "dialogic/error.hpp"
#include "dialogic/text.hpp"

namespace dialogic {

DbBucket bucketize(int count, bool queryable, const BucketThresholds& th) {
  if (!queryable) return DbBucket::NoResult;
  if (count <= 0) return DbBucket::Zero;
  if (count <= th.one) return DbBucket::One;
  if (count <= th.few) return DbBucket::Few;
  return DbBucket::Many;
}

bool is_booking_slot(std::string_view domain, std::string_view slot) {
  if (domain == "hotel") return slot == "stay" || slot == "day" || slot == "people";
  if (domain == "restaurant") return slot == "day" || slot == "time" || slot == "people";
  if (domain == "train") return slot == "people";
  return false;
}

namespace {

int minutes(std::string_view t) {
  std::string c = text::canonical_time(t);
  return std::stoi(c.substr(0, 2)) * 60 + std::stoi(c.substr(3, 2));
}

bool time_slot(std::string_view domain, std::string_view slot) {
  return domain == "train" && (slot == "leave" || slot == "arrive");
}

}  // namespace

EntityDb EntityDb::load_dir(const std::filesystem::path& dir, const Ontology& ontology) {
  if (!std::filesystem::is_directory(dir)) throw IoError("db directory '" + dir.string() + "' not found");
  EntityDb db(ontology);
  for (const auto& [name, schema] : ontology.domains()) {
    if (!schema.queryable) continue;
    auto file = dir / (name + "_db.json");
    std::ifstream in(file);
    if (!in) throw IoError("missing db table '" + file.string() + "'");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw SchemaError(file.string(), std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_array()) throw SchemaError(file.string(), "expected an array of entities");
    std::vector<Entity> rows;
    rows.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_object()) throw SchemaError(file.string() + "/" + std::to_string(i), "expected an object");
      Entity e;
      for (auto it = j[i].begin(); it != j[i].end(); ++it) {
        e[canonical_slot(it.key())] = it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
      }
      rows.push_back(std::move(e));
    }
    db.add_table(name, std::move(rows));
  }
  return db;
}

void EntityDb::add_table(const std::string& domain, std::vector<Entity> rows) {
  auto& idx = index_[domain];
  idx.clear();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& [slot, value] : rows[i]) idx[slot][text::match_form(value)].insert(i);
  }
  tables_[domain] = std::move(rows);
}

const std::vector<Entity>* EntityDb::table(std::string_view domain) const {
  auto it = tables_.find(domain);
  return it == tables_.end() ? nullptr : &it->second;
}

DbResult EntityDb::query(std::string_view domain, const Constraints& constraints, bool strict) const {
  DbResult r;
  r.domain = std::string(domain);
  const DomainSchema* schema = ontology_ ? ontology_->find(domain) : nullptr;
  if (ontology_ && !schema) throw OntologyError("unknown domain '" + std::string(domain) + "'");
  auto tit = tables_.find(domain);
  bool queryable = schema ? schema->queryable : tit != tables_.end();
  if (!queryable || tit == tables_.end()) {
    r.bucket = DbBucket::NoResult;
    return r;
  }
  const auto& rows = tit->second;
  const auto& idx = index_.find(domain)->second;

  std::vector<char> alive(rows.size(), 1);
  for (const auto& [slot, value] : constraints) {
    if (strict && schema && !schema->has_slot(slot)) {
      throw OntologyError("unknown slot '" + std::string(domain) + "." + slot + "'");
    }
    if (value == kDontcare || value == kNone || is_booking_slot(domain, slot)) continue;
    if (time_slot(domain, slot) && text::is_time(value)) {
      int want = minutes(value);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!alive[i]) continue;
        auto f = rows[i].find(slot);
        if (f == rows[i].end() || !text::is_time(f->second)) {
          alive[i] = 0;
          continue;
        }
        int have = minutes(f->second);
        alive[i] = slot == "leave" ? have >= want : have <= want;
      }
      continue;
    }
    const std::set<std::size_t>* hits = nullptr;
    if (auto s = idx.find(slot); s != idx.end()) {
      if (auto v = s->second.find(text::match_form(value)); v != s->second.end()) hits = &v->second;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (alive[i] && (!hits || !hits->count(i))) alive[i] = 0;
    }
  }
  r.count = static_cast<int>(std::count(alive.begin(), alive.end(), 1));
  r.bucket = bucketize(r.count, true, thresholds_);
  return r;
}

DbResult EntityDb::query(std::string_view domain, const SlotMap& state, bool strict) const {
  Constraints c;
  if (const auto* slots = state.slots(domain)) {
    for (const auto& [slot, value] : *slots) c.insert_or_assign(slot, value);
  }
  return query(domain, c, strict);
}

}  // namespace dialogic
