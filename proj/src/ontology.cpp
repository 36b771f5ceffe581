#include "dialogic/ontology.hpp"

#include <algorithm>
#include <fstream>

#include "dialogic/error.hpp"
#include "dialogic/text.hpp"

namespace dialogic {

namespace {

struct Alias {
  std::string_view from;
  std::string_view to;
};

constexpr Alias kSlotAliases[] = {
    {"book stay", "stay"},     {"bookstay", "stay"},     {"book people", "people"},
    {"bookpeople", "people"},  {"book day", "day"},      {"bookday", "day"},
    {"book time", "time"},     {"booktime", "time"},     {"arriveby", "arrive"},
    {"arrive by", "arrive"},   {"leaveat", "leave"},     {"leave at", "leave"},
    {"price range", "pricerange"}, {"star", "stars"},    {"trainid", "id"},
    {"train id", "id"},        {"duration", "time"},     {"ref", "reference"},
};

std::vector<std::string> string_list(const nlohmann::ordered_json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) throw SchemaError(path + "/" + std::to_string(i), "expected a string");
    out.push_back(text::normalize_value(j[i].get<std::string>()));
  }
  return out;
}

}  // namespace

bool is_act_type(std::string_view s) {
  return std::find(kActTypes.begin(), kActTypes.end(), s) != kActTypes.end();
}

std::string canonical_slot(std::string_view slot) {
  std::string s = text::normalize_value(slot);
  for (const auto& a : kSlotAliases) {
    if (a.from == s) return std::string(a.to);
  }
  return s;
}

bool DomainSchema::has_slot(std::string_view slot) const {
  return is_informable(slot) || std::find(extra.begin(), extra.end(), slot) != extra.end();
}

bool DomainSchema::bookable() const { return permits("offerbook") || permits("offerbooked"); }

Ontology Ontology::from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw SchemaError("", "ontology must be an object of domains");
  Ontology o;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string domain = text::normalize_value(it.key());
    const std::string path = "/" + it.key();
    const auto& d = it.value();
    if (!d.is_object()) throw SchemaError(path, "domain entry must be an object");
    if (o.domains_.contains(domain)) throw OntologyError("duplicate domain '" + domain + "'");
    DomainSchema schema;
    if (d.contains("informable")) {
      const auto& inf = d.at("informable");
      if (!inf.is_object()) throw SchemaError(path + "/informable", "expected an object");
      for (auto s = inf.begin(); s != inf.end(); ++s) {
        std::string slot = canonical_slot(s.key());
        if (schema.informable.contains(slot)) {
          throw OntologyError("duplicate slot '" + domain + "." + slot + "'");
        }
        schema.informable.insert_or_assign(slot, string_list(s.value(), path + "/informable/" + s.key()));
      }
    }
    if (d.contains("extra")) {
      for (auto& s : string_list(d.at("extra"), path + "/extra")) {
        s = canonical_slot(s);
        if (schema.has_slot(s)) throw OntologyError("duplicate slot '" + domain + "." + s + "'");
        schema.extra.push_back(s);
      }
    }
    if (d.contains("requestable")) {
      for (auto& s : string_list(d.at("requestable"), path + "/requestable")) {
        s = canonical_slot(s);
        if (!schema.has_slot(s)) {
          throw OntologyError("requestable slot '" + domain + "." + s + "' is not in the domain's slot universe");
        }
        schema.requestable.insert(s);
      }
    }
    if (d.contains("acts")) {
      for (auto& a : string_list(d.at("acts"), path + "/acts")) {
        if (!is_act_type(a)) throw OntologyError("unknown act type '" + a + "' in domain '" + domain + "'");
        schema.acts.insert(a);
      }
    }
    if (d.contains("queryable")) {
      if (!d.at("queryable").is_boolean()) throw SchemaError(path + "/queryable", "expected a boolean");
      schema.queryable = d.at("queryable").get<bool>();
    }
    o.domains_.insert_or_assign(domain, std::move(schema));
  }
  return o;
}

Ontology Ontology::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open ontology file '" + path.string() + "'");
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::ordered_json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON in ontology: ") + e.what());
  }
  return from_json(j);
}

nlohmann::ordered_json Ontology::to_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [domain, s] : domains_) {
    nlohmann::ordered_json d;
    d["informable"] = nlohmann::ordered_json::object();
    for (const auto& [slot, values] : s.informable) d["informable"][slot] = values;
    d["extra"] = s.extra;
    d["requestable"] = std::vector<std::string>(s.requestable.begin(), s.requestable.end());
    d["acts"] = std::vector<std::string>(s.acts.begin(), s.acts.end());
    d["queryable"] = s.queryable;
    j[domain] = std::move(d);
  }
  return j;
}

const DomainSchema& Ontology::at(std::string_view domain) const {
  const DomainSchema* d = find(domain);
  if (!d) throw OntologyError("unknown domain '" + std::string(domain) + "'");
  return *d;
}

bool Ontology::permits_act(std::string_view domain, std::string_view act) const {
  const DomainSchema* d = find(domain);
  return d && d->permits(act);
}

bool Ontology::act_slot_valid(std::string_view domain, std::string_view slot) const {
  if (slot == kNone) return true;
  const DomainSchema* d = find(domain);
  if (!d) return false;
  if (domain == kGeneral) return false;
  return slot == kChoiceSlot || d->has_slot(slot);
}

bool Ontology::knows_slot(std::string_view slot) const {
  if (slot == kNone || slot == kChoiceSlot) return true;
  return std::any_of(domains_.begin(), domains_.end(),
                     [&](const auto& kv) { return kv.second.has_slot(slot); });
}

std::string Ontology::check_triple(const SlotTriple& t) const {
  const DomainSchema* d = find(t.domain);
  if (!d) return "unknown domain '" + t.domain + "'";
  if (t.slot == kNone) return {};
  if (!d->has_slot(t.slot)) return "unknown slot '" + t.domain + "." + t.slot + "'";
  if (t.value.empty()) return "empty value for '" + t.domain + "." + t.slot + "'";
  return {};
}

std::string Ontology::check_act_triple(const ActTriple& t) const {
  const DomainSchema* d = find(t.domain);
  if (!d) return "unknown domain '" + t.domain + "'";
  if (!is_act_type(t.act)) return "unknown act type '" + t.act + "'";
  if (!d->permits(t.act)) return "act '" + t.act + "' not permitted in domain '" + t.domain + "'";
  if (!knows_slot(t.slot)) return "unknown act slot '" + t.domain + "." + t.slot + "'";
  return {};
}

}  // namespace dialogic
