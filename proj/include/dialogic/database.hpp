#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dialogic/ontology.hpp"
#include "dialogic/ordered_map.hpp"
#include "dialogic/types.hpp"

namespace dialogic {

/// Count thresholds for the db_1 / db_2 / db_3 buckets.
struct BucketThresholds {
  int one = 1;   ///< count == one -> db_1
  int few = 3;   ///< one < count <= few -> db_2, above -> db_3
};

DbBucket bucketize(int count, bool queryable, const BucketThresholds& th = {});

using Entity = std::map<std::string, std::string>;
using Constraints = OrderedMap<std::string, std::string>;

/// Slots never matched against entity records (booking attributes).
bool is_booking_slot(std::string_view domain, std::string_view slot);

class EntityDb {
 public:
  EntityDb() = default;
  explicit EntityDb(const Ontology& ontology) : ontology_(&ontology) {}

  /// Reads `<domain>_db.json` for every queryable domain of the ontology.
  static EntityDb load_dir(const std::filesystem::path& dir, const Ontology& ontology);

  void add_table(const std::string& domain, std::vector<Entity> rows);

  /// Counts entities satisfying every constraint. `dontcare` matches
  /// everything, booking slots are ignored, train leave/arrive compare as
  /// times (leave >= requested, arrive <= requested). `strict` rejects slots
  /// outside the domain's slot universe.
  DbResult query(std::string_view domain, const Constraints& constraints, bool strict = false) const;
  DbResult query(std::string_view domain, const SlotMap& state, bool strict = false) const;

  const std::vector<Entity>* table(std::string_view domain) const;
  void set_thresholds(BucketThresholds th) { thresholds_ = th; }

 private:
  const Ontology* ontology_ = nullptr;
  std::map<std::string, std::vector<Entity>, std::less<>> tables_;
  /// (domain, slot, match-form value) -> row ids
  std::map<std::string, std::map<std::string, std::map<std::string, std::set<std::size_t>>>, std::less<>> index_;
  BucketThresholds thresholds_;
};

}  // namespace dialogic
