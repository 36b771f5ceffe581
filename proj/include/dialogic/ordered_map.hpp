#pragma once

#include <algorithm>
#include <utility>
#include <vector>

namespace dialogic {

/// Small insertion-ordered map. Lookups are linear; annotation maps hold a
/// handful of entries so this beats a node-based map and keeps serialization
/// order deterministic.
template <class K, class V>
class OrderedMap {
 public:
  using value_type = std::pair<K, V>;
  using iterator = typename std::vector<value_type>::iterator;
  using const_iterator = typename std::vector<value_type>::const_iterator;

  template <class Q>
  V* find(const Q& key) {
    auto it = locate(key);
    return it == items_.end() ? nullptr : &it->second;
  }
  template <class Q>
  const V* find(const Q& key) const {
    auto it = std::find_if(items_.begin(), items_.end(),
                           [&](const value_type& kv) { return kv.first == key; });
    return it == items_.end() ? nullptr : &it->second;
  }
  template <class Q>
  bool contains(const Q& key) const {
    return find(key) != nullptr;
  }

  /// Returns the existing value or appends a default-constructed one.
  V& operator[](const K& key) {
    auto it = locate(key);
    if (it != items_.end()) return it->second;
    items_.emplace_back(key, V{});
    return items_.back().second;
  }

  /// Inserts or overwrites in place (an existing key keeps its position).
  void insert_or_assign(const K& key, V value) { (*this)[key] = std::move(value); }

  template <class Q>
  bool erase(const Q& key) {
    auto it = locate(key);
    if (it == items_.end()) return false;
    items_.erase(it);
    return true;
  }

  void truncate(std::size_t n) {
    if (items_.size() > n) items_.resize(n);
  }

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  iterator begin() { return items_.begin(); }
  iterator end() { return items_.end(); }
  const_iterator begin() const { return items_.begin(); }
  const_iterator end() const { return items_.end(); }

  friend bool operator==(const OrderedMap& a, const OrderedMap& b) { return a.items_ == b.items_; }

 private:
  template <class Q>
  iterator locate(const Q& key) {
    return std::find_if(items_.begin(), items_.end(),
                        [&](const value_type& kv) { return kv.first == key; });
  }

  std::vector<value_type> items_;
};

}  // namespace dialogic
