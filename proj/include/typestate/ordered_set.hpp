#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <set>
#include <vector>

namespace typestate {

// Set with stable insertion order. Equality ignores order.
template <typename T>
class OrderedSet {
 public:
  using value_type = T;
  using const_iterator = typename std::vector<T>::const_iterator;

  OrderedSet() = default;
  OrderedSet(std::initializer_list<T> init) {
    for (const auto& v : init) insert(v);
  }

  // Returns false if already present.
  bool insert(const T& v) {
    if (!index_.insert(v).second) return false;
    items_.push_back(v);
    return true;
  }

  void insert_all(const OrderedSet& other) {
    for (const auto& v : other) insert(v);
  }

  bool erase(const T& v) {
    if (index_.erase(v) == 0) return false;
    items_.erase(std::find(items_.begin(), items_.end(), v));
    return true;
  }

  bool contains(const T& v) const { return index_.count(v) != 0; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  const_iterator begin() const { return items_.begin(); }
  const_iterator end() const { return items_.end(); }

  const std::vector<T>& items() const { return items_; }
  const std::set<T>& sorted() const { return index_; }

  friend bool operator==(const OrderedSet& a, const OrderedSet& b) {
    return a.index_ == b.index_;
  }

 private:
  std::vector<T> items_;
  std::set<T> index_;
};

}  // namespace typestate
