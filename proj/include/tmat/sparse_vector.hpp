#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "tmat/record.hpp"

namespace tmat {

// Id-keyed counts with no stored zeros, kept sorted by id.
class SparseVector {
 public:
  using Item = std::pair<NodeId, Count>;

  SparseVector() = default;

  // Takes (id, count) pairs with positive counts and unique ids in any order.
  static SparseVector from_items(std::vector<Item> items) {
    std::sort(items.begin(), items.end());
    SparseVector v;
    v.items_ = std::move(items);
    return v;
  }

  void push_sorted(NodeId id, Count count) { items_.emplace_back(id, count); }

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  Count at(NodeId id) const {
    auto it = std::lower_bound(items_.begin(), items_.end(), id,
                               [](const Item& a, NodeId b) { return a.first < b; });
    return (it != items_.end() && it->first == id) ? it->second : 0;
  }

  Count sum() const {
    Count s = 0;
    for (const Item& it : items_) s += it.second;
    return s;
  }

  Count max_value() const {
    Count m = 0;
    for (const Item& it : items_) m = std::max(m, it.second);
    return m;
  }

  const std::vector<Item>& items() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::vector<Item> items_;
};

}  // namespace tmat
