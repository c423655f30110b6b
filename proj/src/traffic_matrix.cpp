#include "tmat/traffic_matrix.hpp"

#include <algorithm>
#include <unordered_map>

#include "tmat/error.hpp"

namespace tmat {

namespace {

inline Count checked_add(Count a, Count b) {
  Count sum;
  if (__builtin_add_overflow(a, b, &sum))
    throw DataError("64-bit packet count overflow");
  return sum;
}

inline bool row_col_less(const Entry& a, const Entry& b) {
  return a.row != b.row ? a.row < b.row : a.col < b.col;
}

// Combines coverage metadata; an empty side contributes nothing.
MatrixMeta merge_meta(const TrafficMatrix& a, const TrafficMatrix& b) {
  if (a.total() == 0) return b.meta();
  if (b.total() == 0) return a.meta();
  MatrixMeta m;
  m.window_first = std::min(a.meta().window_first, b.meta().window_first);
  m.window_last = std::max(a.meta().window_last, b.meta().window_last);
  m.ts_min = std::min(a.meta().ts_min, b.meta().ts_min);
  m.ts_max = std::max(a.meta().ts_max, b.meta().ts_max);
  return m;
}

SparseVector sorted_map_to_vector(std::unordered_map<NodeId, Count>&& map) {
  std::vector<SparseVector::Item> items(map.begin(), map.end());
  return SparseVector::from_items(std::move(items));
}

}  // namespace

TrafficMatrix TrafficMatrix::from_packets(const LeafWindow& window) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(window.records.size());
  MatrixMeta meta;
  bool first = true;
  for (const PacketRecord& r : window.records) {
    pairs.emplace_back(r.src, r.dst);
    if (first) {
      meta.ts_min = meta.ts_max = r.timestamp;
      first = false;
    } else {
      meta.ts_min = std::min(meta.ts_min, r.timestamp);
      meta.ts_max = std::max(meta.ts_max, r.timestamp);
    }
  }
  TrafficMatrix a = from_pairs(pairs);
  if (a.total_ > 0) {
    meta.window_first = meta.window_last = window.index;
    a.meta_ = meta;
  }
  return a;
}

TrafficMatrix TrafficMatrix::from_pairs(
    std::span<const std::pair<NodeId, NodeId>> pairs) {
  std::vector<std::pair<NodeId, NodeId>> sorted(pairs.begin(), pairs.end());
  std::sort(sorted.begin(), sorted.end());

  TrafficMatrix a;
  a.entries_.reserve(sorted.size());
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    a.entries_.push_back(
        Entry{sorted[i].first, sorted[i].second, static_cast<Count>(j - i)});
    i = j;
  }
  a.total_ = sorted.size();
  return a;
}

TrafficMatrix TrafficMatrix::from_triples(std::vector<Entry> triples,
                                          MatrixMeta meta) {
  for (const Entry& e : triples)
    if (e.count == 0) throw DataError("traffic matrix entries must be positive");
  std::sort(triples.begin(), triples.end(), row_col_less);

  TrafficMatrix a;
  a.entries_.reserve(triples.size());
  for (std::size_t i = 0; i < triples.size();) {
    Entry e = triples[i];
    std::size_t j = i + 1;
    while (j < triples.size() && triples[j].row == e.row &&
           triples[j].col == e.col) {
      e.count = checked_add(e.count, triples[j].count);
      ++j;
    }
    a.entries_.push_back(e);
    a.total_ = checked_add(a.total_, e.count);
    i = j;
  }
  if (a.total_ > 0) a.meta_ = meta;
  return a;
}

TrafficMatrix TrafficMatrix::from_sorted_unique(std::vector<Entry> entries,
                                                MatrixMeta meta) {
  TrafficMatrix a;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].count == 0)
      throw DataError("traffic matrix entries must be positive");
    if (i > 0 && !row_col_less(entries[i - 1], entries[i]))
      throw DataError("traffic matrix entries must be sorted and unique");
    a.total_ = checked_add(a.total_, entries[i].count);
  }
  a.entries_ = std::move(entries);
  if (a.total_ > 0) a.meta_ = meta;
  return a;
}

Count TrafficMatrix::max_value() const {
  Count m = 0;
  for (const Entry& e : entries_) m = std::max(m, e.count);
  return m;
}

SparseVector TrafficMatrix::row_sums() const {
  SparseVector v;
  for (std::size_t i = 0; i < entries_.size();) {
    const NodeId row = entries_[i].row;
    Count sum = 0;
    while (i < entries_.size() && entries_[i].row == row)
      sum = checked_add(sum, entries_[i++].count);
    v.push_sorted(row, sum);
  }
  return v;
}

SparseVector TrafficMatrix::row_support() const {
  SparseVector v;
  for (std::size_t i = 0; i < entries_.size();) {
    const NodeId row = entries_[i].row;
    Count distinct = 0;
    while (i < entries_.size() && entries_[i].row == row) {
      ++distinct;
      ++i;
    }
    v.push_sorted(row, distinct);
  }
  return v;
}

SparseVector TrafficMatrix::col_sums() const {
  std::unordered_map<NodeId, Count> acc;
  acc.reserve(entries_.size());
  for (const Entry& e : entries_) acc[e.col] += e.count;
  return sorted_map_to_vector(std::move(acc));
}

SparseVector TrafficMatrix::col_support() const {
  std::unordered_map<NodeId, Count> acc;
  acc.reserve(entries_.size());
  for (const Entry& e : entries_) acc[e.col] += 1;
  return sorted_map_to_vector(std::move(acc));
}

TrafficMatrix merge(const TrafficMatrix& a, const TrafficMatrix& b) {
  TrafficMatrix out;
  out.entries_.reserve(a.entries_.size() + b.entries_.size());
  std::size_t i = 0, j = 0;
  while (i < a.entries_.size() && j < b.entries_.size()) {
    const Entry& ea = a.entries_[i];
    const Entry& eb = b.entries_[j];
    if (row_col_less(ea, eb)) {
      out.entries_.push_back(ea);
      ++i;
    } else if (row_col_less(eb, ea)) {
      out.entries_.push_back(eb);
      ++j;
    } else {
      out.entries_.push_back(Entry{ea.row, ea.col, checked_add(ea.count, eb.count)});
      ++i;
      ++j;
    }
  }
  out.entries_.insert(out.entries_.end(), a.entries_.begin() + static_cast<std::ptrdiff_t>(i),
                      a.entries_.end());
  out.entries_.insert(out.entries_.end(), b.entries_.begin() + static_cast<std::ptrdiff_t>(j),
                      b.entries_.end());
  out.total_ = checked_add(a.total_, b.total_);
  out.meta_ = merge_meta(a, b);
  return out;
}

}  // namespace tmat
