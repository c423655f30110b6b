#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tmat/record.hpp"
#include "tmat/sparse_vector.hpp"
#include "tmat/window.hpp"

namespace tmat {

// One nonzero of a traffic matrix.
struct Entry {
  NodeId row = 0;
  NodeId col = 0;
  Count count = 0;

  friend bool operator==(const Entry&, const Entry&) = default;
};

// Window and timestamp coverage of a matrix. Zeroed for an empty matrix.
struct MatrixMeta {
  std::uint64_t window_first = 0;
  std::uint64_t window_last = 0;
  std::uint64_t ts_min = 0;
  std::uint64_t ts_max = 0;

  friend bool operator==(const MatrixMeta&, const MatrixMeta&) = default;
};

// Hypersparse packet-count matrix over the full 64-bit identifier space.
// Stored as row-major sorted triples; storage and all operations scale with
// the number of nonzeros, never with the identifier range.
class TrafficMatrix {
 public:
  TrafficMatrix() = default;

  // Counts (src, dst) pair multiplicities over a window.
  static TrafficMatrix from_packets(const LeafWindow& window);

  // Builds from loose (row, col) pairs; duplicates accumulate.
  static TrafficMatrix from_pairs(std::span<const std::pair<NodeId, NodeId>> pairs);

  // Builds from triples with arbitrary order and possible duplicate keys
  // (their counts accumulate). Zero-count triples are rejected.
  static TrafficMatrix from_triples(std::vector<Entry> triples,
                                    MatrixMeta meta = {});

  // Adopts entries already sorted by (row, col) with unique keys and positive
  // counts; validates in one pass. Used by the .tmx decoder.
  static TrafficMatrix from_sorted_unique(std::vector<Entry> entries,
                                          MatrixMeta meta = {});

  std::size_t nnz() const { return entries_.size(); }
  Count total() const { return total_; }
  Count max_value() const;

  SparseVector row_sums() const;      // packets per source
  SparseVector col_sums() const;      // packets per destination
  SparseVector row_support() const;   // fan-out per source
  SparseVector col_support() const;   // fan-in per destination

  const std::vector<Entry>& entries() const { return entries_; }
  const MatrixMeta& meta() const { return meta_; }
  void set_meta(const MatrixMeta& m) { meta_ = m; }

  friend bool operator==(const TrafficMatrix&, const TrafficMatrix&) = default;

 private:
  std::vector<Entry> entries_;  // sorted by (row, col), counts > 0
  Count total_ = 0;
  MatrixMeta meta_;

  friend TrafficMatrix merge(const TrafficMatrix& a, const TrafficMatrix& b);
};

// Entrywise sum by a single pass over both sorted triple runs. Count overflow
// raises DataError.
TrafficMatrix merge(const TrafficMatrix& a, const TrafficMatrix& b);

inline std::size_t nnz(const TrafficMatrix& a) { return a.nnz(); }
inline Count total(const TrafficMatrix& a) { return a.total(); }
inline Count max_value(const TrafficMatrix& a) { return a.max_value(); }

}  // namespace tmat
