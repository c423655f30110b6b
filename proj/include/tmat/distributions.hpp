#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tmat/sparse_vector.hpp"

namespace tmat {

// Exact integer histogram of a degree vector: counts[d] = number of entities
// with degree d. Degrees are positive (sparse vectors store no zeros).
class DegreeHistogram {
 public:
  using Item = std::pair<Count, Count>;  // (degree, multiplicity)

  DegreeHistogram() = default;
  explicit DegreeHistogram(std::vector<Item> sorted_items)
      : items_(std::move(sorted_items)) {}

  bool empty() const { return items_.empty(); }
  Count d_max() const { return items_.empty() ? 0 : items_.back().first; }

  // Total entity count (the distribution's normalization factor).
  Count total() const {
    Count s = 0;
    for (const Item& it : items_) s += it.second;
    return s;
  }

  const std::vector<Item>& items() const { return items_; }

  friend bool operator==(const DegreeHistogram&, const DegreeHistogram&) = default;

 private:
  std::vector<Item> items_;  // sorted by degree, multiplicities > 0
};

DegreeHistogram degree_histogram(const SparseVector& v);
DegreeHistogram degree_histogram(std::span<const Count> degrees);

// Probability mass pooled into binary logarithmic bins with edges d_i = 2^i.
// Bin 0 covers degree 1 ("leaf nodes"); bin i >= 1 covers degrees in
// (2^(i-1), 2^i]. Counts stay integral until the final normalization, so a
// bin's mass is exactly bin_count/total in double arithmetic.
struct BinnedDistribution {
  std::vector<std::uint64_t> bin_counts;  // integer mass per bin
  std::uint64_t total = 0;                // sum of bin_counts
  std::vector<double> D;                  // bin_counts[i] / total
  std::vector<double> P_at_edges;         // cumulative probability at d_i

  std::size_t n_bins() const { return bin_counts.size(); }
  static std::uint64_t bin_edge(std::size_t i) { return std::uint64_t{1} << i; }

  // Index of the bin holding degree d (d >= 1).
  static std::size_t bin_of(Count d);
};

// Empty histogram raises DataError.
BinnedDistribution binned_distribution(const DegreeHistogram& h);

// Per-bin mean and population standard deviation across windows. Shorter
// distributions are padded with empty high bins.
struct DistributionStats {
  std::vector<double> mean;
  std::vector<double> stddev;
  std::uint64_t n_windows = 0;
};

// Empty input raises DataError.
DistributionStats distribution_stats(std::span<const BinnedDistribution> dists);

}  // namespace tmat
