#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "tmat/distributions.hpp"
#include "tmat/quantities.hpp"
#include "tmat/traffic_matrix.hpp"

namespace tmat {

// The five per-entity quantities whose distributions are tracked per level.
enum class DistQuantity {
  SourcePackets = 0,
  SourceFanout,
  LinkPackets,
  DestinationPackets,
  DestinationFanin,
};

inline constexpr std::size_t kNumDistQuantities = 5;

std::string_view dist_quantity_name(DistQuantity q);

struct HierarchyConfig {
  int leaf_log2 = 17;
  int top_log2 = 27;
  bool with_summaries = true;
  bool with_distributions = true;
  int workers = 1;

  void validate() const;  // UsageError on bad bounds
};

// Aggregates for all windows of one level of the merge tree.
struct LevelResult {
  int level = 0;                 // 0 = leaves
  std::uint64_t n_v = 0;         // packets per window at this level
  std::uint64_t n_windows = 0;
  std::uint64_t dropped_to_next = 0;  // odd trailing window not merged upward
  std::vector<WindowSummary> summaries;
  std::array<DistributionStats, kNumDistQuantities> distributions;
};

// Pairwise binary aggregation of leaf matrices up to top_log2, with summaries
// and distributions computed at every level. Leaves must each hold exactly
// 2^leaf_log2 packets. Merge pairing is fixed by index, so results do not
// depend on worker count or scheduling.
std::vector<LevelResult> build_hierarchy(std::vector<TrafficMatrix> leaves,
                                         const HierarchyConfig& cfg);

struct WindowSeriesResult {
  std::vector<LevelResult> levels;
  std::uint64_t remainder = 0;  // records short of a full leaf window
};

// End-to-end composition: partition already-filtered records into leaf
// windows, build matrices, and aggregate. Equivalent to partition_windows +
// TrafficMatrix::from_packets + build_hierarchy.
WindowSeriesResult window_series(std::vector<PacketRecord> records,
                                 const HierarchyConfig& cfg);

}  // namespace tmat
