#include "tmat/hierarchy.hpp"

#include <utility>

#include "tmat/error.hpp"
#include "tmat/parallel.hpp"
#include "tmat/window.hpp"

namespace tmat {

std::string_view dist_quantity_name(DistQuantity q) {
  switch (q) {
    case DistQuantity::SourcePackets: return "source_packets";
    case DistQuantity::SourceFanout: return "source_fanout";
    case DistQuantity::LinkPackets: return "link_packets";
    case DistQuantity::DestinationPackets: return "destination_packets";
    case DistQuantity::DestinationFanin: return "destination_fanin";
  }
  return "unknown";
}

void HierarchyConfig::validate() const {
  if (leaf_log2 < 1 || leaf_log2 > top_log2 || top_log2 > 40)
    throw UsageError("hierarchy bounds must satisfy 0 < leaf_log2 <= top_log2 <= 40");
  if (workers < 1) throw UsageError("worker count must be at least 1");
}

namespace {

std::array<BinnedDistribution, kNumDistQuantities> window_distributions(
    const DegreeVectors& v) {
  std::vector<Count> link_counts;
  link_counts.reserve(v.link_packets.size());
  for (const Entry& e : v.link_packets) link_counts.push_back(e.count);

  return {
      binned_distribution(degree_histogram(v.source_packets)),
      binned_distribution(degree_histogram(v.source_fanout)),
      binned_distribution(degree_histogram(link_counts)),
      binned_distribution(degree_histogram(v.destination_packets)),
      binned_distribution(degree_histogram(v.destination_fanin)),
  };
}

LevelResult level_result(const std::vector<TrafficMatrix>& windows, int level,
                         std::uint64_t n_v, const HierarchyConfig& cfg) {
  LevelResult r;
  r.level = level;
  r.n_v = n_v;
  r.n_windows = windows.size();
  if (windows.empty() || (!cfg.with_summaries && !cfg.with_distributions))
    return r;

  if (cfg.with_summaries) r.summaries.resize(windows.size());
  std::vector<std::array<BinnedDistribution, kNumDistQuantities>> per_window(
      cfg.with_distributions ? windows.size() : 0);

  parallel_for(windows.size(), cfg.workers, [&](std::size_t i) {
    const DegreeVectors v = degree_vectors(windows[i]);
    if (cfg.with_summaries) r.summaries[i] = window_summary(windows[i], v);
    if (cfg.with_distributions) per_window[i] = window_distributions(v);
  });

  if (cfg.with_distributions) {
    for (std::size_t q = 0; q < kNumDistQuantities; ++q) {
      std::vector<BinnedDistribution> series;
      series.reserve(windows.size());
      for (const auto& w : per_window) series.push_back(w[q]);
      r.distributions[q] = distribution_stats(series);
    }
  }
  return r;
}

}  // namespace

std::vector<LevelResult> build_hierarchy(std::vector<TrafficMatrix> leaves,
                                         const HierarchyConfig& cfg) {
  cfg.validate();
  const Count leaf_total = Count{1} << cfg.leaf_log2;
  for (std::size_t i = 0; i < leaves.size(); ++i)
    if (leaves[i].total() != leaf_total)
      throw DataError("leaf " + std::to_string(i) + " holds " +
                      std::to_string(leaves[i].total()) +
                      " packets, expected 2^" + std::to_string(cfg.leaf_log2));

  std::vector<LevelResult> results;
  std::vector<TrafficMatrix> current = std::move(leaves);
  const int n_levels = cfg.top_log2 - cfg.leaf_log2 + 1;

  for (int level = 0; level < n_levels && !current.empty(); ++level) {
    const std::uint64_t n_v = std::uint64_t{1} << (cfg.leaf_log2 + level);
    results.push_back(level_result(current, level, n_v, cfg));

    const std::size_t n_pairs = current.size() / 2;
    const bool last_level = level + 1 == n_levels || n_pairs == 0;
    if (last_level) break;
    results.back().dropped_to_next = current.size() % 2;

    // Fixed left/right pairing by index keeps the reduction deterministic
    // under any worker count.
    std::vector<TrafficMatrix> next(n_pairs);
    parallel_for(n_pairs, cfg.workers, [&](std::size_t i) {
      next[i] = merge(current[2 * i], current[2 * i + 1]);
    });
    current = std::move(next);
  }
  return results;
}

WindowSeriesResult window_series(std::vector<PacketRecord> records,
                                 const HierarchyConfig& cfg) {
  cfg.validate();
  PartitionResult parts =
      partition_windows(std::move(records), std::uint64_t{1} << cfg.leaf_log2);

  std::vector<TrafficMatrix> leaves(parts.windows.size());
  parallel_for(parts.windows.size(), cfg.workers, [&](std::size_t i) {
    leaves[i] = TrafficMatrix::from_packets(parts.windows[i]);
  });

  WindowSeriesResult out;
  out.remainder = parts.remainder;
  out.levels = build_hierarchy(std::move(leaves), cfg);
  return out;
}

}  // namespace tmat
