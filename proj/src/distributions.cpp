#include "tmat/distributions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "tmat/error.hpp"

namespace tmat {

namespace {

DegreeHistogram histogram_of_degrees(std::vector<Count> degrees) {
  std::sort(degrees.begin(), degrees.end());
  std::vector<DegreeHistogram::Item> items;
  for (std::size_t i = 0; i < degrees.size();) {
    std::size_t j = i;
    while (j < degrees.size() && degrees[j] == degrees[i]) ++j;
    items.emplace_back(degrees[i], static_cast<Count>(j - i));
    i = j;
  }
  return DegreeHistogram(std::move(items));
}

}  // namespace

DegreeHistogram degree_histogram(const SparseVector& v) {
  std::vector<Count> degrees;
  degrees.reserve(v.size());
  for (const auto& [id, count] : v) degrees.push_back(count);
  return histogram_of_degrees(std::move(degrees));
}

DegreeHistogram degree_histogram(std::span<const Count> degrees) {
  return histogram_of_degrees(std::vector<Count>(degrees.begin(), degrees.end()));
}

std::size_t BinnedDistribution::bin_of(Count d) {
  // bin 0 holds degree 1; bin i holds (2^(i-1), 2^i]
  return static_cast<std::size_t>(std::bit_width(d - 1));
}

BinnedDistribution binned_distribution(const DegreeHistogram& h) {
  if (h.empty())
    throw DataError("cannot bin an empty degree histogram");

  BinnedDistribution b;
  b.bin_counts.assign(BinnedDistribution::bin_of(h.d_max()) + 1, 0);
  for (const auto& [degree, n] : h.items())
    b.bin_counts[BinnedDistribution::bin_of(degree)] += n;
  for (std::uint64_t c : b.bin_counts) b.total += c;

  b.D.resize(b.bin_counts.size());
  b.P_at_edges.resize(b.bin_counts.size());
  std::uint64_t cumulative = 0;
  for (std::size_t i = 0; i < b.bin_counts.size(); ++i) {
    cumulative += b.bin_counts[i];
    b.D[i] = static_cast<double>(b.bin_counts[i]) / static_cast<double>(b.total);
    b.P_at_edges[i] =
        static_cast<double>(cumulative) / static_cast<double>(b.total);
  }
  return b;
}

DistributionStats distribution_stats(std::span<const BinnedDistribution> dists) {
  if (dists.empty())
    throw DataError("distribution statistics need at least one window");

  std::size_t n_bins = 0;
  for (const BinnedDistribution& d : dists)
    n_bins = std::max(n_bins, d.n_bins());

  DistributionStats stats;
  stats.n_windows = dists.size();
  stats.mean.assign(n_bins, 0.0);
  stats.stddev.assign(n_bins, 0.0);

  const double n = static_cast<double>(dists.size());
  for (const BinnedDistribution& d : dists)
    for (std::size_t i = 0; i < d.n_bins(); ++i) stats.mean[i] += d.D[i];
  for (double& m : stats.mean) m /= n;

  for (const BinnedDistribution& d : dists)
    for (std::size_t i = 0; i < n_bins; ++i) {
      const double x = i < d.n_bins() ? d.D[i] : 0.0;
      const double delta = x - stats.mean[i];
      stats.stddev[i] += delta * delta;
    }
  for (double& s : stats.stddev) s = std::sqrt(s / n);
  return stats;
}

}  // namespace tmat
