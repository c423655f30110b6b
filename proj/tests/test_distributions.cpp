#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "oracles.hpp"
#include "tmat/distributions.hpp"
#include "tmat/error.hpp"
#include "tmat/quantities.hpp"
#include "tmat/synth.hpp"
#include "tmat/traffic_matrix.hpp"
#include "tmat/window.hpp"

using namespace tmat;

namespace {

SparseVector vec(const std::vector<std::pair<NodeId, Count>>& items) {
  return SparseVector::from_items({items.begin(), items.end()});
}

std::map<Count, Count> hist_map(const DegreeHistogram& h) {
  return {h.items().begin(), h.items().end()};
}

}  // namespace

TEST_CASE("histogram groups degrees") {
  const DegreeHistogram h = degree_histogram(vec({{100, 3}, {200, 1}}));
  CHECK(hist_map(h) == std::map<Count, Count>{{1, 1}, {3, 1}});
  CHECK(h.d_max() == 3);
}

TEST_CASE("all-leaf vector gives a single histogram cell") {
  std::vector<std::pair<NodeId, Count>> items;
  for (NodeId i = 0; i < 50; ++i) items.emplace_back(i, 1);
  const DegreeHistogram h = degree_histogram(vec(items));
  CHECK(hist_map(h) == std::map<Count, Count>{{1, 50}});
}

TEST_CASE("histogram matches a sort-and-group oracle") {
  SplitMix64 rng(8);
  std::vector<Count> degrees(5000);
  std::vector<std::pair<NodeId, Count>> items;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    degrees[i] = 1 + rng.next() % 400;
    items.emplace_back(i, degrees[i]);
  }
  const DegreeHistogram h = degree_histogram(vec(items));
  CHECK(hist_map(h) == oracle::degree_counts(degrees));

  // mass conservation: sum over d of d*n(d) equals the vector's value sum
  Count mass = 0;
  for (const auto& [d, n] : h.items()) mass += d * n;
  CHECK(mass == vec(items).sum());
}

TEST_CASE("bin membership: right-closed powers of two") {
  CHECK(BinnedDistribution::bin_of(1) == 0);
  CHECK(BinnedDistribution::bin_of(2) == 1);
  CHECK(BinnedDistribution::bin_of(3) == 2);
  CHECK(BinnedDistribution::bin_of(4) == 2);
  CHECK(BinnedDistribution::bin_of(5) == 3);
  CHECK(BinnedDistribution::bin_of(8) == 3);
  CHECK(BinnedDistribution::bin_of(9) == 4);
  CHECK(BinnedDistribution::bin_of(Count{1} << 40) == 40);
}

TEST_CASE("leaf-only histogram puts all mass in bin zero") {
  const BinnedDistribution b =
      binned_distribution(DegreeHistogram{{{1, 50}}});
  REQUIRE(b.n_bins() == 1);
  CHECK(b.D[0] == 1.0);
  CHECK(b.P_at_edges[0] == 1.0);
}

TEST_CASE("hand-enumerated four-key histogram") {
  // degrees {1:2, 2:1, 3:1}: p = {1: .5, 2: .25, 3: .25}
  const BinnedDistribution b =
      binned_distribution(DegreeHistogram{{{1, 2}, {2, 1}, {3, 1}}});
  REQUIRE(b.n_bins() == 3);
  CHECK(b.D[0] == 0.5);   // degree 1
  CHECK(b.D[1] == 0.25);  // degree 2
  CHECK(b.D[2] == 0.25);  // degrees 3..4
  CHECK(b.P_at_edges[0] == 0.5);
  CHECK(b.P_at_edges[1] == 0.75);
  CHECK(b.P_at_edges[2] == 1.0);
}

TEST_CASE("empty histogram cannot be binned") {
  CHECK_THROWS_AS(binned_distribution(DegreeHistogram{}), DataError);
}

TEST_CASE("normalization, monotonicity, and exact binning") {
  SplitMix64 rng(99);
  std::vector<Count> degrees(20000);
  for (auto& d : degrees) d = 1 + (rng.next() % (1 + rng.next() % 3000));
  const DegreeHistogram h = degree_histogram(degrees);
  const BinnedDistribution b = binned_distribution(h);

  double mass = 0;
  for (double d : b.D) {
    CHECK(d >= 0.0);
    mass += d;
  }
  CHECK(std::abs(mass - 1.0) <= 1e-12);
  for (std::size_t i = 1; i < b.n_bins(); ++i)
    CHECK(b.P_at_edges[i] >= b.P_at_edges[i - 1]);
  CHECK(b.P_at_edges.back() == 1.0);

  // d_max lands in the top nonzero bin
  CHECK(b.bin_counts[BinnedDistribution::bin_of(h.d_max())] > 0);
  CHECK(BinnedDistribution::bin_of(h.d_max()) + 1 == b.n_bins());

  // Exact agreement with the integer-mass oracle, and per-degree float sums
  // within reordering tolerance.
  const auto int_mass = oracle::binned_integer_mass(hist_map(h));
  REQUIRE(int_mass.size() == b.n_bins());
  for (std::size_t i = 0; i < b.n_bins(); ++i) {
    CHECK(b.bin_counts[i] == int_mass[i]);
    CHECK(b.D[i] ==
          static_cast<double>(int_mass[i]) / static_cast<double>(b.total));
  }
  const auto float_sums = oracle::binned_probability_sums(hist_map(h));
  for (std::size_t i = 0; i < b.n_bins(); ++i)
    CHECK(std::abs(b.D[i] - float_sums[i]) <= 1e-12);
}

TEST_CASE("power-law sample recovers the analytic binned slope") {
  // Discrete power law p(d) ~ d^-1.9 over 1..100000, sampled by inverse CDF.
  const std::uint64_t support = 100000;
  const double exponent = 1.9;
  const std::vector<double> pmf = zipf_pmf_table(support, exponent);
  std::vector<double> cdf(pmf.size());
  double acc = 0;
  for (std::size_t i = 0; i < pmf.size(); ++i) cdf[i] = (acc += pmf[i]);

  SplitMix64 rng(512);
  std::vector<Count> degrees(100000);
  for (auto& d : degrees) {
    const double u = rng.next_unit();
    d = 1 + static_cast<Count>(
                std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
  }
  const BinnedDistribution empirical = binned_distribution(degree_histogram(degrees));

  // Analytic binning of the exact pmf.
  std::vector<double> analytic(BinnedDistribution::bin_of(support) + 1, 0.0);
  for (std::uint64_t d = 1; d <= support; ++d)
    analytic[BinnedDistribution::bin_of(d)] += pmf[d - 1];

  auto slope = [](const std::vector<double>& D, std::size_t lo, std::size_t hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double n = 0;
    for (std::size_t i = lo; i <= hi; ++i) {
      if (D[i] <= 0) continue;
      const double x = static_cast<double>(i);
      const double y = std::log2(D[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      n += 1;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };

  const double s_emp = slope(empirical.D, 1, 8);
  const double s_ana = slope(analytic, 1, 8);
  MESSAGE("empirical slope " << s_emp << " analytic slope " << s_ana);
  CHECK(std::abs(s_emp - s_ana) <= 0.15);
}

TEST_CASE("stats of a single distribution are itself with zero spread") {
  const BinnedDistribution b =
      binned_distribution(DegreeHistogram{{{1, 2}, {2, 1}, {3, 1}}});
  const DistributionStats stats = distribution_stats({{b}});
  CHECK(stats.n_windows == 1);
  REQUIRE(stats.mean == b.D);
  for (double s : stats.stddev) CHECK(s == 0.0);
}

TEST_CASE("two-point population standard deviation is the half-range") {
  // Bin values {0.4, 0.6}: mean 0.5, population stddev 0.1.
  const BinnedDistribution x =
      binned_distribution(DegreeHistogram{{{1, 2}, {2, 3}}});  // D = {.4, .6}
  const BinnedDistribution y =
      binned_distribution(DegreeHistogram{{{1, 3}, {2, 2}}});  // D = {.6, .4}
  REQUIRE(x.D[0] == 0.4);
  REQUIRE(y.D[0] == 0.6);
  const DistributionStats stats = distribution_stats({{x, y}});
  CHECK(stats.mean[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(stats.stddev[0] == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("shorter distributions pad missing high bins with zero") {
  const BinnedDistribution narrow =
      binned_distribution(DegreeHistogram{{{1, 4}}});  // 1 bin
  const BinnedDistribution wide =
      binned_distribution(DegreeHistogram{{{1, 2}, {8, 2}}});  // 4 bins
  const DistributionStats stats = distribution_stats({{narrow, wide}});
  REQUIRE(stats.mean.size() == 4);
  CHECK(stats.mean[0] == doctest::Approx(0.75));
  CHECK(stats.mean[3] == doctest::Approx(0.25));
}

TEST_CASE("empty window list is a domain error") {
  CHECK_THROWS_AS(distribution_stats({}), DataError);
}

TEST_CASE("stationary trace keeps per-bin spread below the mean") {
  SynthModel model;
  model.n_sources = 5000;
  model.n_destinations = 500;
  model.seed = 77;
  TraceGenerator gen(model);

  std::vector<BinnedDistribution> dists;
  for (int w = 0; w < 32; ++w) {
    LeafWindow window{static_cast<std::uint64_t>(w), {}};
    for (int i = 0; i < 4096; ++i) window.records.push_back(gen.next());
    const TrafficMatrix a = TrafficMatrix::from_packets(window);
    dists.push_back(binned_distribution(degree_histogram(a.row_sums())));
  }
  const DistributionStats stats = distribution_stats(dists);
  for (std::size_t i = 0; i < stats.mean.size(); ++i)
    if (stats.mean[i] > 0.01) CHECK(stats.stddev[i] < stats.mean[i]);
}
