#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "oracles.hpp"
#include "tmat/error.hpp"
#include "tmat/synth.hpp"
#include "tmat/traffic_matrix.hpp"

using namespace tmat;

namespace {

TrafficMatrix from_pair_list(const std::vector<std::pair<NodeId, NodeId>>& pairs) {
  return TrafficMatrix::from_pairs(pairs);
}

std::map<std::pair<NodeId, NodeId>, Count> entry_map(const TrafficMatrix& a) {
  std::map<std::pair<NodeId, NodeId>, Count> m;
  for (const Entry& e : a.entries()) m[{e.row, e.col}] = e.count;
  return m;
}

std::map<NodeId, Count> as_map(const SparseVector& v) {
  return {v.begin(), v.end()};
}

TrafficMatrix random_matrix(std::uint64_t seed, int n_pairs, NodeId id_range) {
  SplitMix64 rng(seed);
  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(static_cast<std::size_t>(n_pairs));
  for (int i = 0; i < n_pairs; ++i)
    pairs.emplace_back(rng.next() % id_range, rng.next() % id_range);
  return from_pair_list(pairs);
}

}  // namespace

TEST_CASE("empty window gives an empty matrix") {
  const TrafficMatrix a = from_pair_list({});
  CHECK(a.nnz() == 0);
  CHECK(a.total() == 0);
  CHECK(a.max_value() == 0);
}

TEST_CASE("pair multiplicities become entries") {
  const TrafficMatrix a = from_pair_list({{1, 2}, {1, 2}, {3, 2}});
  CHECK(a.total() == 3);
  CHECK(entry_map(a) ==
        std::map<std::pair<NodeId, NodeId>, Count>{{{1, 2}, 2}, {{3, 2}, 1}});
}

TEST_CASE("large random window matches the pair-counting oracle") {
  SplitMix64 rng(42);
  std::vector<PacketRecord> pkts(100000);
  for (std::size_t i = 0; i < pkts.size(); ++i)
    pkts[i] = PacketRecord{i, rng.next() % 1000, rng.next() % 1000, 0};
  LeafWindow w{0, pkts};
  const TrafficMatrix a = TrafficMatrix::from_packets(w);

  CHECK(a.total() == pkts.size());
  const auto expected = oracle::pair_counts(pkts);
  CHECK(entry_map(a) == expected);
}

TEST_CASE("from_packets fills coverage metadata") {
  LeafWindow w{7, {{100, 1, 2, 0}, {105, 3, 4, 0}, {103, 1, 2, 0}}};
  const TrafficMatrix a = TrafficMatrix::from_packets(w);
  CHECK(a.meta().window_first == 7);
  CHECK(a.meta().window_last == 7);
  CHECK(a.meta().ts_min == 100);
  CHECK(a.meta().ts_max == 105);
}

TEST_CASE("merge with the empty matrix is the identity") {
  const TrafficMatrix a = random_matrix(5, 500, 64);
  CHECK(merge(a, TrafficMatrix{}) == a);
  CHECK(merge(TrafficMatrix{}, a) == a);
}

TEST_CASE("merge adds entrywise") {
  const TrafficMatrix a = from_pair_list({{1, 2}, {1, 2}});
  const TrafficMatrix b = from_pair_list({{1, 2}, {9, 9}, {9, 9}, {9, 9}, {9, 9}});
  const TrafficMatrix m = merge(a, b);
  CHECK(entry_map(m) ==
        std::map<std::pair<NodeId, NodeId>, Count>{{{1, 2}, 3}, {{9, 9}, 4}});
  CHECK(m.total() == a.total() + b.total());
}

TEST_CASE("merge nnz equals the support union") {
  const TrafficMatrix a = random_matrix(10, 2000, 40);
  const TrafficMatrix b = random_matrix(11, 2000, 40);
  std::set<std::pair<NodeId, NodeId>> support;
  for (const Entry& e : a.entries()) support.insert({e.row, e.col});
  for (const Entry& e : b.entries()) support.insert({e.row, e.col});
  const TrafficMatrix m = merge(a, b);
  CHECK(m.nnz() == support.size());
  CHECK(m.nnz() <= a.nnz() + b.nnz());
}

TEST_CASE("merge is associative and commutative") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const TrafficMatrix a = random_matrix(seed * 3 + 1, 300, 32);
    const TrafficMatrix b = random_matrix(seed * 3 + 2, 300, 32);
    const TrafficMatrix c = random_matrix(seed * 3 + 3, 300, 32);
    CHECK(merge(a, b) == merge(b, a));
    CHECK(merge(merge(a, b), c) == merge(a, merge(b, c)));
  }
}

TEST_CASE("subadditivity is strict when supports intersect") {
  const TrafficMatrix a = from_pair_list({{1, 2}, {3, 4}});
  const TrafficMatrix b = from_pair_list({{1, 2}, {5, 6}});
  CHECK(merge(a, b).nnz() == 3);
  CHECK(merge(a, b).nnz() < a.nnz() + b.nnz());
}

TEST_CASE("count overflow raises DataError") {
  const Count half = Count{1} << 63;
  const TrafficMatrix a = TrafficMatrix::from_triples({{1, 1, half}});
  CHECK_THROWS_AS(merge(a, a), DataError);
}

TEST_CASE("reductions: worked example") {
  const TrafficMatrix a = from_pair_list({{1, 2}, {1, 2}, {1, 5}, {3, 2}});
  CHECK(as_map(a.row_sums()) == std::map<NodeId, Count>{{1, 3}, {3, 1}});
  CHECK(as_map(a.col_sums()) == std::map<NodeId, Count>{{2, 3}, {5, 1}});
  CHECK(as_map(a.row_support()) == std::map<NodeId, Count>{{1, 2}, {3, 1}});
  CHECK(as_map(a.col_support()) == std::map<NodeId, Count>{{2, 2}, {5, 1}});
  CHECK(a.nnz() == 3);
  CHECK(a.total() == 4);
  CHECK(a.max_value() == 2);
}

TEST_CASE("reductions agree with triple-list fold oracles") {
  const TrafficMatrix a = random_matrix(77, 5000, 128);

  Count total = 0, maxv = 0;
  std::map<NodeId, Count> rows, cols, row_deg, col_deg;
  for (const Entry& e : a.entries()) {
    total += e.count;
    maxv = std::max(maxv, e.count);
    rows[e.row] += e.count;
    cols[e.col] += e.count;
    row_deg[e.row] += 1;
    col_deg[e.col] += 1;
  }
  CHECK(a.total() == total);
  CHECK(a.max_value() == maxv);
  CHECK(as_map(a.row_sums()) == rows);
  CHECK(as_map(a.col_sums()) == cols);
  CHECK(as_map(a.row_support()) == row_deg);
  CHECK(as_map(a.col_support()) == col_deg);
}

TEST_CASE("support never exceeds sums pointwise") {
  const TrafficMatrix a = random_matrix(123, 3000, 50);
  const auto sums = as_map(a.row_sums());
  for (const auto& [id, support] : a.row_support())
    CHECK(support <= sums.at(id));
}

TEST_CASE("from_triples accumulates duplicates and rejects zeros") {
  const TrafficMatrix a =
      TrafficMatrix::from_triples({{2, 3, 4}, {1, 1, 1}, {2, 3, 6}});
  CHECK(entry_map(a) ==
        std::map<std::pair<NodeId, NodeId>, Count>{{{1, 1}, 1}, {{2, 3}, 10}});
  CHECK(a.total() == 11);

  CHECK_THROWS_AS(TrafficMatrix::from_triples({{1, 1, 0}}), DataError);
}

TEST_CASE("from_sorted_unique validates ordering") {
  CHECK_THROWS_AS(
      TrafficMatrix::from_sorted_unique({{2, 1, 1}, {1, 1, 1}}), DataError);
  CHECK_THROWS_AS(
      TrafficMatrix::from_sorted_unique({{1, 1, 1}, {1, 1, 2}}), DataError);
  CHECK_THROWS_AS(TrafficMatrix::from_sorted_unique({{1, 1, 0}}), DataError);

  const TrafficMatrix a = TrafficMatrix::from_sorted_unique({{1, 1, 2}, {1, 2, 3}});
  CHECK(a.total() == 5);
}

TEST_CASE("reductions are invariant under id relabeling") {
  const TrafficMatrix a = random_matrix(9, 4000, 75);

  // Apply a keyed bijection to both sides and compare invariants.
  auto relabel = [](NodeId id) { return (id * 2654435761ull + 17) & 0xFFFFFFFFull; };
  std::vector<Entry> remapped;
  for (const Entry& e : a.entries())
    remapped.push_back(Entry{relabel(e.row), relabel(e.col), e.count});
  const TrafficMatrix b = TrafficMatrix::from_triples(std::move(remapped));

  CHECK(a.nnz() == b.nnz());
  CHECK(a.total() == b.total());
  CHECK(a.max_value() == b.max_value());

  auto values_of = [](const SparseVector& v) {
    std::multiset<Count> out;
    for (const auto& [id, count] : v) out.insert(count);
    return out;
  };
  CHECK(values_of(a.row_sums()) == values_of(b.row_sums()));
  CHECK(values_of(a.col_sums()) == values_of(b.col_sums()));
  CHECK(values_of(a.row_support()) == values_of(b.row_support()));
  CHECK(values_of(a.col_support()) == values_of(b.col_support()));
}

TEST_CASE("merge combines coverage metadata") {
  LeafWindow w0{0, {{100, 1, 2, 0}}};
  LeafWindow w1{1, {{200, 3, 4, 0}}};
  const TrafficMatrix m = merge(TrafficMatrix::from_packets(w0),
                                TrafficMatrix::from_packets(w1));
  CHECK(m.meta().window_first == 0);
  CHECK(m.meta().window_last == 1);
  CHECK(m.meta().ts_min == 100);
  CHECK(m.meta().ts_max == 200);
}
