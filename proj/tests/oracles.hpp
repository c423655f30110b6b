#pragma once

// Brute-force reference implementations for checking the library. Everything
// here works straight off packet or degree lists with ordered containers and
// stays independent of the matrix/distribution code paths under test.

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "tmat/record.hpp"

namespace oracle {

using tmat::Count;
using tmat::NodeId;
using tmat::PacketRecord;

using PairKey = std::pair<NodeId, NodeId>;

inline std::map<PairKey, Count> pair_counts(const std::vector<PacketRecord>& pkts) {
  std::map<PairKey, Count> m;
  for (const PacketRecord& p : pkts) ++m[{p.src, p.dst}];
  return m;
}

inline std::map<NodeId, Count> source_packets(const std::vector<PacketRecord>& pkts) {
  std::map<NodeId, Count> m;
  for (const PacketRecord& p : pkts) ++m[p.src];
  return m;
}

inline std::map<NodeId, Count> destination_packets(
    const std::vector<PacketRecord>& pkts) {
  std::map<NodeId, Count> m;
  for (const PacketRecord& p : pkts) ++m[p.dst];
  return m;
}

inline std::map<NodeId, Count> source_fanout(const std::vector<PacketRecord>& pkts) {
  std::map<NodeId, std::set<NodeId>> partners;
  for (const PacketRecord& p : pkts) partners[p.src].insert(p.dst);
  std::map<NodeId, Count> m;
  for (const auto& [src, dsts] : partners) m[src] = dsts.size();
  return m;
}

inline std::map<NodeId, Count> destination_fanin(
    const std::vector<PacketRecord>& pkts) {
  std::map<NodeId, std::set<NodeId>> partners;
  for (const PacketRecord& p : pkts) partners[p.dst].insert(p.src);
  std::map<NodeId, Count> m;
  for (const auto& [dst, srcs] : partners) m[dst] = srcs.size();
  return m;
}

template <typename K>
inline Count max_mapped(const std::map<K, Count>& m) {
  Count best = 0;
  for (const auto& [k, v] : m) best = std::max(best, v);
  return best;
}

struct Summary {
  Count valid = 0;
  Count unique_links = 0;
  Count max_link_packets = 0;
  Count unique_sources = 0;
  Count max_source_packets = 0;
  Count max_source_fanout = 0;
  Count unique_destinations = 0;
  Count max_destination_packets = 0;
  Count max_destination_fanin = 0;
};

inline Summary summary(const std::vector<PacketRecord>& pkts) {
  Summary s;
  s.valid = pkts.size();
  const auto links = pair_counts(pkts);
  s.unique_links = links.size();
  s.max_link_packets = max_mapped(links);
  const auto sp = source_packets(pkts);
  s.unique_sources = sp.size();
  s.max_source_packets = max_mapped(sp);
  s.max_source_fanout = max_mapped(source_fanout(pkts));
  const auto dp = destination_packets(pkts);
  s.unique_destinations = dp.size();
  s.max_destination_packets = max_mapped(dp);
  s.max_destination_fanin = max_mapped(destination_fanin(pkts));
  return s;
}

// Exact degree histogram n(d) from a degree list.
inline std::map<Count, Count> degree_counts(const std::vector<Count>& degrees) {
  std::map<Count, Count> m;
  for (Count d : degrees) ++m[d];
  return m;
}

// Integer mass per binary-log bin: bin 0 = {1}, bin i = (2^(i-1), 2^i].
inline std::vector<std::uint64_t> binned_integer_mass(
    const std::map<Count, Count>& hist) {
  std::vector<std::uint64_t> bins;
  for (const auto& [d, n] : hist) {
    std::size_t b = 0;
    while ((Count{1} << b) < d) ++b;
    if (bins.size() <= b) bins.resize(b + 1, 0);
    bins[b] += n;
  }
  return bins;
}

// Brute-force sum of exact per-degree probabilities n(d)/total over a bin's
// integer range, accumulated degree by degree in double arithmetic.
inline std::vector<double> binned_probability_sums(
    const std::map<Count, Count>& hist) {
  std::uint64_t total = 0;
  for (const auto& [d, n] : hist) total += n;
  const auto integer_mass = binned_integer_mass(hist);
  std::vector<double> bins(integer_mass.size(), 0.0);
  for (const auto& [d, n] : hist) {
    std::size_t b = 0;
    while ((Count{1} << b) < d) ++b;
    bins[b] += static_cast<double>(n) / static_cast<double>(total);
  }
  return bins;
}

}  // namespace oracle
