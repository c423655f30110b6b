#include "tmat/quantities.hpp"

#include <algorithm>
#include <unordered_map>

namespace tmat {

DegreeVectors degree_vectors(const TrafficMatrix& a) {
  DegreeVectors v;
  v.link_packets = a.entries();

  // Row-major entries keep each source's run contiguous.
  const std::vector<Entry>& entries = a.entries();
  for (std::size_t i = 0; i < entries.size();) {
    const NodeId row = entries[i].row;
    Count packets = 0;
    Count fanout = 0;
    while (i < entries.size() && entries[i].row == row) {
      packets += entries[i].count;
      ++fanout;
      ++i;
    }
    v.source_packets.push_sorted(row, packets);
    v.source_fanout.push_sorted(row, fanout);
  }

  std::unordered_map<NodeId, std::pair<Count, Count>> cols;  // sum, support
  cols.reserve(entries.size());
  for (const Entry& e : entries) {
    auto& acc = cols[e.col];
    acc.first += e.count;
    acc.second += 1;
  }
  std::vector<SparseVector::Item> sums, supports;
  sums.reserve(cols.size());
  supports.reserve(cols.size());
  for (const auto& [col, acc] : cols) {
    sums.emplace_back(col, acc.first);
    supports.emplace_back(col, acc.second);
  }
  v.destination_packets = SparseVector::from_items(std::move(sums));
  v.destination_fanin = SparseVector::from_items(std::move(supports));
  return v;
}

WindowSummary window_summary(const TrafficMatrix& a) {
  return window_summary(a, degree_vectors(a));
}

WindowSummary window_summary(const TrafficMatrix& a, const DegreeVectors& v) {
  WindowSummary s;
  s.window_size = a.total();
  s.valid_packets = a.total();
  s.unique_links = a.nnz();
  s.max_link_packets = a.max_value();
  s.unique_sources = v.source_packets.size();
  s.max_source_packets = v.source_packets.max_value();
  s.max_source_fanout = v.source_fanout.max_value();
  s.unique_destinations = v.destination_packets.size();
  s.max_destination_packets = v.destination_packets.max_value();
  s.max_destination_fanin = v.destination_fanin.max_value();
  return s;
}

}  // namespace tmat
