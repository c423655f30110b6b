#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

namespace tmat {

using NodeId = std::uint64_t;
using Count = std::uint64_t;

// One observed packet header. Identifiers live in a 64-bit space; IPv4
// addresses occupy the low 32 bits (big-endian quad value).
struct PacketRecord {
  std::uint64_t timestamp = 0;  // microseconds since epoch
  NodeId src = 0;
  NodeId dst = 0;
  std::uint32_t proto = 0;  // 0 = unknown

  friend bool operator==(const PacketRecord&, const PacketRecord&) = default;
};

// Inclusive interval. lo > hi matches nothing.
template <typename T>
struct ClosedRange {
  T lo{};
  T hi{};

  bool contains(T v) const { return lo <= v && v <= hi; }

  friend bool operator==(const ClosedRange&, const ClosedRange&) = default;
};

// Validity filter for packet streams. Absent clauses accept everything, so a
// default-constructed FilterSpec passes every record through.
struct FilterSpec {
  std::optional<std::set<std::uint32_t>> allowed_protocols;
  std::optional<ClosedRange<NodeId>> src_range;
  std::optional<ClosedRange<NodeId>> dst_range;
  std::optional<ClosedRange<std::uint64_t>> time_range;

  bool accepts(const PacketRecord& r) const {
    if (allowed_protocols && !allowed_protocols->count(r.proto)) return false;
    if (src_range && !src_range->contains(r.src)) return false;
    if (dst_range && !dst_range->contains(r.dst)) return false;
    if (time_range && !time_range->contains(r.timestamp)) return false;
    return true;
  }
};

// Order-preserving filter application.
inline std::vector<PacketRecord> filter_valid(
    const std::vector<PacketRecord>& records, const FilterSpec& filter) {
  std::vector<PacketRecord> out;
  out.reserve(records.size());
  for (const PacketRecord& r : records)
    if (filter.accepts(r)) out.push_back(r);
  return out;
}

}  // namespace tmat
