#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tmat/error.hpp"
#include "tmat/record.hpp"

namespace tmat {

// A contiguous slice of exactly n_valid filtered packets.
struct LeafWindow {
  std::uint64_t index = 0;  // position in the stream, 0-based
  std::vector<PacketRecord> records;

  std::uint64_t n_valid() const { return records.size(); }
};

struct PartitionResult {
  std::vector<LeafWindow> windows;
  std::uint64_t remainder = 0;  // trailing records dropped (< leaf_size)
};

// Tiles the stream into full windows of leaf_size records; the trailing
// partial window is dropped and its size reported.
inline PartitionResult partition_windows(std::vector<PacketRecord> records,
                                         std::uint64_t leaf_size) {
  if (leaf_size == 0) throw UsageError("window size must be at least 1");
  PartitionResult out;
  const std::uint64_t n_windows = records.size() / leaf_size;
  out.remainder = records.size() - n_windows * leaf_size;
  out.windows.reserve(n_windows);
  for (std::uint64_t w = 0; w < n_windows; ++w) {
    LeafWindow win;
    win.index = w;
    win.records.assign(records.begin() + static_cast<std::ptrdiff_t>(w * leaf_size),
                       records.begin() + static_cast<std::ptrdiff_t>((w + 1) * leaf_size));
    out.windows.push_back(std::move(win));
  }
  return out;
}

}  // namespace tmat
