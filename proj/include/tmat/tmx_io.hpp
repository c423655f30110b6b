#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "tmat/traffic_matrix.hpp"

namespace tmat {

// .tmx binary container, version 1. Layout (see docs/tmx_format.md):
//   magic 'T' 'M' 'X' 0x01
//   varint window_first, window_last, ts_min, ts_max
//   varint n_rows, nnz
//   per row group: varint row delta, varint entry count,
//     entries as (varint col delta, varint count)
// All varints are unsigned LEB128; the first column of each row group is
// zigzag-delta coded against the previous group's first column.
std::vector<std::uint8_t> serialize(const TrafficMatrix& a);

// Inverse of serialize. Corrupt, truncated, or non-canonical input raises
// DecodeError carrying the byte offset.
TrafficMatrix deserialize(std::span<const std::uint8_t> bytes);

void write_tmx(const std::filesystem::path& path, const TrafficMatrix& a);
TrafficMatrix read_tmx(const std::filesystem::path& path);

}  // namespace tmat
