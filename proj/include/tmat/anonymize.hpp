#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <string_view>
#include <vector>

#include "tmat/record.hpp"

namespace tmat {

// Secret key for prefix-preserving address anonymization. domain_bits is the
// width of the identifier space being anonymized (IPv4 = 32).
struct AnonKey {
  std::array<std::uint8_t, 32> key_bytes{};
  int domain_bits = 32;
};

// Parses a 64-hex-character key file (whole file, no framing).
AnonKey load_anon_key(const std::filesystem::path& path, int domain_bits = 32);
AnonKey anon_key_from_hex(std::string_view hex, int domain_bits = 32);

// Keyed PRF over address prefixes: given the high-order prefix_len bits of an
// address (right-aligned in `prefix`), returns a 64-bit pseudorandom word.
using PrefixPrf = std::function<std::uint64_t(std::uint64_t prefix, int prefix_len)>;

// Prefix-preserving permutation of a domain_bits-wide space. Output bit i is
// input bit i XOR the top bit of prf(input bits above i). Two addresses
// sharing exactly their first k bits map to outputs sharing exactly their
// first k bits, and the map is a bijection.
std::uint64_t anonymize_with_prf(std::uint64_t addr, int domain_bits,
                                 const PrefixPrf& prf);

// Default construction, keyed with SipHash-2-4. Same key + same input give
// the same output on every platform and run.
std::uint64_t anonymize_address(const AnonKey& key, std::uint64_t addr);

// Stateful record anonymizer for streaming use: the per-address memo table
// persists across calls, so repeated addresses cost one lookup. Not intended
// for concurrent use from multiple threads.
class RecordAnonymizer {
 public:
  explicit RecordAnonymizer(const AnonKey& key);
  RecordAnonymizer(const AnonKey& src_key, const AnonKey& dst_key);
  RecordAnonymizer(RecordAnonymizer&&) noexcept;
  RecordAnonymizer& operator=(RecordAnonymizer&&) noexcept;
  ~RecordAnonymizer();

  // Rewrites src and dst; timestamp and proto pass through.
  PacketRecord operator()(PacketRecord r);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Per-record application to src and dst; timestamps and proto pass through.
// src and dst use the same key unless a separate destination key is given.
std::vector<PacketRecord> anonymize_records(const AnonKey& key,
                                            std::vector<PacketRecord> records);
std::vector<PacketRecord> anonymize_records(const AnonKey& src_key,
                                            const AnonKey& dst_key,
                                            std::vector<PacketRecord> records);

}  // namespace tmat
