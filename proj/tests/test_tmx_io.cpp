#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "tmat/error.hpp"
#include "tmat/synth.hpp"
#include "tmat/tmx_io.hpp"
#include "tmat/traffic_matrix.hpp"
#include "tmat/window.hpp"

using namespace tmat;

namespace {

TrafficMatrix heavy_tailed_window(std::uint64_t seed, std::uint64_t n_packets) {
  SynthModel model;
  model.seed = seed;
  LeafWindow w{0, generate_trace(model, n_packets)};
  return TrafficMatrix::from_packets(w);
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  return std::vector<std::uint8_t>((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("empty matrix round-trips as a header-only container") {
  const TrafficMatrix empty;
  const auto bytes = serialize(empty);
  CHECK(bytes.size() == 10);  // magic + 6 zero varints
  CHECK(deserialize(bytes) == empty);
}

TEST_CASE("random matrices round-trip exactly") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    SplitMix64 rng(seed);
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (int i = 0; i < 5000; ++i)
      pairs.emplace_back(rng.next() % 500, rng.next() % 300);
    LeafWindow w{seed, {}};
    for (auto& [s, d] : pairs) w.records.push_back({w.records.size(), s, d, 0});
    const TrafficMatrix a = TrafficMatrix::from_packets(w);
    CHECK(deserialize(serialize(a)) == a);
  }
}

TEST_CASE("wide 64-bit identifiers round-trip") {
  const TrafficMatrix a = TrafficMatrix::from_triples({
      {0, 0, 1},
      {0, ~NodeId{0}, 2},
      {~NodeId{0}, 5, 3},
      {~NodeId{0}, ~NodeId{0}, Count{1} << 63},  // 10-byte count varint
  });
  CHECK(deserialize(serialize(a)) == a);
}

TEST_CASE("golden fixture bytes are stable") {
  // The documented reference container from docs/tmx_format.md.
  LeafWindow w{3, {}};
  const std::pair<NodeId, NodeId> pairs[] = {
      {10, 80}, {10, 80}, {10, 91}, {12, 80}, {500, 7}, {500, 7}, {500, 7}};
  std::uint64_t t = 1000;
  for (const auto& [s, d] : pairs) w.records.push_back({t += 5, s, d, 0});
  const TrafficMatrix a = TrafficMatrix::from_packets(w);

  const auto golden = read_file(std::filesystem::path(TMAT_GOLDEN_DIR) / "leaf.tmx");
  CHECK(serialize(a) == golden);
  CHECK(deserialize(golden) == a);
}

TEST_CASE("decode errors name the failing byte offset") {
  const TrafficMatrix a =
      TrafficMatrix::from_triples({{1, 2, 3}, {1, 9, 1}, {4, 2, 2}});
  auto bytes = serialize(a);

  SUBCASE("bad magic") {
    bytes[0] = 'X';
    CHECK_THROWS_WITH_AS(deserialize(bytes),
                         doctest::Contains("byte offset 0"), DecodeError);
  }
  SUBCASE("unsupported version") {
    bytes[3] = 0x02;
    try {
      deserialize(bytes);
      FAIL("expected DecodeError");
    } catch (const DecodeError& e) {
      CHECK(e.offset == 3);
    }
  }
  SUBCASE("truncation at every boundary") {
    for (std::size_t cut = 0; cut < bytes.size(); ++cut) {
      std::vector<std::uint8_t> clipped(bytes.begin(),
                                        bytes.begin() + static_cast<std::ptrdiff_t>(cut));
      CHECK_THROWS_AS(deserialize(clipped), DecodeError);
    }
  }
  SUBCASE("trailing bytes rejected") {
    bytes.push_back(0x00);
    try {
      deserialize(bytes);
      FAIL("expected DecodeError");
    } catch (const DecodeError& e) {
      CHECK(e.offset == bytes.size() - 1);
    }
  }
}

TEST_CASE("non-canonical varints are rejected") {
  const TrafficMatrix a = TrafficMatrix::from_triples({{1, 2, 3}});
  auto bytes = serialize(a);
  // The final byte is the count varint (3); re-encode it as 0x83 0x00.
  REQUIRE(bytes.back() == 3);
  bytes.back() = 0x83;
  bytes.push_back(0x00);
  CHECK_THROWS_AS(deserialize(bytes), DecodeError);
}

TEST_CASE("zero deltas and zero counts are corruption") {
  // magic, zero meta, n_rows=1, nnz=1, row=1, n=1, col zigzag(2)=4, count=0
  std::vector<std::uint8_t> bytes = {'T', 'M', 'X', 0x01, 0, 0, 0, 0,
                                     1,   1,   1,   1,    4, 0};
  CHECK_THROWS_AS(deserialize(bytes), DecodeError);
}

TEST_CASE("an absurd declared entry count is rejected before allocation") {
  // header claiming 2^60 entries in a near-empty container
  std::vector<std::uint8_t> bytes = {'T', 'M', 'X', 0x01, 0, 0, 0, 0, 1};
  for (int i = 0; i < 8; ++i) bytes.push_back(0x80);
  bytes.push_back(0x10);  // nnz varint = 2^60
  CHECK_THROWS_WITH_AS(deserialize(bytes),
                       doctest::Contains("exceeds container size"), DecodeError);
}

TEST_CASE("file io round-trip and errors") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "tmat_roundtrip.tmx";
  const TrafficMatrix a = heavy_tailed_window(5, 2048);
  write_tmx(path, a);
  CHECK(read_tmx(path) == a);
  fs::remove(path);

  CHECK_THROWS_AS(read_tmx("/nonexistent/file.tmx"), IoError);
  CHECK_THROWS_AS(write_tmx("/nonexistent/dir/file.tmx", a), IoError);
}

TEST_CASE("heavy-tailed leaf stays within the size budget") {
  const std::uint64_t n = 1 << 17;
  const TrafficMatrix a = heavy_tailed_window(271828, n);
  const auto bytes = serialize(a);
  const double per_packet = static_cast<double>(bytes.size()) / static_cast<double>(n);
  MESSAGE("bytes/packet on reference synthetic window: " << per_packet);
  CHECK(per_packet <= 4.0);
}
