#include "tmat/anonymize.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "tmat/error.hpp"

namespace tmat {

namespace {

inline std::uint64_t rotl64(std::uint64_t x, int b) {
  return (x << b) | (x >> (64 - b));
}

inline std::uint64_t load_le64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

// SipHash-2-4 with a 128-bit key, the default keyed PRF behind the
// prefix-preserving map.
std::uint64_t siphash24(std::uint64_t k0, std::uint64_t k1,
                        const std::uint8_t* data, std::size_t len) {
  std::uint64_t v0 = 0x736F6D6570736575ull ^ k0;
  std::uint64_t v1 = 0x646F72616E646F6Dull ^ k1;
  std::uint64_t v2 = 0x6C7967656E657261ull ^ k0;
  std::uint64_t v3 = 0x7465646279746573ull ^ k1;

  auto sipround = [&] {
    v0 += v1;
    v1 = rotl64(v1, 13);
    v1 ^= v0;
    v0 = rotl64(v0, 32);
    v2 += v3;
    v3 = rotl64(v3, 16);
    v3 ^= v2;
    v0 += v3;
    v3 = rotl64(v3, 21);
    v3 ^= v0;
    v2 += v1;
    v1 = rotl64(v1, 17);
    v1 ^= v2;
    v2 = rotl64(v2, 32);
  };

  const std::size_t n_blocks = len / 8;
  for (std::size_t i = 0; i < n_blocks; ++i) {
    std::uint64_t m = load_le64(data + 8 * i);
    v3 ^= m;
    sipround();
    sipround();
    v0 ^= m;
  }

  std::uint64_t last = static_cast<std::uint64_t>(len & 0xFF) << 56;
  for (std::size_t i = 8 * n_blocks; i < len; ++i)
    last |= static_cast<std::uint64_t>(data[i]) << (8 * (i % 8));
  v3 ^= last;
  sipround();
  sipround();
  v0 ^= last;

  v2 ^= 0xFF;
  sipround();
  sipround();
  sipround();
  sipround();
  return v0 ^ v1 ^ v2 ^ v3;
}

int hex_nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

void check_domain_bits(int domain_bits) {
  if (domain_bits < 1 || domain_bits > 64)
    throw UsageError("domain_bits must be in [1, 64]");
}

// Default PRF: SipHash keyed with the first 16 key bytes over a message of
// the remaining 16 key bytes, the prefix length, and the prefix value.
struct DefaultPrf {
  std::uint64_t k0, k1;
  std::array<std::uint8_t, 25> msg{};

  explicit DefaultPrf(const AnonKey& key) {
    k0 = load_le64(key.key_bytes.data());
    k1 = load_le64(key.key_bytes.data() + 8);
    for (int i = 0; i < 16; ++i) msg[static_cast<std::size_t>(i)] = key.key_bytes[16 + i];
  }

  std::uint64_t operator()(std::uint64_t prefix, int prefix_len) {
    msg[16] = static_cast<std::uint8_t>(prefix_len);
    for (int i = 0; i < 8; ++i)
      msg[17 + i] = static_cast<std::uint8_t>(prefix >> (8 * i));
    return siphash24(k0, k1, msg.data(), msg.size());
  }
};

template <typename Prf>
std::uint64_t prefix_preserving_map(std::uint64_t addr, int domain_bits,
                                    Prf&& prf) {
  check_domain_bits(domain_bits);
  if (domain_bits < 64 && (addr >> domain_bits) != 0)
    throw UsageError("address " + std::to_string(addr) +
                     " outside the 2^" + std::to_string(domain_bits) +
                     " anonymization domain");
  std::uint64_t out = 0;
  for (int i = 0; i < domain_bits; ++i) {
    const int shift = domain_bits - 1 - i;
    // high-order i bits of the input, right-aligned; empty prefix for i = 0
    const std::uint64_t prefix = i == 0 ? 0 : addr >> (domain_bits - i);
    const std::uint64_t flip = prf(prefix, i) >> 63;
    const std::uint64_t bit = (addr >> shift) & 1;
    out |= (bit ^ flip) << shift;
  }
  return out;
}

// Memoizes the per-address map for bulk record processing; distinct
// addresses are typically far fewer than packets.
struct CachedAnonymizer {
  DefaultPrf prf;
  int domain_bits;
  std::unordered_map<std::uint64_t, std::uint64_t> memo;

  explicit CachedAnonymizer(const AnonKey& key)
      : prf(key), domain_bits(key.domain_bits) {}

  std::uint64_t map(std::uint64_t addr) {
    auto it = memo.find(addr);
    if (it != memo.end()) return it->second;
    std::uint64_t out = prefix_preserving_map(addr, domain_bits, prf);
    memo.emplace(addr, out);
    return out;
  }
};

}  // namespace

AnonKey anon_key_from_hex(std::string_view hex, int domain_bits) {
  check_domain_bits(domain_bits);
  if (hex.size() != 64)
    throw DataError("anonymization key must be 64 hex characters, got " +
                    std::to_string(hex.size()));
  AnonKey key;
  key.domain_bits = domain_bits;
  for (std::size_t i = 0; i < 32; ++i) {
    int hi = hex_nibble(hex[2 * i]);
    int lo = hex_nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0)
      throw DataError("anonymization key contains a non-hex character");
    key.key_bytes[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return key;
}

AnonKey load_anon_key(const std::filesystem::path& path, int domain_bits) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open key file: " + path.string());
  std::ostringstream contents;
  contents << in.rdbuf();
  if (in.bad()) throw IoError("cannot read key file: " + path.string());
  std::string text = contents.str();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' ||
                           text.back() == ' ' || text.back() == '\t'))
    text.pop_back();
  return anon_key_from_hex(text, domain_bits);
}

std::uint64_t anonymize_with_prf(std::uint64_t addr, int domain_bits,
                                 const PrefixPrf& prf) {
  return prefix_preserving_map(addr, domain_bits, prf);
}

std::uint64_t anonymize_address(const AnonKey& key, std::uint64_t addr) {
  DefaultPrf prf(key);
  return prefix_preserving_map(addr, key.domain_bits, prf);
}

struct RecordAnonymizer::Impl {
  CachedAnonymizer src;
  // absent when src and dst share a key (and therefore the memo table)
  std::optional<CachedAnonymizer> dst;

  explicit Impl(const AnonKey& key) : src(key) {}
  Impl(const AnonKey& src_key, const AnonKey& dst_key) : src(src_key) {
    if (dst_key.key_bytes != src_key.key_bytes ||
        dst_key.domain_bits != src_key.domain_bits)
      dst.emplace(dst_key);
  }
};

RecordAnonymizer::RecordAnonymizer(const AnonKey& key)
    : impl_(std::make_unique<Impl>(key)) {}

RecordAnonymizer::RecordAnonymizer(const AnonKey& src_key, const AnonKey& dst_key)
    : impl_(std::make_unique<Impl>(src_key, dst_key)) {}

RecordAnonymizer::RecordAnonymizer(RecordAnonymizer&&) noexcept = default;
RecordAnonymizer& RecordAnonymizer::operator=(RecordAnonymizer&&) noexcept = default;
RecordAnonymizer::~RecordAnonymizer() = default;

PacketRecord RecordAnonymizer::operator()(PacketRecord r) {
  r.src = impl_->src.map(r.src);
  r.dst = impl_->dst ? impl_->dst->map(r.dst) : impl_->src.map(r.dst);
  return r;
}

std::vector<PacketRecord> anonymize_records(const AnonKey& key,
                                            std::vector<PacketRecord> records) {
  RecordAnonymizer anon(key);
  for (PacketRecord& r : records) r = anon(r);
  return records;
}

std::vector<PacketRecord> anonymize_records(const AnonKey& src_key,
                                            const AnonKey& dst_key,
                                            std::vector<PacketRecord> records) {
  RecordAnonymizer anon(src_key, dst_key);
  for (PacketRecord& r : records) r = anon(r);
  return records;
}

}  // namespace tmat
