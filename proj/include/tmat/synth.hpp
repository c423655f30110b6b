#pragma once

#include <cstdint>
#include <vector>

#include "tmat/record.hpp"

namespace tmat {

// Deterministic 64-bit generator (splitmix64). Fixed here so traces are
// reproducible across platforms and independent of the standard library's
// distribution implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Heavy-tailed trace model: background packets draw src and dst independently
// from truncated Zipf laws; a small scanner source set sweeps destinations
// cyclically. Source ids are 0..n_sources-1 for background and n_sources..
// n_sources+n_scanners-1 for scanners; destination ids are 0..n_destinations-1.
// Defaults are the reference heavy-tailed benchmark: strongly sublinear
// unique-source growth with near-linear link growth over windows up to 2^24.
struct SynthModel {
  std::uint64_t n_sources = 1ull << 20;
  std::uint64_t n_destinations = 1ull << 20;
  double source_exponent = 1.5;
  double dest_exponent = 1.05;
  double scan_fraction = 0.35;
  std::uint64_t n_scanners = 8;
  std::uint64_t seed = 1;

  void validate() const;  // UsageError on out-of-range parameters
};

// Streaming generator; packet k is independent of n_packets, so a prefix of a
// longer trace equals the shorter trace with the same model.
class TraceGenerator {
 public:
  explicit TraceGenerator(const SynthModel& model);

  PacketRecord next();

 private:
  std::uint64_t sample_zipf(const std::vector<double>& cdf, double u) const;

  SynthModel model_;
  SplitMix64 rng_;
  std::vector<double> src_cdf_;
  std::vector<double> dst_cdf_;
  std::vector<std::uint64_t> scan_cursor_;
  std::uint64_t t_;
};

std::vector<PacketRecord> generate_trace(const SynthModel& model,
                                         std::uint64_t n_packets);

// Exact probability table of the truncated Zipf law p(k) ~ (k+1)^-exponent
// over k = 0..n-1; the analytic oracle behind distribution-shape tests.
std::vector<double> zipf_pmf_table(std::uint64_t n, double exponent);

}  // namespace tmat
