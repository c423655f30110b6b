#include "tmat/synth.hpp"

#include <algorithm>
#include <cmath>

#include "tmat/error.hpp"

namespace tmat {

namespace {

constexpr std::uint64_t kMaxTableSize = std::uint64_t{1} << 24;
constexpr std::uint64_t kBaseTimestamp = 1'600'000'000'000'000ull;  // microseconds

// Cumulative table for exact inverse-CDF sampling of a truncated Zipf law
// p(k) proportional to (k+1)^-s, k = 0..n-1.
std::vector<double> zipf_cdf(std::uint64_t n, double exponent) {
  std::vector<double> cdf(n);
  double acc = 0.0;
  for (std::uint64_t k = 0; k < n; ++k) {
    acc += std::pow(static_cast<double>(k + 1), -exponent);
    cdf[k] = acc;
  }
  for (double& c : cdf) c /= acc;
  cdf.back() = 1.0;
  return cdf;
}

}  // namespace

void SynthModel::validate() const {
  if (n_sources < 1 || n_sources > kMaxTableSize)
    throw UsageError("n_sources must be in [1, 2^24]");
  if (n_destinations < 1 || n_destinations > kMaxTableSize)
    throw UsageError("n_destinations must be in [1, 2^24]");
  if (!(source_exponent > 1.0) || !(dest_exponent > 1.0))
    throw UsageError("Zipf exponents must be greater than 1");
  if (!(scan_fraction >= 0.0) || !(scan_fraction <= 1.0))
    throw UsageError("scan_fraction must be in [0, 1]");
  if (n_scanners < 1 || n_scanners > 1024)
    throw UsageError("n_scanners must be in [1, 1024]");
}

TraceGenerator::TraceGenerator(const SynthModel& model)
    : model_(model), rng_(model.seed), t_(kBaseTimestamp) {
  model_.validate();
  src_cdf_ = zipf_cdf(model_.n_sources, model_.source_exponent);
  dst_cdf_ = zipf_cdf(model_.n_destinations, model_.dest_exponent);
  scan_cursor_.resize(model_.n_scanners);
  for (std::uint64_t s = 0; s < model_.n_scanners; ++s)
    scan_cursor_[s] = s * model_.n_destinations / model_.n_scanners;
}

std::uint64_t TraceGenerator::sample_zipf(const std::vector<double>& cdf,
                                          double u) const {
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  if (it == cdf.end()) --it;
  return static_cast<std::uint64_t>(it - cdf.begin());
}

PacketRecord TraceGenerator::next() {
  // Fixed draw order per packet: kind, (scanner | src, dst), time step.
  PacketRecord rec;
  const double u_kind = rng_.next_unit();
  if (u_kind < model_.scan_fraction) {
    const std::uint64_t s = rng_.next() % model_.n_scanners;
    rec.src = model_.n_sources + s;
    rec.dst = scan_cursor_[s];
    scan_cursor_[s] = (scan_cursor_[s] + 1) % model_.n_destinations;
  } else {
    rec.src = sample_zipf(src_cdf_, rng_.next_unit());
    rec.dst = sample_zipf(dst_cdf_, rng_.next_unit());
  }
  t_ += 1 + rng_.next() % 7;
  rec.timestamp = t_;
  return rec;
}

std::vector<PacketRecord> generate_trace(const SynthModel& model,
                                         std::uint64_t n_packets) {
  TraceGenerator gen(model);
  std::vector<PacketRecord> trace;
  trace.reserve(n_packets);
  for (std::uint64_t i = 0; i < n_packets; ++i) trace.push_back(gen.next());
  return trace;
}

std::vector<double> zipf_pmf_table(std::uint64_t n, double exponent) {
  std::vector<double> pmf(n);
  double norm = 0.0;
  for (std::uint64_t k = 0; k < n; ++k) {
    pmf[k] = std::pow(static_cast<double>(k + 1), -exponent);
    norm += pmf[k];
  }
  for (double& p : pmf) p /= norm;
  return pmf;
}

}  // namespace tmat
