#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace tmat {

// Mean value of one quantity at one window size, with the cross-window
// standard deviation carried for reporting.
struct ScalingPoint {
  std::uint64_t n_v = 0;
  double value = 0.0;
  double spread = 0.0;
};

enum class FitNorm {
  Squared,   // least squares on log-log data
  Absolute,  // L1, iteratively reweighted least squares
  Zero,      // maximize points fit within a log-space tolerance band
};

std::string_view fit_norm_name(FitNorm n);

struct FitOptions {
  // Half-width of the zero-norm inlier band in log space (5% multiplicative).
  double zero_eps = std::log(1.05);
};

struct NormFit {
  double alpha = 0.0;
  double beta = 0.0;
  double residual = 0.0;  // final objective value for the chosen norm
};

// Fits value = beta * N_V^alpha by minimizing the chosen norm of log-space
// residuals. Needs >= 2 points with positive values (DataError otherwise).
NormFit fit_power_law(std::span<const ScalingPoint> points, FitNorm norm,
                      const FitOptions& opts = {});

struct ScalingFit {
  NormFit squared;
  NormFit absolute;
  NormFit zero;
  double delta_alpha = 0.0;  // max pairwise spread of the three alphas

  const NormFit& by_norm(FitNorm n) const {
    switch (n) {
      case FitNorm::Squared: return squared;
      case FitNorm::Absolute: return absolute;
      default: return zero;
    }
  }
};

ScalingFit fit_all_norms(std::span<const ScalingPoint> points,
                         const FitOptions& opts = {});

// Divides each value by (N_V / 2^ref_log2)^alpha; exact power-law data
// collapses onto the constant beta * (2^ref_log2)^alpha.
std::vector<ScalingPoint> normalize_curve(std::span<const ScalingPoint> points,
                                          double alpha, int ref_log2 = 17);

}  // namespace tmat
