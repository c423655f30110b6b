#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "tmat/hierarchy.hpp"
#include "tmat/quantities.hpp"
#include "tmat/scaling.hpp"

namespace tmat {

// Shortest round-trip decimal rendering; keeps repeated runs byte-identical.
std::string format_double(double v);

inline constexpr const char* kSummaryCsvHeader =
    "window_index,N_V,valid,links,max_link,srcs,max_src_pkts,max_fanout,"
    "dsts,max_dst_pkts,max_fanin";

inline constexpr const char* kDistCsvHeader =
    "quantity,bin_index,d_i,D_mean,D_std,n_windows";

inline constexpr const char* kFitCsvHeader =
    "quantity,norm,alpha,beta,residual,delta_alpha";

void write_summary_csv(std::ostream& out,
                       const std::vector<WindowSummary>& summaries,
                       std::uint64_t n_v);

void write_dist_csv(std::ostream& out, std::string_view quantity,
                    const DistributionStats& stats);

struct QuantityFit {
  std::string quantity;
  ScalingFit fit;
};

void write_fit_csv(std::ostream& out, const std::vector<QuantityFit>& fits);

// level_<k>/summaries.csv and level_<k>/dist_<quantity>.csv under out_dir.
void write_level_outputs(const std::filesystem::path& out_dir,
                         const std::vector<LevelResult>& levels);

}  // namespace tmat
