#include "tmat/csv_io.hpp"

#include <charconv>
#include <fstream>

#include "tmat/error.hpp"

namespace tmat {

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_summary_csv(std::ostream& out,
                       const std::vector<WindowSummary>& summaries,
                       std::uint64_t n_v) {
  out << kSummaryCsvHeader << '\n';
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    const WindowSummary& s = summaries[i];
    out << i << ',' << n_v << ',' << s.valid_packets << ',' << s.unique_links
        << ',' << s.max_link_packets << ',' << s.unique_sources << ','
        << s.max_source_packets << ',' << s.max_source_fanout << ','
        << s.unique_destinations << ',' << s.max_destination_packets << ','
        << s.max_destination_fanin << '\n';
  }
}

void write_dist_csv(std::ostream& out, std::string_view quantity,
                    const DistributionStats& stats) {
  out << kDistCsvHeader << '\n';
  for (std::size_t i = 0; i < stats.mean.size(); ++i) {
    out << quantity << ',' << i << ',' << (std::uint64_t{1} << i) << ','
        << format_double(stats.mean[i]) << ',' << format_double(stats.stddev[i])
        << ',' << stats.n_windows << '\n';
  }
}

void write_fit_csv(std::ostream& out, const std::vector<QuantityFit>& fits) {
  out << kFitCsvHeader << '\n';
  for (const QuantityFit& qf : fits) {
    for (FitNorm norm : {FitNorm::Squared, FitNorm::Absolute, FitNorm::Zero}) {
      const NormFit& f = qf.fit.by_norm(norm);
      out << qf.quantity << ',' << fit_norm_name(norm) << ','
          << format_double(f.alpha) << ',' << format_double(f.beta) << ','
          << format_double(f.residual) << ','
          << format_double(qf.fit.delta_alpha) << '\n';
    }
  }
}

void write_level_outputs(const std::filesystem::path& out_dir,
                         const std::vector<LevelResult>& levels) {
  namespace fs = std::filesystem;
  for (const LevelResult& level : levels) {
    const fs::path dir = out_dir / ("level_" + std::to_string(level.level));
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

    {
      std::ofstream out(dir / "summaries.csv", std::ios::trunc);
      if (!out) throw IoError("cannot write " + (dir / "summaries.csv").string());
      write_summary_csv(out, level.summaries, level.n_v);
    }
    for (std::size_t q = 0; q < kNumDistQuantities; ++q) {
      const std::string_view name = dist_quantity_name(static_cast<DistQuantity>(q));
      const fs::path file = dir / ("dist_" + std::string(name) + ".csv");
      std::ofstream out(file, std::ios::trunc);
      if (!out) throw IoError("cannot write " + file.string());
      write_dist_csv(out, name, level.distributions[q]);
    }
  }
}

}  // namespace tmat
