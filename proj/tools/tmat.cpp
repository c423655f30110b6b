// tmat: darkspace traffic-matrix analytics pipeline.
//
// Subcommands stage work through files so each step can be rerun alone:
//   synth    write a reproducible heavy-tailed packet trace as CSV
//   ingest   parse/filter/anonymize a trace into a level_0/*.tmx leaf archive
//   analyze  aggregate leaves hierarchically, write per-level CSV products
//   fit      fit beta*N_V^alpha per quantity from per-level summaries
//   report   bundle summaries, distributions, and fits into one JSON file

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tmat/anonymize.hpp"
#include "tmat/csv_io.hpp"
#include "tmat/error.hpp"
#include "tmat/hierarchy.hpp"
#include "tmat/parallel.hpp"
#include "tmat/parse.hpp"
#include "tmat/quantities.hpp"
#include "tmat/scaling.hpp"
#include "tmat/synth.hpp"
#include "tmat/tmx_io.hpp"
#include "tmat/traffic_matrix.hpp"
#include "tmat/window.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr const char* kAnonKeyEnvVar = "TMAT_ANON_KEY";

// ---------------------------------------------------------------------------
// small shared helpers

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t stop = line.find(',', start);
    fields.push_back(line.substr(start, stop == std::string::npos
                                            ? stop
                                            : stop - start));
    if (stop == std::string::npos) break;
    start = stop + 1;
  }
  return fields;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path,
                                               const std::string& expect_header) {
  std::ifstream in(path);
  if (!in) throw tmat::IoError("cannot open: " + path.string());
  std::string line;
  if (!std::getline(in, line))
    throw tmat::DataError("empty CSV file: " + path.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != expect_header)
    throw tmat::DataError("unexpected CSV header in " + path.string());
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(split_csv_line(line));
  }
  return rows;
}

std::uint64_t to_u64(const std::string& s, const char* what) {
  std::uint64_t v;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw tmat::DataError(std::string("bad ") + what + " value '" + s + "'");
  return v;
}

double to_double(const std::string& s, const char* what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty())
    throw tmat::DataError(std::string("bad ") + what + " value '" + s + "'");
  return v;
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw tmat::IoError("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw tmat::IoError("write failure: " + path.string());
}

std::string leaf_file_name(std::uint64_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "leaf_%06llu.tmx",
                static_cast<unsigned long long>(index));
  return buf;
}

std::vector<fs::path> list_leaf_files(const fs::path& dir) {
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.path().extension() == ".tmx") files.push_back(entry.path());
  }
  if (ec) throw tmat::IoError("cannot list " + dir.string() + ": " + ec.message());
  std::sort(files.begin(), files.end());
  return files;
}

// ---------------------------------------------------------------------------
// synth

struct SynthOptions {
  tmat::SynthModel model;
  std::uint64_t packets = 1ull << 20;
  std::string out;
};

int cmd_synth(const SynthOptions& opt) {
  opt.model.validate();
  std::ofstream out(opt.out, std::ios::binary | std::ios::trunc);
  if (!out) throw tmat::IoError("cannot open for writing: " + opt.out);

  out << "# synthetic trace: packets=" << opt.packets
      << " seed=" << opt.model.seed << " sources=" << opt.model.n_sources
      << " dests=" << opt.model.n_destinations
      << " src_exp=" << tmat::format_double(opt.model.source_exponent)
      << " dst_exp=" << tmat::format_double(opt.model.dest_exponent)
      << " scan_fraction=" << tmat::format_double(opt.model.scan_fraction)
      << " scanners=" << opt.model.n_scanners << '\n';

  tmat::TraceGenerator gen(opt.model);
  std::string buf;
  buf.reserve(1 << 20);
  char num[24];
  auto append_u64 = [&](std::uint64_t v, char sep) {
    auto [ptr, ec] = std::to_chars(num, num + sizeof(num), v);
    (void)ec;
    buf.append(num, ptr);
    buf.push_back(sep);
  };
  for (std::uint64_t i = 0; i < opt.packets; ++i) {
    const tmat::PacketRecord r = gen.next();
    append_u64(r.timestamp, ',');
    append_u64(r.src, ',');
    append_u64(r.dst, '\n');
    if (buf.size() > (1 << 20) - 128) {
      out << buf;
      buf.clear();
    }
  }
  out << buf;
  if (!out) throw tmat::IoError("write failure: " + opt.out);
  std::cerr << "tmat: synth: wrote " << opt.packets << " packets to " << opt.out
            << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// ingest

struct IngestOptions {
  std::string input;
  std::string format = "csv";
  std::string out;
  std::string anon_key_path;
  std::string anon_dst_key_path;
  bool no_anon = false;
  int leaf_log2 = 17;
  // filter clauses; empty/absent means accept-all
  std::vector<std::uint32_t> protocols;
  std::optional<std::uint64_t> src_min, src_max, dst_min, dst_max;
  std::optional<std::uint64_t> time_min, time_max;
};

tmat::FilterSpec filter_from_options(const IngestOptions& opt) {
  tmat::FilterSpec f;
  if (!opt.protocols.empty())
    f.allowed_protocols.emplace(opt.protocols.begin(), opt.protocols.end());
  auto range = [](std::optional<std::uint64_t> lo, std::optional<std::uint64_t> hi)
      -> std::optional<tmat::ClosedRange<std::uint64_t>> {
    if (!lo && !hi) return std::nullopt;
    return tmat::ClosedRange<std::uint64_t>{lo.value_or(0),
                                            hi.value_or(~std::uint64_t{0})};
  };
  f.src_range = range(opt.src_min, opt.src_max);
  f.dst_range = range(opt.dst_min, opt.dst_max);
  f.time_range = range(opt.time_min, opt.time_max);
  return f;
}

int cmd_ingest(const IngestOptions& opt) {
  if (opt.leaf_log2 < 1 || opt.leaf_log2 > 40)
    throw tmat::UsageError("--leaf-log2 must be in [1, 40]");

  std::string key_path = opt.anon_key_path;
  if (!opt.no_anon && key_path.empty()) {
    if (const char* env = std::getenv(kAnonKeyEnvVar)) key_path = env;
  }
  if (!opt.no_anon && key_path.empty())
    throw tmat::UsageError(
        "no anonymization key: pass --anon-key, set TMAT_ANON_KEY, or use "
        "--no-anon");

  std::optional<tmat::RecordAnonymizer> anonymizer;
  if (!opt.no_anon) {
    const tmat::AnonKey src_key = tmat::load_anon_key(key_path);
    const tmat::AnonKey dst_key = opt.anon_dst_key_path.empty()
                                      ? src_key
                                      : tmat::load_anon_key(opt.anon_dst_key_path);
    anonymizer.emplace(src_key, dst_key);
  }

  const tmat::RecordFormat format = tmat::parse_format_tag(opt.format);
  const tmat::FilterSpec filter = filter_from_options(opt);
  const std::uint64_t leaf_size = std::uint64_t{1} << opt.leaf_log2;

  const fs::path out_dir = fs::path(opt.out);
  const fs::path leaf_dir = out_dir / "level_0";
  std::error_code ec;
  fs::create_directories(leaf_dir, ec);
  if (ec)
    throw tmat::IoError("cannot create " + leaf_dir.string() + ": " + ec.message());

  std::ifstream in(opt.input, std::ios::binary);
  if (!in) throw tmat::IoError("cannot open input file: " + opt.input);
  tmat::RecordStreamParser parser(in, format);

  // Anonymization runs record-by-record through the shared memo table.
  std::vector<tmat::PacketRecord> pending;
  pending.reserve(leaf_size);
  std::uint64_t filtered_out = 0;
  std::uint64_t n_leaves = 0;
  std::uint64_t total_leaf_bytes = 0;

  auto flush_window = [&]() {
    tmat::LeafWindow window;
    window.index = n_leaves;
    window.records = std::move(pending);
    pending.clear();
    pending.reserve(leaf_size);
    const tmat::TrafficMatrix a = tmat::TrafficMatrix::from_packets(window);
    const std::vector<std::uint8_t> bytes = tmat::serialize(a);
    total_leaf_bytes += bytes.size();
    const fs::path path = leaf_dir / leaf_file_name(n_leaves);
    std::ofstream leaf_out(path, std::ios::binary | std::ios::trunc);
    if (!leaf_out) throw tmat::IoError("cannot open for writing: " + path.string());
    leaf_out.write(reinterpret_cast<const char*>(bytes.data()),
                   static_cast<std::streamsize>(bytes.size()));
    if (!leaf_out) throw tmat::IoError("write failure: " + path.string());
    ++n_leaves;
  };

  while (std::optional<tmat::PacketRecord> rec = parser.next()) {
    if (!filter.accepts(*rec)) {
      ++filtered_out;
      continue;
    }
    pending.push_back(anonymizer ? (*anonymizer)(*rec) : *rec);
    if (pending.size() == leaf_size) flush_window();
  }
  const std::uint64_t remainder = pending.size();

  ordered_json manifest;
  manifest["leaf_log2"] = opt.leaf_log2;
  manifest["leaves"] = n_leaves;
  manifest["remainder"] = remainder;
  manifest["parsed"] = parser.parsed();
  manifest["skipped"] = parser.skipped();
  manifest["filtered_out"] = filtered_out;
  manifest["anonymized"] = !opt.no_anon;
  manifest["format"] = opt.format;
  manifest["leaf_bytes_total"] = total_leaf_bytes;
  if (n_leaves > 0)
    manifest["bytes_per_packet"] =
        static_cast<double>(total_leaf_bytes) /
        static_cast<double>(n_leaves * leaf_size);
  write_text_file(out_dir / "ingest_manifest.json", manifest.dump(2) + "\n");

  std::cerr << "tmat: ingest: " << n_leaves << " leaves of 2^" << opt.leaf_log2
            << " packets, remainder " << remainder << ", skipped "
            << parser.skipped() << ", filtered out " << filtered_out << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeOptions {
  std::string input;
  std::string out;  // defaults to input
  int leaf_log2 = 17;
  int top_log2 = 27;
  int workers = 1;
  bool no_distributions = false;
};

int cmd_analyze(const AnalyzeOptions& opt) {
  tmat::HierarchyConfig cfg;
  cfg.leaf_log2 = opt.leaf_log2;
  cfg.top_log2 = opt.top_log2;
  cfg.workers = opt.workers;
  cfg.with_distributions = !opt.no_distributions;
  cfg.validate();

  const fs::path in_dir = fs::path(opt.input);
  const fs::path leaf_dir = in_dir / "level_0";
  if (!fs::is_directory(leaf_dir))
    throw tmat::DataError("no leaf archive at " + leaf_dir.string() +
                          " (run ingest first)");
  const std::vector<fs::path> files = list_leaf_files(leaf_dir);
  if (files.empty())
    throw tmat::DataError("no .tmx leaves in " + leaf_dir.string());

  std::vector<tmat::TrafficMatrix> leaves(files.size());
  tmat::parallel_for(files.size(), opt.workers,
                     [&](std::size_t i) { leaves[i] = tmat::read_tmx(files[i]); });

  const std::vector<tmat::LevelResult> levels =
      tmat::build_hierarchy(std::move(leaves), cfg);

  const fs::path out_dir = opt.out.empty() ? in_dir : fs::path(opt.out);
  tmat::write_level_outputs(out_dir, levels);

  std::cerr << "tmat: analyze: " << files.size() << " leaves, " << levels.size()
            << " levels written to " << out_dir.string() << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// fit

// Summary columns fit against window size, in output order.
constexpr const char* kFitQuantities[] = {
    "valid",     "links",        "max_link", "srcs",      "max_src_pkts",
    "max_fanout", "dsts",        "max_dst_pkts", "max_fanin",
};
constexpr int kSummaryColumnOffset = 2;  // columns before `valid`

struct FitCliOptions {
  std::string input;
  std::string out;  // defaults to <input>/fits.csv
  double zero_eps_factor = 1.05;
};

std::vector<fs::path> list_level_dirs(const fs::path& dir) {
  if (!fs::is_directory(dir))
    throw tmat::DataError("no analysis directory at " + dir.string());
  std::vector<std::pair<int, fs::path>> found;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("level_", 0) == 0 && entry.is_directory()) {
      int level;
      auto [ptr, pec] = std::from_chars(name.data() + 6, name.data() + name.size(), level);
      if (pec == std::errc() && ptr == name.data() + name.size())
        found.emplace_back(level, entry.path());
    }
  }
  if (ec) throw tmat::IoError("cannot list " + dir.string() + ": " + ec.message());
  std::sort(found.begin(), found.end());
  std::vector<fs::path> dirs;
  dirs.reserve(found.size());
  for (auto& [level, path] : found) dirs.push_back(std::move(path));
  return dirs;
}

// Per-level mean and population standard deviation of one summary column.
std::vector<tmat::ScalingPoint> scaling_series(
    const std::vector<std::vector<std::vector<std::string>>>& level_rows,
    const std::vector<std::uint64_t>& level_nv, std::size_t column) {
  std::vector<tmat::ScalingPoint> points;
  for (std::size_t lv = 0; lv < level_rows.size(); ++lv) {
    const auto& rows = level_rows[lv];
    if (rows.empty()) continue;
    double sum = 0;
    for (const auto& row : rows) sum += to_double(row[column], "summary");
    const double mean = sum / static_cast<double>(rows.size());
    double var = 0;
    for (const auto& row : rows) {
      const double d = to_double(row[column], "summary") - mean;
      var += d * d;
    }
    points.push_back(tmat::ScalingPoint{
        level_nv[lv], mean,
        std::sqrt(var / static_cast<double>(rows.size()))});
  }
  return points;
}

int cmd_fit(const FitCliOptions& opt) {
  const fs::path in_dir = fs::path(opt.input);
  const std::vector<fs::path> level_dirs = list_level_dirs(in_dir);
  if (level_dirs.size() < 2)
    throw tmat::DataError("fit needs at least two analyzed levels under " +
                          in_dir.string());

  std::vector<std::vector<std::vector<std::string>>> level_rows;
  std::vector<std::uint64_t> level_nv;
  for (const fs::path& dir : level_dirs) {
    auto rows = read_csv(dir / "summaries.csv", tmat::kSummaryCsvHeader);
    if (rows.empty())
      throw tmat::DataError("no windows in " + (dir / "summaries.csv").string());
    level_nv.push_back(to_u64(rows[0][1], "N_V"));
    level_rows.push_back(std::move(rows));
  }

  tmat::FitOptions fit_opts;
  if (!(opt.zero_eps_factor > 1.0))
    throw tmat::UsageError("--zero-eps-factor must be greater than 1");
  fit_opts.zero_eps = std::log(opt.zero_eps_factor);

  std::vector<tmat::QuantityFit> fits;
  for (std::size_t q = 0; q < std::size(kFitQuantities); ++q) {
    const std::vector<tmat::ScalingPoint> points =
        scaling_series(level_rows, level_nv, q + kSummaryColumnOffset);
    fits.push_back(tmat::QuantityFit{kFitQuantities[q],
                                     tmat::fit_all_norms(points, fit_opts)});
  }

  const fs::path out_path =
      opt.out.empty() ? in_dir / "fits.csv" : fs::path(opt.out);
  std::ostringstream text;
  tmat::write_fit_csv(text, fits);
  write_text_file(out_path, text.str());
  std::cerr << "tmat: fit: " << fits.size() << " quantities over "
            << level_dirs.size() << " levels -> " << out_path.string() << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// report

struct ReportOptions {
  std::string input;
  std::string fits;  // defaults to <input>/fits.csv
  std::string out;
};

int cmd_report(const ReportOptions& opt) {
  const fs::path in_dir = fs::path(opt.input);
  const std::vector<fs::path> level_dirs = list_level_dirs(in_dir);
  if (level_dirs.empty())
    throw tmat::DataError("no analyzed levels under " + in_dir.string());

  ordered_json report;
  report["schema_version"] = 1;
  report["levels"] = ordered_json::array();

  std::vector<std::vector<std::vector<std::string>>> level_rows;
  std::vector<std::uint64_t> level_nv;

  for (const fs::path& dir : level_dirs) {
    const std::string name = dir.filename().string();
    ordered_json level;
    level["level"] = to_u64(name.substr(6), "level index");

    const auto rows = read_csv(dir / "summaries.csv", tmat::kSummaryCsvHeader);
    level["n_v"] = rows.empty() ? 0 : to_u64(rows[0][1], "N_V");
    if (!rows.empty()) {
      level_nv.push_back(to_u64(rows[0][1], "N_V"));
      level_rows.push_back(rows);
    }
    level["n_windows"] = rows.size();
    ordered_json summaries = ordered_json::array();
    for (const auto& row : rows) {
      ordered_json s;
      s["window_index"] = to_u64(row[0], "window_index");
      s["valid"] = to_u64(row[2], "valid");
      s["links"] = to_u64(row[3], "links");
      s["max_link"] = to_u64(row[4], "max_link");
      s["srcs"] = to_u64(row[5], "srcs");
      s["max_src_pkts"] = to_u64(row[6], "max_src_pkts");
      s["max_fanout"] = to_u64(row[7], "max_fanout");
      s["dsts"] = to_u64(row[8], "dsts");
      s["max_dst_pkts"] = to_u64(row[9], "max_dst_pkts");
      s["max_fanin"] = to_u64(row[10], "max_fanin");
      summaries.push_back(std::move(s));
    }
    level["summaries"] = std::move(summaries);

    ordered_json dists;
    for (std::size_t q = 0; q < tmat::kNumDistQuantities; ++q) {
      const std::string qname{
          tmat::dist_quantity_name(static_cast<tmat::DistQuantity>(q))};
      const fs::path file = dir / ("dist_" + qname + ".csv");
      if (!fs::exists(file)) continue;
      ordered_json bins = ordered_json::array();
      for (const auto& row : read_csv(file, tmat::kDistCsvHeader)) {
        ordered_json b;
        b["bin_index"] = to_u64(row[1], "bin_index");
        b["d_i"] = to_u64(row[2], "d_i");
        b["D_mean"] = to_double(row[3], "D_mean");
        b["D_std"] = to_double(row[4], "D_std");
        bins.push_back(std::move(b));
      }
      dists[qname] = std::move(bins);
    }
    level["distributions"] = std::move(dists);
    report["levels"].push_back(std::move(level));
  }

  const fs::path fits_path =
      opt.fits.empty() ? in_dir / "fits.csv" : fs::path(opt.fits);
  ordered_json fits = ordered_json::array();
  std::map<std::string, double> squared_alpha;
  if (fs::exists(fits_path)) {
    for (const auto& row : read_csv(fits_path, tmat::kFitCsvHeader)) {
      ordered_json f;
      f["quantity"] = row[0];
      f["norm"] = row[1];
      f["alpha"] = to_double(row[2], "alpha");
      // Fraction-of-window convention: quantity/N_V scales as N_V^(alpha-1).
      f["alpha_minus_1"] = to_double(row[2], "alpha") - 1.0;
      f["beta"] = to_double(row[3], "beta");
      f["residual"] = to_double(row[4], "residual");
      f["delta_alpha"] = to_double(row[5], "delta_alpha");
      if (row[1] == "squared") squared_alpha[row[0]] = f["alpha"].get<double>();
      fits.push_back(std::move(f));
    }
  }
  report["fits"] = std::move(fits);

  // Per-quantity mean/spread across window sizes, plus the curve collapsed
  // by the squared-norm exponent (flat when the power law holds).
  ordered_json scaling = ordered_json::array();
  if (level_rows.size() >= 2) {
    for (std::size_t q = 0; q < std::size(kFitQuantities); ++q) {
      const auto points =
          scaling_series(level_rows, level_nv, q + kSummaryColumnOffset);
      ordered_json entry;
      entry["quantity"] = kFitQuantities[q];
      ordered_json pts = ordered_json::array();
      for (const auto& p : points) {
        ordered_json pj;
        pj["n_v"] = p.n_v;
        pj["value"] = p.value;
        pj["spread"] = p.spread;
        pts.push_back(std::move(pj));
      }
      entry["points"] = std::move(pts);
      const auto alpha_it = squared_alpha.find(kFitQuantities[q]);
      if (alpha_it != squared_alpha.end()) {
        entry["normalized_by_alpha"] = alpha_it->second;
        ordered_json flat = ordered_json::array();
        for (const auto& p : tmat::normalize_curve(points, alpha_it->second)) {
          ordered_json pj;
          pj["n_v"] = p.n_v;
          pj["value"] = p.value;
          flat.push_back(std::move(pj));
        }
        entry["normalized"] = std::move(flat);
      }
      scaling.push_back(std::move(entry));
    }
  }
  report["scaling"] = std::move(scaling);

  write_text_file(fs::path(opt.out), report.dump(2) + "\n");
  std::cerr << "tmat: report: wrote " << opt.out << '\n';
  return 0;
}

}  // namespace

// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  CLI::App app{"darkspace traffic-matrix analytics"};
  app.require_subcommand(1);
  // Optional INI/TOML config with [subcommand] sections; flags win. Goes
  // before the subcommand: tmat --config run.ini analyze ...
  app.set_config("--config", "",
                 "config file with [subcommand] sections (place before the "
                 "subcommand); explicit flags win");

  SynthOptions synth_opt;
  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic trace");
  synth->configurable();
  synth->add_option("--packets", synth_opt.packets, "number of packets");
  synth->add_option("--seed", synth_opt.model.seed, "generator seed");
  synth->add_option("--sources", synth_opt.model.n_sources, "background source count");
  synth->add_option("--dests", synth_opt.model.n_destinations, "destination count");
  synth->add_option("--src-exp", synth_opt.model.source_exponent, "source Zipf exponent");
  synth->add_option("--dst-exp", synth_opt.model.dest_exponent, "destination Zipf exponent");
  synth->add_option("--scan-fraction", synth_opt.model.scan_fraction,
                    "fraction of packets from scanners");
  synth->add_option("--scanners", synth_opt.model.n_scanners, "scanner count");
  synth->add_option("--out", synth_opt.out, "output CSV path")->required();

  IngestOptions ingest_opt;
  CLI::App* ingest = app.add_subcommand("ingest", "build the leaf matrix archive");
  ingest->configurable();
  ingest->add_option("--input", ingest_opt.input, "packet trace file")->required();
  ingest->add_option("--format", ingest_opt.format, "input format: csv or dotted");
  auto* anon_key_opt =
      ingest->add_option("--anon-key", ingest_opt.anon_key_path,
                         "64-hex-char key file (or set TMAT_ANON_KEY)");
  auto* anon_dst_opt =
      ingest->add_option("--anon-dst-key", ingest_opt.anon_dst_key_path,
                         "separate key file for destination addresses");
  ingest->add_flag("--no-anon", ingest_opt.no_anon, "skip anonymization")
      ->excludes(anon_key_opt)
      ->excludes(anon_dst_opt);
  ingest->add_option("--leaf-log2", ingest_opt.leaf_log2, "log2 of leaf window size");
  ingest->add_option("--protocols", ingest_opt.protocols,
                     "keep only these protocol numbers");
  ingest->add_option("--src-min", ingest_opt.src_min, "minimum source id");
  ingest->add_option("--src-max", ingest_opt.src_max, "maximum source id");
  ingest->add_option("--dst-min", ingest_opt.dst_min, "minimum destination id");
  ingest->add_option("--dst-max", ingest_opt.dst_max, "maximum destination id");
  ingest->add_option("--time-min", ingest_opt.time_min, "minimum timestamp");
  ingest->add_option("--time-max", ingest_opt.time_max, "maximum timestamp");
  ingest->add_option("--out", ingest_opt.out, "output directory")->required();

  AnalyzeOptions analyze_opt;
  CLI::App* analyze = app.add_subcommand("analyze", "hierarchical aggregation");
  analyze->configurable();
  analyze->add_option("--input", analyze_opt.input, "directory with level_0 leaves")
      ->required();
  analyze->add_option("--out", analyze_opt.out,
                      "output directory (default: same as --input)");
  analyze->add_option("--leaf-log2", analyze_opt.leaf_log2, "log2 of leaf window size");
  analyze->add_option("--top-log2", analyze_opt.top_log2, "log2 of largest window");
  analyze->add_option("--workers", analyze_opt.workers, "worker thread count");
  analyze->add_flag("--no-distributions", analyze_opt.no_distributions,
                    "skip degree distributions");

  FitCliOptions fit_opt;
  CLI::App* fit = app.add_subcommand("fit", "fit scaling relations");
  fit->configurable();
  fit->add_option("--input", fit_opt.input, "analysis directory")->required();
  fit->add_option("--out", fit_opt.out, "fits CSV path (default: <input>/fits.csv)");
  fit->add_option("--zero-eps-factor", fit_opt.zero_eps_factor,
                  "zero-norm inlier band, as a multiplicative factor");

  ReportOptions report_opt;
  CLI::App* report = app.add_subcommand("report", "bundle analysis into JSON");
  report->configurable();
  report->add_option("--input", report_opt.input, "analysis directory")->required();
  report->add_option("--fits", report_opt.fits,
                     "fits CSV path (default: <input>/fits.csv)");
  report->add_option("--out", report_opt.out, "report JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "tmat: usage error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (synth->parsed()) return cmd_synth(synth_opt);
    if (ingest->parsed()) return cmd_ingest(ingest_opt);
    if (analyze->parsed()) return cmd_analyze(analyze_opt);
    if (fit->parsed()) return cmd_fit(fit_opt);
    if (report->parsed()) return cmd_report(report_opt);
  } catch (const tmat::UsageError& e) {
    std::cerr << "tmat: usage error: " << e.what() << '\n';
    return 1;
  } catch (const tmat::IoError& e) {
    std::cerr << "tmat: io error: " << e.what() << '\n';
    return 3;
  } catch (const tmat::DataError& e) {
    std::cerr << "tmat: data error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "tmat: data error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
