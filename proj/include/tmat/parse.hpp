#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tmat/record.hpp"

namespace tmat {

enum class RecordFormat {
  Csv,     // timestamp,src,dst[,proto] with decimal 64-bit endpoints
  Dotted,  // timestamp,a.b.c.d,e.f.g.h[,proto] with IPv4 dotted quads
};

// Maps a format tag from the CLI onto RecordFormat. Throws UsageError for
// anything other than "csv" or "dotted".
RecordFormat parse_format_tag(std::string_view tag);

// Parses a single record line (no trailing newline). Returns nullopt for
// malformed input. Comment lines and blank lines are not handled here.
std::optional<PacketRecord> parse_record_line(std::string_view line,
                                              RecordFormat format);

// Incremental record reader over a byte stream. Lines starting with '#' and
// blank lines are ignored; malformed lines (bad field syntax, overflow,
// timestamp running backwards) are counted and skipped.
class RecordStreamParser {
 public:
  RecordStreamParser(std::istream& in, RecordFormat format);

  // Next well-formed record, or nullopt at end of stream.
  std::optional<PacketRecord> next();

  std::uint64_t skipped() const { return skipped_; }
  std::uint64_t parsed() const { return parsed_; }

 private:
  bool fill_line();

  std::istream& in_;
  RecordFormat format_;
  std::vector<char> buf_;
  std::size_t pos_ = 0;
  std::size_t end_ = 0;
  bool eof_ = false;
  std::string line_;
  std::uint64_t skipped_ = 0;
  std::uint64_t parsed_ = 0;
  std::uint64_t last_timestamp_ = 0;
  bool have_last_ = false;
};

struct ParseResult {
  std::vector<PacketRecord> records;
  std::uint64_t skipped = 0;
};

// Drains a whole stream. Unreadable streams raise IoError.
ParseResult parse_records(std::istream& in, RecordFormat format);
ParseResult parse_records_file(const std::filesystem::path& path,
                               RecordFormat format);

}  // namespace tmat
