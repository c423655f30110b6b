#include "tmat/parse.hpp"

#include <charconv>
#include <cstring>
#include <fstream>

#include "tmat/error.hpp"

namespace tmat {

namespace {

constexpr std::size_t kBufSize = std::size_t{1} << 20;

bool parse_u64(std::string_view field, std::uint64_t& out) {
  if (field.empty()) return false;
  const char* first = field.data();
  const char* last = first + field.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool parse_u32(std::string_view field, std::uint32_t& out) {
  std::uint64_t v;
  if (!parse_u64(field, v) || v > 0xFFFFFFFFull) return false;
  out = static_cast<std::uint32_t>(v);
  return true;
}

// a.b.c.d -> big-endian 32-bit value in the low bits of a 64-bit id.
bool parse_dotted_quad(std::string_view field, std::uint64_t& out) {
  std::uint64_t value = 0;
  std::size_t start = 0;
  for (int octet = 0; octet < 4; ++octet) {
    std::size_t stop = octet < 3 ? field.find('.', start) : field.size();
    if (stop == std::string_view::npos) return false;
    std::uint64_t part;
    if (!parse_u64(field.substr(start, stop - start), part) || part > 255)
      return false;
    value = (value << 8) | part;
    start = stop + 1;
  }
  out = value;
  return true;
}

}  // namespace

RecordFormat parse_format_tag(std::string_view tag) {
  if (tag == "csv") return RecordFormat::Csv;
  if (tag == "dotted") return RecordFormat::Dotted;
  throw UsageError("unknown input format '" + std::string(tag) +
                   "' (expected csv or dotted)");
}

std::optional<PacketRecord> parse_record_line(std::string_view line,
                                              RecordFormat format) {
  // timestamp , src , dst [, proto] -- no spaces, no extra fields
  std::string_view fields[4];
  int n_fields = 0;
  std::size_t start = 0;
  while (true) {
    std::size_t stop = line.find(',', start);
    if (n_fields == 4) return std::nullopt;
    fields[n_fields++] =
        line.substr(start, stop == std::string_view::npos ? stop : stop - start);
    if (stop == std::string_view::npos) break;
    start = stop + 1;
  }
  if (n_fields < 3) return std::nullopt;

  PacketRecord rec;
  if (!parse_u64(fields[0], rec.timestamp)) return std::nullopt;
  if (format == RecordFormat::Csv) {
    if (!parse_u64(fields[1], rec.src)) return std::nullopt;
    if (!parse_u64(fields[2], rec.dst)) return std::nullopt;
  } else {
    if (!parse_dotted_quad(fields[1], rec.src)) return std::nullopt;
    if (!parse_dotted_quad(fields[2], rec.dst)) return std::nullopt;
  }
  if (n_fields == 4 && !parse_u32(fields[3], rec.proto)) return std::nullopt;
  return rec;
}

RecordStreamParser::RecordStreamParser(std::istream& in, RecordFormat format)
    : in_(in), format_(format), buf_(kBufSize) {}

// Pulls the next line (without terminator) into line_/pos_ bookkeeping;
// returns false at end of stream.
bool RecordStreamParser::fill_line() {
  line_.clear();
  bool have_partial = false;
  while (true) {
    if (pos_ == end_) {
      if (eof_) return have_partial;
      in_.read(buf_.data(), static_cast<std::streamsize>(buf_.size()));
      if (in_.bad()) throw IoError("read failure on input stream");
      pos_ = 0;
      end_ = static_cast<std::size_t>(in_.gcount());
      if (end_ < buf_.size()) eof_ = true;
      if (end_ == 0) return have_partial;
    }
    const char* base = buf_.data() + pos_;
    const char* nl =
        static_cast<const char*>(std::memchr(base, '\n', end_ - pos_));
    if (nl != nullptr) {
      line_.append(base, static_cast<std::size_t>(nl - base));
      pos_ += static_cast<std::size_t>(nl - base) + 1;
      return true;
    }
    line_.append(base, end_ - pos_);
    pos_ = end_;
    have_partial = !line_.empty();
  }
}

std::optional<PacketRecord> RecordStreamParser::next() {
  while (fill_line()) {
    std::string_view line(line_);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    std::optional<PacketRecord> rec = parse_record_line(line, format_);
    // A timestamp running backwards violates the stream invariant; treat the
    // offending line as malformed rather than emitting an unordered record.
    if (rec && have_last_ && rec->timestamp < last_timestamp_) rec.reset();
    if (!rec) {
      ++skipped_;
      continue;
    }
    last_timestamp_ = rec->timestamp;
    have_last_ = true;
    ++parsed_;
    return rec;
  }
  return std::nullopt;
}

ParseResult parse_records(std::istream& in, RecordFormat format) {
  RecordStreamParser parser(in, format);
  ParseResult result;
  while (std::optional<PacketRecord> rec = parser.next())
    result.records.push_back(*rec);
  result.skipped = parser.skipped();
  return result;
}

ParseResult parse_records_file(const std::filesystem::path& path,
                               RecordFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open input file: " + path.string());
  return parse_records(in, format);
}

}  // namespace tmat
