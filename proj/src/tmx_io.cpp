#include "tmat/tmx_io.hpp"

#include <fstream>

#include "tmat/error.hpp"

namespace tmat {

namespace {

constexpr std::uint8_t kMagic[4] = {'T', 'M', 'X', 0x01};

void put_varint(std::vector<std::uint8_t>& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<std::uint8_t>(v) | 0x80);
    v >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(v));
}

inline std::uint64_t zigzag(std::int64_t v) {
  return (static_cast<std::uint64_t>(v) << 1) ^
         static_cast<std::uint64_t>(v >> 63);
}

inline std::int64_t unzigzag(std::uint64_t z) {
  return static_cast<std::int64_t>((z >> 1) ^ (~(z & 1) + 1));
}

struct Reader {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;

  std::uint64_t varint(const char* what) {
    std::uint64_t v = 0;
    int shift = 0;
    const std::size_t start = pos;
    while (true) {
      if (pos >= bytes.size())
        throw DecodeError(std::string("truncated ") + what, start);
      const std::uint8_t byte = bytes[pos++];
      if (shift == 63 && byte > 1)
        throw DecodeError(std::string(what) + " exceeds 64 bits", start);
      v |= static_cast<std::uint64_t>(byte & 0x7F) << shift;
      if ((byte & 0x80) == 0) {
        // canonical LEB128: no padding byte
        if (byte == 0 && pos - start > 1)
          throw DecodeError(std::string("non-canonical ") + what, start);
        return v;
      }
      shift += 7;
      if (shift > 63)
        throw DecodeError(std::string(what) + " exceeds 64 bits", start);
    }
  }
};

}  // namespace

std::vector<std::uint8_t> serialize(const TrafficMatrix& a) {
  const std::vector<Entry>& entries = a.entries();

  std::uint64_t n_rows = 0;
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (i == 0 || entries[i].row != entries[i - 1].row) ++n_rows;

  std::vector<std::uint8_t> out;
  out.reserve(16 + entries.size() * 4);
  out.insert(out.end(), kMagic, kMagic + 4);
  put_varint(out, a.meta().window_first);
  put_varint(out, a.meta().window_last);
  put_varint(out, a.meta().ts_min);
  put_varint(out, a.meta().ts_max);
  put_varint(out, n_rows);
  put_varint(out, entries.size());

  std::uint64_t prev_row = 0;
  std::uint64_t prev_first_col = 0;
  std::size_t i = 0;
  bool first_group = true;
  while (i < entries.size()) {
    const NodeId row = entries[i].row;
    std::size_t group_end = i;
    while (group_end < entries.size() && entries[group_end].row == row)
      ++group_end;

    put_varint(out, first_group ? row : row - prev_row);
    put_varint(out, group_end - i);

    // First column of the group is zigzag-coded against the previous group's
    // first column; later columns are plain ascending deltas.
    const NodeId first_col = entries[i].col;
    put_varint(out, zigzag(static_cast<std::int64_t>(first_col) -
                           static_cast<std::int64_t>(prev_first_col)));
    put_varint(out, entries[i].count);
    for (std::size_t k = i + 1; k < group_end; ++k) {
      put_varint(out, entries[k].col - entries[k - 1].col);
      put_varint(out, entries[k].count);
    }

    prev_row = row;
    prev_first_col = first_col;
    first_group = false;
    i = group_end;
  }
  return out;
}

TrafficMatrix deserialize(std::span<const std::uint8_t> bytes) {
  Reader r{bytes};
  if (bytes.size() < 4 || bytes[0] != 'T' || bytes[1] != 'M' || bytes[2] != 'X')
    throw DecodeError("bad magic, not a .tmx container", 0);
  if (bytes[3] != 0x01)
    throw DecodeError("unsupported .tmx version " + std::to_string(bytes[3]), 3);
  r.pos = 4;

  MatrixMeta meta;
  meta.window_first = r.varint("window_first");
  meta.window_last = r.varint("window_last");
  meta.ts_min = r.varint("ts_min");
  meta.ts_max = r.varint("ts_max");
  const std::uint64_t n_rows = r.varint("row count");
  const std::uint64_t nnz = r.varint("entry count");
  if (n_rows > nnz)
    throw DecodeError("row count exceeds entry count", r.pos);
  // Every entry takes at least two body bytes; a declared count beyond that
  // bound is corrupt, and rejecting it here keeps allocations honest.
  if (nnz > (bytes.size() - r.pos) / 2 + 1)
    throw DecodeError("entry count exceeds container size", r.pos);

  std::vector<Entry> entries;
  entries.reserve(nnz);
  std::uint64_t prev_row = 0;
  std::uint64_t prev_first_col = 0;
  for (std::uint64_t g = 0; g < n_rows; ++g) {
    const std::size_t group_at = r.pos;
    const std::uint64_t row_delta = r.varint("row delta");
    std::uint64_t row;
    if (g == 0) {
      row = row_delta;
    } else {
      if (row_delta == 0)
        throw DecodeError("zero row delta", group_at);
      row = prev_row + row_delta;
      if (row < prev_row) throw DecodeError("row id overflow", group_at);
    }

    const std::uint64_t n_in_row = r.varint("row entry count");
    if (n_in_row == 0) throw DecodeError("empty row group", group_at);
    if (entries.size() + n_in_row > nnz)
      throw DecodeError("entries exceed declared count", group_at);

    const std::size_t col_at = r.pos;
    const std::int64_t first_delta =
        unzigzag(r.varint("first column delta"));
    const std::uint64_t col0 =
        prev_first_col + static_cast<std::uint64_t>(first_delta);
    if (first_delta < 0 &&
        static_cast<std::uint64_t>(-first_delta) > prev_first_col)
      throw DecodeError("column id underflow", col_at);
    if (first_delta > 0 && col0 < prev_first_col)
      throw DecodeError("column id overflow", col_at);

    std::uint64_t col = col0;
    std::uint64_t count = r.varint("entry count value");
    if (count == 0) throw DecodeError("zero entry count", col_at);
    entries.push_back(Entry{row, col, count});
    for (std::uint64_t k = 1; k < n_in_row; ++k) {
      const std::size_t entry_at = r.pos;
      const std::uint64_t col_delta = r.varint("column delta");
      if (col_delta == 0) throw DecodeError("zero column delta", entry_at);
      if (col + col_delta < col)
        throw DecodeError("column id overflow", entry_at);
      col += col_delta;
      count = r.varint("entry count value");
      if (count == 0) throw DecodeError("zero entry count", entry_at);
      entries.push_back(Entry{row, col, count});
    }

    prev_row = row;
    prev_first_col = col0;
  }
  if (entries.size() != nnz)
    throw DecodeError("entries fall short of declared count", r.pos);
  if (r.pos != bytes.size())
    throw DecodeError("trailing bytes after matrix body", r.pos);

  return TrafficMatrix::from_sorted_unique(std::move(entries), meta);
}

void write_tmx(const std::filesystem::path& path, const TrafficMatrix& a) {
  const std::vector<std::uint8_t> bytes = serialize(a);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failure: " + path.string());
}

TrafficMatrix read_tmx(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failure: " + path.string());
  return deserialize(bytes);
}

}  // namespace tmat
