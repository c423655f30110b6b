#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tmat {

// Error categories map onto CLI exit codes: usage=1, data=2, io=3.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Decode failure in a binary container; carries the byte offset where
// decoding stopped.
struct DecodeError : DataError {
  DecodeError(const std::string& msg, std::size_t at)
      : DataError(msg + " (byte offset " + std::to_string(at) + ")"),
        offset(at) {}

  std::size_t offset;
};

}  // namespace tmat
