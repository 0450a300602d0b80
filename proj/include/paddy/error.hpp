#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace paddy {

/// Error classes surfaced by the library. The numeric value doubles as the
/// CLI exit code, so existing values must not be renumbered.
enum class ErrorCode : int {
  InvalidArgument = 2,
  Dimension = 3,
  InvalidNormalizer = 4,
  InsufficientHistory = 5,
  OutOfSeason = 6,
  ScheduleMismatch = 7,
  Ordering = 8,
  UndefinedMetric = 9,
  Parse = 10,
  Version = 11,
  Io = 12,
  Config = 13,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace paddy
