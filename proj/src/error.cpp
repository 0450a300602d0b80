#include "paddy/error.hpp"

namespace paddy {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::Dimension: return "dimension";
    case ErrorCode::InvalidNormalizer: return "invalid-normalizer";
    case ErrorCode::InsufficientHistory: return "insufficient-history";
    case ErrorCode::OutOfSeason: return "out-of-season";
    case ErrorCode::ScheduleMismatch: return "schedule-mismatch";
    case ErrorCode::Ordering: return "ordering";
    case ErrorCode::UndefinedMetric: return "undefined-metric";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Version: return "version";
    case ErrorCode::Io: return "io";
    case ErrorCode::Config: return "config";
  }
  return "unknown";
}

}  // namespace paddy
