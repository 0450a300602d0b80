#include "paddy/crop.hpp"

#include <cmath>
#include <string>

#include "paddy/error.hpp"

namespace paddy {

namespace {

void check_invariants(const KcSchedule& s) {
  require(s.len_ini >= 1 && s.len_dev >= 1 && s.len_mid >= 1 && s.len_late >= 1,
          ErrorCode::InvalidArgument, "Kc stage lengths must each be at least one day");
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  require(positive(s.kc_ini) && positive(s.kc_mid) && positive(s.kc_end), ErrorCode::InvalidArgument,
          "Kc values must be positive");
}

}  // namespace

void validate_schedule(const KcSchedule& s, int season_days) {
  check_invariants(s);
  const int total = s.season_length();
  if (total != season_days) {
    fail(ErrorCode::ScheduleMismatch,
         "Kc stages sum to " + std::to_string(total) + " days (" + std::to_string(s.len_ini) + "+" +
             std::to_string(s.len_dev) + "+" + std::to_string(s.len_mid) + "+" +
             std::to_string(s.len_late) + ") but the season has " + std::to_string(season_days) +
             " days (difference " + std::to_string(total - season_days) + ")");
  }
}

double kc_at(const KcSchedule& s, int dap) {
  check_invariants(s);
  if (dap < 0 || dap >= s.season_length())
    fail(ErrorCode::OutOfSeason, "day " + std::to_string(dap) + " outside season of " +
                                     std::to_string(s.season_length()) + " days");
  const int dev_start = s.len_ini;
  const int mid_start = dev_start + s.len_dev;
  const int late_start = mid_start + s.len_mid;
  if (dap < dev_start) return s.kc_ini;
  if (dap < mid_start)
    return s.kc_ini + (s.kc_mid - s.kc_ini) * static_cast<double>(dap - dev_start) / s.len_dev;
  if (dap < late_start) return s.kc_mid;
  return s.kc_mid + (s.kc_end - s.kc_mid) * static_cast<double>(dap - late_start) / s.len_late;
}

}  // namespace paddy
