#pragma once

namespace paddy {

/// Four-stage crop-coefficient curve: flat initial stage, linear rise over
/// development, flat mid-season, linear decline over the late season.
struct KcSchedule {
  int len_ini = 20;
  int len_dev = 30;
  int len_mid = 40;
  int len_late = 30;
  double kc_ini = 1.05;
  double kc_mid = 1.20;
  double kc_end = 0.90;

  int season_length() const noexcept { return len_ini + len_dev + len_mid + len_late; }

  bool operator==(const KcSchedule&) const = default;
};

/// Throws InvalidArgument on non-positive stage lengths or Kc values and
/// ScheduleMismatch when the stages do not add up to season_days.
void validate_schedule(const KcSchedule& s, int season_days);

/// Kc on a given day after planting; OutOfSeason outside [0, season_length).
double kc_at(const KcSchedule& s, int dap);

}  // namespace paddy
