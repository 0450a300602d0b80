#pragma once

// Half-hourly station records, daily aggregation and the daily CSV format.

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paddy/evapo.hpp"

namespace paddy {

using Timestamp = std::chrono::sys_seconds;

/// One 30-minute station reading; the timestamp labels the interval start.
struct HalfHourRecord {
  Timestamp timestamp{};
  double temp = 0.0;    ///< degC
  double precip = 0.0;  ///< mm in the interval
  std::optional<double> theta;
};

/// A daily weather row plus the day's mean soil moisture, when measured.
struct DailyRecord {
  DailyWeather weather;
  std::optional<double> theta;
};

struct DayGap {
  Date date{};
  int records = 0;
};

struct AggregateResult {
  std::vector<DailyRecord> days;
  std::vector<DayGap> gaps;  ///< days dropped for low coverage
};

inline constexpr int kIntervalsPerDay = 48;
inline constexpr int kDefaultMinCoverage = 40;

/// Groups records by calendar day. Days with fewer than min_coverage
/// records are excluded and listed in `gaps`; days with no records at all
/// between the first and last day are reported too. day_index counts from
/// `planting` when given, otherwise from the first day seen.
AggregateResult daily_aggregate(std::span<const HalfHourRecord> records, int min_coverage = kDefaultMinCoverage,
                                std::optional<Date> planting = std::nullopt);

/// Accepts YYYY-MM-DDTHH:MM[:SS] or the same with a space separator.
Timestamp parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp ts);

/// Header: timestamp_iso8601,temp_c,precip_mm[,theta_vwc]. Rows must be
/// strictly increasing in time (Ordering error otherwise).
std::vector<HalfHourRecord> read_half_hourly_csv(std::istream& in, const std::string& source = "<stream>");
std::vector<HalfHourRecord> read_half_hourly_csv(const std::filesystem::path& path);
void write_half_hourly_csv(std::ostream& out, std::span<const HalfHourRecord> records);

/// Header: date,day_index,tmax_c,tavg_c,tmin_c,precip_mm[,theta_vwc].
std::vector<DailyRecord> read_daily_csv(std::istream& in, const std::string& source = "<stream>");
std::vector<DailyRecord> read_daily_csv(const std::filesystem::path& path);
void write_daily_csv(std::ostream& out, std::span<const DailyRecord> days);
void write_daily_csv(const std::filesystem::path& path, std::span<const DailyRecord> days);

}  // namespace paddy
