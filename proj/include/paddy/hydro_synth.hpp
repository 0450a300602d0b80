#pragma once

// Synthetic weather and a bucket water balance that together stand in for
// field observations of soil moisture.

#include <cstdint>
#include <span>
#include <vector>

#include "paddy/calendar.hpp"
#include "paddy/crop.hpp"
#include "paddy/evapo.hpp"
#include "paddy/moisture.hpp"

namespace paddy {

struct IrrigationEvent {
  int day_index = 0;
  double mm = 0.0;

  bool operator==(const IrrigationEvent&) const = default;
};

/// Single-layer bucket over the root zone. Volumetric contents in m3/m3.
struct FieldParams {
  double root_depth = 0.2;  ///< m
  double theta_sat = 0.55;
  double theta_res = 0.15;
  double theta_init = 0.45;
  double perc_rate = 3.0;          ///< mm/day
  double runoff_threshold = 0.52;  ///< storage above this runs off
  std::vector<IrrigationEvent> irrigation;

  void validate() const;
  /// mm of water held at volumetric content theta.
  double storage_mm(double theta) const { return theta * root_depth * 1000.0; }

  bool operator==(const FieldParams&) const = default;
};

/// Fluxes actually moved during one step, all in mm.
struct WaterLedger {
  double storage_before = 0.0;
  double storage_after = 0.0;
  double precip = 0.0;
  double irrigation = 0.0;
  double etc_demand = 0.0;
  double etc_taken = 0.0;
  double percolation = 0.0;
  double runoff = 0.0;

  /// storage_after - storage_before - (inflow - outflow); zero up to rounding.
  double imbalance() const {
    return (storage_after - storage_before) - (precip + irrigation - etc_taken - percolation - runoff);
  }
};

struct WaterBalanceStep {
  double theta_next = 0.0;
  WaterLedger ledger;
};

/// Adds precipitation and irrigation, then removes ETc, percolation and
/// runoff in that order. ETc and percolation never draw storage below
/// theta_res; runoff removes whatever exceeds runoff_threshold.
WaterBalanceStep water_balance_step(double theta, const FieldParams& p, double precip_mm, double irrig_mm,
                                    double etc_mm);

struct WeatherGenParams {
  std::uint64_t seed = 1;
  int n_days = 118;
  Date start_date{std::chrono::year{2010}, std::chrono::October, std::chrono::day{14}};
  double tavg_mean = 23.5;
  double tavg_amplitude = 0.6;
  int peak_doy = 320;  ///< day of year with the warmest seasonal mean
  double tavg_noise_sd = 0.8;
  double diurnal_range_mean = 9.0;
  double diurnal_range_log_sd = 0.2;  ///< day-to-day lognormal spread of the range
  double wet_day_prob = 0.6;      ///< on the first day
  double wet_day_prob_end = 0.6;  ///< on the last day; linear in between
  double wet_persistence = 0.3;  ///< 0 gives independent days
  double precip_mean_wet = 14.0;  ///< mm on a wet day

  void validate() const;

  bool operator==(const WeatherGenParams&) const = default;
};

/// Seeded daily weather. day_index counts from start_date.
std::vector<DailyWeather> generate_weather(const WeatherGenParams& g);

struct TruthSeries {
  std::vector<double> theta;        ///< end-of-day content
  std::vector<ForcingDay> forcing;  ///< Hargreaves ET0, precip, Kc
  std::vector<double> etc;          ///< Kc * ET0 demand
  std::vector<WaterLedger> ledger;
};

/// Runs the bucket over the season. Day d uses Kc at weather[d].day_index.
TruthSeries generate_truth(std::span<const DailyWeather> weather, const SiteLocation& site,
                           const KcSchedule& kc, const FieldParams& p);

}  // namespace paddy
