#pragma once

// Hargreaves reference evapotranspiration and the temperature-driven
// ET0 network.

#include <span>
#include <vector>

#include "paddy/ann.hpp"
#include "paddy/calendar.hpp"

namespace paddy {

/// One day of weather. Temperatures in degC, precipitation in mm/day.
struct DailyWeather {
  int day_index = 0;  ///< days after planting
  Date date{};
  double tmax = 0.0;
  double tavg = 0.0;
  double tmin = 0.0;
  double precip = 0.0;

  /// Throws InvalidArgument unless tmin <= tavg <= tmax and precip >= 0.
  void validate() const;
};

/// 06 deg 50' 43" S, the default experiment site.
inline constexpr double kDefaultLatitudeDeg = -(6.0 + 50.0 / 60.0 + 43.0 / 3600.0);
inline constexpr double kDefaultAltitudeM = 536.0;

struct SiteLocation {
  double latitude = kDefaultLatitudeDeg * 3.14159265358979323846 / 180.0;  ///< radians, south negative
  double altitude = kDefaultAltitudeM;  ///< metres; metadata only

  void validate() const;
};

/// Solar constant, MJ m^-2 min^-1.
inline constexpr double kSolarConstant = 0.0820;

/// Top-of-atmosphere radiation (MJ m^-2 day^-1) for a latitude and day of
/// year, using a 365-day year. Never negative; zero in polar night.
double extraterrestrial_radiation(const SiteLocation& site, int doy);

/// 0.0023 * (tavg + 17.8) * sqrt(tmax - tmin) * 0.408 * ra, in mm/day,
/// floored at zero.
double hargreaves_et0(double tmax, double tavg, double tmin, double ra);

/// Hargreaves ET0 for a day, with Ra from the day's calendar date.
double hargreaves_et0(const DailyWeather& day, const SiteLocation& site);

struct Et0Normalizers {
  Normalizer tmax{0.0, 50.0};
  Normalizer tavg{0.0, 50.0};
  Normalizer tmin{0.0, 50.0};
  Normalizer et0{0.0, 10.0};

  bool operator==(const Et0Normalizers&) const = default;
};

inline constexpr std::size_t kEt0Hidden = 8;

/// 3-8-1 network mapping (tmax, tavg, tmin) to ET0.
struct Et0Model {
  Mlp net{MlpTopology{3, kEt0Hidden, 1}};
  Et0Normalizers norms;

  /// Throws Dimension unless the network is 3-8-1.
  void validate() const;
};

struct Et0Training {
  Et0Model model;
  std::vector<double> loss_history;
};

std::vector<Pattern> build_et0_patterns(std::span<const DailyWeather> days, const SiteLocation& site,
                                        const Et0Normalizers& norms);

/// Trains against Hargreaves ET0 targets.
Et0Training train_et0_model(std::span<const DailyWeather> days, const SiteLocation& site,
                            const TrainConfig& cfg, const Et0Normalizers& norms = {});

/// Result lies within norms.et0.
double predict_et0(const Et0Model& model, double tmax, double tavg, double tmin);

}  // namespace paddy
