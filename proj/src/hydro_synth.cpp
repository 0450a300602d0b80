#include "paddy/hydro_synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "paddy/error.hpp"

namespace paddy {

void FieldParams::validate() const {
  require(std::isfinite(root_depth) && root_depth > 0.0, ErrorCode::InvalidArgument,
          "root depth must be positive");
  require(theta_res >= 0.0 && theta_res < theta_init && theta_init <= theta_sat && theta_sat <= 1.0,
          ErrorCode::InvalidArgument, "expected 0 <= theta_res < theta_init <= theta_sat <= 1");
  require(runoff_threshold > theta_res && runoff_threshold <= theta_sat, ErrorCode::InvalidArgument,
          "runoff threshold must lie in (theta_res, theta_sat]");
  require(std::isfinite(perc_rate) && perc_rate >= 0.0, ErrorCode::InvalidArgument,
          "percolation rate must be non-negative");
  for (const auto& ev : irrigation)
    require(std::isfinite(ev.mm) && ev.mm >= 0.0, ErrorCode::InvalidArgument,
            "irrigation amounts must be non-negative");
}

WaterBalanceStep water_balance_step(double theta, const FieldParams& p, double precip_mm, double irrig_mm,
                                    double etc_mm) {
  p.validate();
  auto nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
  require(nonneg(precip_mm) && nonneg(irrig_mm) && nonneg(etc_mm), ErrorCode::InvalidArgument,
          "water fluxes must be non-negative");
  require(theta >= p.theta_res && theta <= p.theta_sat, ErrorCode::InvalidArgument,
          "theta " + std::to_string(theta) + " outside [theta_res, theta_sat]");

  const double floor_mm = p.storage_mm(p.theta_res);
  const double runoff_mm = p.storage_mm(p.runoff_threshold);

  WaterLedger l;
  l.storage_before = p.storage_mm(theta);
  l.precip = precip_mm;
  l.irrigation = irrig_mm;
  l.etc_demand = etc_mm;

  double s = l.storage_before + precip_mm + irrig_mm;
  l.etc_taken = std::min(etc_mm, std::max(0.0, s - floor_mm));
  s -= l.etc_taken;
  l.percolation = std::min(p.perc_rate, std::max(0.0, s - floor_mm));
  s -= l.percolation;
  l.runoff = std::max(0.0, s - runoff_mm);
  s -= l.runoff;
  l.storage_after = s;

  const double theta_next = std::clamp(s / (p.root_depth * 1000.0), p.theta_res, p.theta_sat);
  return WaterBalanceStep{theta_next, l};
}

void WeatherGenParams::validate() const {
  require(n_days >= 1, ErrorCode::InvalidArgument, "weather generator needs n_days >= 1");
  require(start_date.ok(), ErrorCode::InvalidArgument, "invalid start date");
  require(wet_day_prob >= 0.0 && wet_day_prob <= 1.0 && wet_day_prob_end >= 0.0 && wet_day_prob_end <= 1.0,
          ErrorCode::InvalidArgument,
          "wet-day probability must be in [0, 1]");
  require(wet_persistence >= 0.0 && wet_persistence < 1.0, ErrorCode::InvalidArgument,
          "wet persistence must be in [0, 1)");
  require(std::isfinite(diurnal_range_mean) && diurnal_range_mean > 0.0, ErrorCode::InvalidArgument,
          "mean diurnal range must be positive");
  require(std::isfinite(diurnal_range_log_sd) && diurnal_range_log_sd >= 0.0, ErrorCode::InvalidArgument,
          "diurnal range spread must be non-negative");
  require(std::isfinite(precip_mean_wet) && precip_mean_wet > 0.0, ErrorCode::InvalidArgument,
          "mean wet-day precipitation must be positive");
  require(std::isfinite(tavg_noise_sd) && tavg_noise_sd >= 0.0 && std::isfinite(tavg_mean) &&
              std::isfinite(tavg_amplitude),
          ErrorCode::InvalidArgument, "temperature parameters must be finite");
  require(peak_doy >= 1 && peak_doy <= 366, ErrorCode::InvalidArgument, "peak day of year outside 1..366");
}

std::vector<DailyWeather> generate_weather(const WeatherGenParams& g) {
  g.validate();
  std::mt19937_64 rng(g.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::exponential_distribution<double> amount(1.0 / g.precip_mean_wet);

  // Two-state Markov chain whose stationary wet fraction is the day's
  // wet-day probability.
  auto wet_prob = [&g](int i) {
    const double f = g.n_days > 1 ? static_cast<double>(i) / (g.n_days - 1) : 0.0;
    return g.wet_day_prob + (g.wet_day_prob_end - g.wet_day_prob) * f;
  };

  std::vector<DailyWeather> out;
  out.reserve(static_cast<std::size_t>(g.n_days));
  bool wet = unit(rng) < g.wet_day_prob;
  for (int i = 0; i < g.n_days; ++i) {
    if (i > 0) {
      const double p = wet_prob(i);
      const double p_stay_wet = p + g.wet_persistence * (1.0 - p);
      const double p_turn_wet = (1.0 - g.wet_persistence) * p;
      wet = unit(rng) < (wet ? p_stay_wet : p_turn_wet);
    }
    DailyWeather d;
    d.day_index = i;
    d.date = add_days(g.start_date, i);
    const double phase = 2.0 * std::numbers::pi * (day_of_year(d.date) - g.peak_doy) / 365.0;
    d.tavg = g.tavg_mean + g.tavg_amplitude * std::cos(phase) + g.tavg_noise_sd * noise(rng);

    // Cloudy wet days have a compressed diurnal cycle.
    const double cloud = wet ? 0.75 : 1.2;
    const double range = std::max(0.5, g.diurnal_range_mean * cloud * std::exp(g.diurnal_range_log_sd * noise(rng)));
    const double up = std::clamp(0.5 + 0.1 * noise(rng), 0.2, 0.8);
    d.tmax = d.tavg + range * up;
    d.tmin = d.tavg - range * (1.0 - up);
    d.precip = wet ? amount(rng) : 0.0;
    out.push_back(d);
  }
  return out;
}

TruthSeries generate_truth(std::span<const DailyWeather> weather, const SiteLocation& site, const KcSchedule& kc,
                           const FieldParams& p) {
  require(!weather.empty(), ErrorCode::InvalidArgument, "truth generation needs at least one day");
  p.validate();
  TruthSeries out;
  out.theta.reserve(weather.size());
  out.forcing.reserve(weather.size());
  double theta = p.theta_init;
  for (const auto& day : weather) {
    day.validate();
    const double et0 = hargreaves_et0(day, site);
    const double k = kc_at(kc, day.day_index);
    const double etc = k * et0;
    double irrig = 0.0;
    for (const auto& ev : p.irrigation)
      if (ev.day_index == day.day_index) irrig += ev.mm;
    const auto step = water_balance_step(theta, p, day.precip, irrig, etc);
    theta = step.theta_next;
    out.theta.push_back(theta);
    out.forcing.push_back(ForcingDay{et0, day.precip, k});
    out.etc.push_back(etc);
    out.ledger.push_back(step.ledger);
  }
  return out;
}

}  // namespace paddy
