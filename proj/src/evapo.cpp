#include "paddy/evapo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "paddy/error.hpp"

namespace paddy {

void DailyWeather::validate() const {
  require(std::isfinite(tmax) && std::isfinite(tavg) && std::isfinite(tmin) && std::isfinite(precip),
          ErrorCode::InvalidArgument, "weather values must be finite");
  require(tmin <= tavg && tavg <= tmax, ErrorCode::InvalidArgument,
          "day " + std::to_string(day_index) + ": expected tmin <= tavg <= tmax");
  require(precip >= 0.0, ErrorCode::InvalidArgument,
          "day " + std::to_string(day_index) + ": precipitation must be non-negative");
}

void SiteLocation::validate() const {
  require(std::isfinite(latitude) && std::abs(latitude) < std::numbers::pi / 2.0,
          ErrorCode::InvalidArgument, "latitude must lie strictly within (-pi/2, pi/2)");
}

double extraterrestrial_radiation(const SiteLocation& site, int doy) {
  site.validate();
  require(doy >= 1 && doy <= 366, ErrorCode::InvalidArgument,
          "day of year " + std::to_string(doy) + " outside 1..366");
  using std::numbers::pi;
  const double phi = site.latitude;
  const double angle = 2.0 * pi * doy / 365.0;
  const double dr = 1.0 + 0.033 * std::cos(angle);
  const double decl = 0.409 * std::sin(angle - 1.39);
  const double ws = std::acos(std::clamp(-std::tan(phi) * std::tan(decl), -1.0, 1.0));
  const double ra = (24.0 * 60.0 / pi) * kSolarConstant * dr *
                    (ws * std::sin(phi) * std::sin(decl) + std::cos(phi) * std::cos(decl) * std::sin(ws));
  return std::max(ra, 0.0);
}

double hargreaves_et0(double tmax, double tavg, double tmin, double ra) {
  require(std::isfinite(tmax) && std::isfinite(tavg) && std::isfinite(tmin) && std::isfinite(ra),
          ErrorCode::InvalidArgument, "Hargreaves inputs must be finite");
  require(tmax >= tmin, ErrorCode::InvalidArgument, "tmax must not be below tmin");
  const double et0 = 0.0023 * (tavg + 17.8) * std::sqrt(tmax - tmin) * (0.408 * ra);
  return std::max(et0, 0.0);
}

double hargreaves_et0(const DailyWeather& day, const SiteLocation& site) {
  return hargreaves_et0(day.tmax, day.tavg, day.tmin,
                        extraterrestrial_radiation(site, day_of_year(day.date)));
}

void Et0Model::validate() const {
  require(net.topology() == MlpTopology{3, kEt0Hidden, 1}, ErrorCode::Dimension,
          "ET0 model must be a 3-8-1 network");
}

std::vector<Pattern> build_et0_patterns(std::span<const DailyWeather> days, const SiteLocation& site,
                                        const Et0Normalizers& norms) {
  std::vector<Pattern> patterns;
  patterns.reserve(days.size());
  for (const auto& d : days) {
    d.validate();
    patterns.push_back(Pattern{
        {norms.tmax.normalize(d.tmax), norms.tavg.normalize(d.tavg), norms.tmin.normalize(d.tmin)},
        {norms.et0.normalize(hargreaves_et0(d, site))}});
  }
  return patterns;
}

Et0Training train_et0_model(std::span<const DailyWeather> days, const SiteLocation& site,
                            const TrainConfig& cfg, const Et0Normalizers& norms) {
  require(!days.empty(), ErrorCode::InvalidArgument, "ET0 training requires at least one day");
  const auto patterns = build_et0_patterns(days, site, norms);
  auto outcome = train(Mlp{MlpTopology{3, kEt0Hidden, 1}}, patterns, cfg);
  return Et0Training{Et0Model{std::move(outcome.net), norms}, std::move(outcome.loss_history)};
}

double predict_et0(const Et0Model& model, double tmax, double tavg, double tmin) {
  require(tmax >= tmin, ErrorCode::InvalidArgument, "tmax must not be below tmin");
  const double in[3] = {model.norms.tmax.normalize(tmax), model.norms.tavg.normalize(tavg),
                        model.norms.tmin.normalize(tmin)};
  return model.norms.et0.denormalize(forward(model.net, in)[0]);
}

}  // namespace paddy
