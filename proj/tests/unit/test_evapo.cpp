#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "paddy/error.hpp"
#include "paddy/evapo.hpp"
#include "paddy/hydro_synth.hpp"
#include "paddy/metrics.hpp"

using namespace paddy;

namespace {
double deg(double d) { return d * std::numbers::pi / 180.0; }
}  // namespace

TEST(ExtraterrestrialRadiation, EquatorNearEquinox) {
  const SiteLocation eq{0.0, 0.0};
  const double ra = extraterrestrial_radiation(eq, 80);
  // Closed form evaluated independently.
  EXPECT_NEAR(ra, 37.8242131076, 1e-8);
  const double dr = 1.0 + 0.033 * std::cos(2.0 * std::numbers::pi * 80 / 365.0);
  EXPECT_NEAR(ra, 1440.0 / std::numbers::pi * 0.0820 * dr, 1e-3);
}

TEST(ExtraterrestrialRadiation, PolarNight) {
  const SiteLocation south{deg(-70.0), 0.0};
  EXPECT_EQ(extraterrestrial_radiation(south, 172), 0.0);
}

TEST(ExtraterrestrialRadiation, HemisphericSymmetry) {
  // Half a year later the declination flips sign; the Earth-Sun distance
  // factor does not, so it is divided out before comparing.
  auto dr = [](int doy) { return 1.0 + 0.033 * std::cos(2.0 * std::numbers::pi * doy / 365.0); };
  for (double lat : {5.0, 20.0, 40.0}) {
    for (int doy : {15, 80, 120, 200, 300}) {
      const int shifted = (doy - 1 + 182) % 365 + 1;
      const double north = extraterrestrial_radiation(SiteLocation{deg(lat), 0}, doy) / dr(doy);
      const double south = extraterrestrial_radiation(SiteLocation{deg(-lat), 0}, shifted) / dr(shifted);
      EXPECT_NEAR(north, south, 0.02 * north) << lat << " " << doy;
    }
  }
}

TEST(ExtraterrestrialRadiation, NonNegativeAndFinite) {
  for (double lat = -89.0; lat <= 89.0; lat += 1.0)
    for (int doy = 1; doy <= 366; ++doy) {
      const double ra = extraterrestrial_radiation(SiteLocation{deg(lat), 0}, doy);
      EXPECT_TRUE(std::isfinite(ra));
      EXPECT_GE(ra, 0.0);
    }
}

TEST(ExtraterrestrialRadiation, Errors) {
  EXPECT_THROW(extraterrestrial_radiation(SiteLocation{}, 0), Error);
  EXPECT_THROW(extraterrestrial_radiation(SiteLocation{}, 367), Error);
  EXPECT_THROW(extraterrestrial_radiation(SiteLocation{2.0, 0}, 100), Error);
}

TEST(Hargreaves, KnownValues) {
  EXPECT_EQ(hargreaves_et0(25.0, 25.0, 25.0, 35.0), 0.0);
  EXPECT_EQ(hargreaves_et0(-10.0, -17.8, -25.0, 35.0), 0.0);
  EXPECT_NEAR(hargreaves_et0(30.0, 24.0, 20.0, 35.0), 4.341425, 5e-7);
  EXPECT_EQ(hargreaves_et0(-20.0, -25.0, -30.0, 35.0), 0.0);  // floored
  try {
    hargreaves_et0(20.0, 22.0, 25.0, 35.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}

TEST(Hargreaves, Monotone) {
  double prev = 0.0;
  for (double tavg = 0.0; tavg <= 40.0; tavg += 0.5) {
    const double e = hargreaves_et0(tavg + 5, tavg, tavg - 5, 36.0);
    EXPECT_GE(e, prev);
    prev = e;
  }
  prev = 0.0;
  for (double range = 0.0; range <= 20.0; range += 0.5) {
    const double e = hargreaves_et0(24 + range / 2, 24, 24 - range / 2, 36.0);
    EXPECT_GE(e, prev);
    prev = e;
  }
}

TEST(Et0Model, UntrainedPredictsMidpoint) {
  const Et0Model m;
  EXPECT_EQ(predict_et0(m, 30, 25, 20), 5.0);
  EXPECT_THROW(predict_et0(m, 20, 25, 30), Error);
}

TEST(Et0Model, TrainedSurrogate) {
  WeatherGenParams g;
  g.seed = 77;
  g.diurnal_range_log_sd = 0.35;
  const auto days = generate_weather(g);
  const SiteLocation site;
  TrainConfig cfg;
  cfg.seed = 3;
  const auto trained = train_et0_model(days, site, cfg);
  EXPECT_EQ(trained.loss_history.size(), 1000u);

  std::vector<double> obs, est;
  double residual = 0.0;
  for (const auto& d : days) {
    obs.push_back(hargreaves_et0(d, site));
    est.push_back(predict_et0(trained.model, d.tmax, d.tavg, d.tmin));
    EXPECT_GE(est.back(), 0.0);
    EXPECT_LE(est.back(), 10.0);
    residual += est.back() - obs.back();
  }
  EXPECT_GE(r_squared(obs, est), 0.95);
  EXPECT_LE(std::abs(residual / days.size()), 0.1);
  // Spot check one representative day.
  EXPECT_NEAR(est[days.size() / 2], obs[days.size() / 2], 0.5);

  // Edge-of-bounds inputs stay finite and inside the output bounds.
  for (auto [hi, mid, lo] : {std::tuple{50.0, 50.0, 50.0}, {0.0, 0.0, 0.0}, {80.0, 25.0, -20.0}}) {
    const double e = predict_et0(trained.model, hi, mid, lo);
    EXPECT_TRUE(std::isfinite(e));
    EXPECT_GT(e, 0.0);
    EXPECT_LT(e, 10.0);
  }
}

TEST(Et0Model, EmptySeries) {
  std::vector<DailyWeather> none;
  EXPECT_THROW(train_et0_model(none, SiteLocation{}, TrainConfig{}), Error);
}
