#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "paddy/error.hpp"
#include "paddy/metrics.hpp"

using namespace paddy;

TEST(RSquared, PerfectAndAffine) {
  const std::vector<double> obs{0.3, 0.1, 0.5, 0.45, 0.2};
  EXPECT_DOUBLE_EQ(r_squared(obs, obs), 1.0);
  EXPECT_DOUBLE_EQ(r_squared_nse(obs, obs), 1.0);
  std::vector<double> affine;
  for (double v : obs) affine.push_back(2.5 * v - 0.7);
  EXPECT_NEAR(r_squared(obs, affine), 1.0, 1e-14);
  EXPECT_LT(r_squared_nse(obs, affine), 1.0);
}

TEST(RSquared, Errors) {
  const std::vector<double> a{1, 2, 3}, b{1, 2}, flat{2, 2, 2};
  try {
    r_squared(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Dimension);
  }
  try {
    r_squared(flat, a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UndefinedMetric);
  }
  EXPECT_THROW(r_squared(std::vector<double>{1.0}, std::vector<double>{1.0}), Error);
  EXPECT_EQ(r_squared(a, flat), 0.0);
}

TEST(Rmse, Cases) {
  const std::vector<double> obs{0.3, 0.1, 0.5};
  EXPECT_EQ(rmse(obs, obs), 0.0);
  std::vector<double> shifted;
  for (double v : obs) shifted.push_back(v - 0.25);
  EXPECT_NEAR(rmse(obs, shifted), 0.25, 1e-15);
  EXPECT_THROW(rmse(obs, std::vector<double>{1.0}), Error);
}

// When est is the least-squares fit of obs on a regressor, both R^2
// definitions coincide.
TEST(RSquared, DefinitionsAgreeOnLeastSquaresFit) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int c = 0; c < 50; ++c) {
    std::vector<double> x(40), y(40);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = n(rng);
      y[i] = 0.7 * x[i] + 0.5 * n(rng);
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
    mx /= x.size();
    my /= y.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
    std::vector<double> fit;
    for (double v : x) fit.push_back(my + sxy / sxx * (v - mx));
    EXPECT_NEAR(r_squared(y, fit), r_squared_nse(y, fit), 1e-9);
  }
}
