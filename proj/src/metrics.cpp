#include "paddy/metrics.hpp"

#include <cmath>
#include <string>

#include "paddy/error.hpp"

namespace paddy {

namespace {

void check_pair(std::span<const double> obs, std::span<const double> est, std::size_t min_len) {
  require(obs.size() == est.size(), ErrorCode::Dimension,
          "series lengths differ (" + std::to_string(obs.size()) + " vs " + std::to_string(est.size()) + ")");
  require(obs.size() >= min_len, ErrorCode::Dimension,
          "metric needs at least " + std::to_string(min_len) + " points");
}

double mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

double r_squared(std::span<const double> obs, std::span<const double> est) {
  check_pair(obs, est, 2);
  const double mo = mean(obs);
  const double me = mean(est);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const double dx = obs[i] - mo;
    const double dy = est[i] - me;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  require(sxx > 0.0, ErrorCode::UndefinedMetric, "R^2 is undefined for a constant observed series");
  // A constant estimate carries no linear information.
  if (syy == 0.0) return 0.0;
  const double r2 = (sxy * sxy) / (sxx * syy);
  return r2 > 1.0 ? 1.0 : r2;
}

double r_squared_nse(std::span<const double> obs, std::span<const double> est) {
  check_pair(obs, est, 2);
  const double mo = mean(obs);
  double sse = 0.0, sst = 0.0;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    sse += (obs[i] - est[i]) * (obs[i] - est[i]);
    sst += (obs[i] - mo) * (obs[i] - mo);
  }
  require(sst > 0.0, ErrorCode::UndefinedMetric, "R^2 is undefined for a constant observed series");
  return 1.0 - sse / sst;
}

double rmse(std::span<const double> obs, std::span<const double> est) {
  check_pair(obs, est, 1);
  double sse = 0.0;
  for (std::size_t i = 0; i < obs.size(); ++i) sse += (obs[i] - est[i]) * (obs[i] - est[i]);
  return std::sqrt(sse / static_cast<double>(obs.size()));
}

RegressionMetrics evaluate(std::span<const double> obs, std::span<const double> est) {
  return RegressionMetrics{obs.size(), r_squared(obs, est), r_squared_nse(obs, est), rmse(obs, est)};
}

}  // namespace paddy
