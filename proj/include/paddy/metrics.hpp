#pragma once

#include <cstddef>
#include <span>

namespace paddy {

/// Squared Pearson correlation between observed and estimated values;
/// always in [0, 1]. Throws Dimension on length mismatch or fewer than two
/// points, UndefinedMetric when obs is constant.
double r_squared(std::span<const double> obs, std::span<const double> est);

/// 1 - SSE/SST. Same preconditions as r_squared; may be negative.
double r_squared_nse(std::span<const double> obs, std::span<const double> est);

double rmse(std::span<const double> obs, std::span<const double> est);

struct RegressionMetrics {
  std::size_t n = 0;
  double r2 = 0.0;      ///< squared Pearson
  double r2_nse = 0.0;  ///< 1 - SSE/SST
  double rmse = 0.0;
};

RegressionMetrics evaluate(std::span<const double> obs, std::span<const double> est);

}  // namespace paddy
