#pragma once

// Dynamic soil-moisture estimator: (ET0, precipitation, Kc, lagged theta)
// -> theta, trained teacher-forced and run either teacher-forced or
// closed-loop.

#include <optional>
#include <span>
#include <vector>

#include "paddy/ann.hpp"

namespace paddy {

struct ForcingDay {
  double et0 = 0.0;     ///< mm/day
  double precip = 0.0;  ///< mm/day
  double kc = 1.0;

  void validate() const;
};

enum class SimMode {
  TeacherForced,  ///< lagged inputs are observed theta
  ClosedLoop,     ///< lagged inputs are the model's own previous estimates
};

struct MoistureNormalizers {
  Normalizer et0{0.0, 10.0};
  Normalizer precip{0.0, 100.0};
  Normalizer kc{0.0, 2.0};
  Normalizer theta{0.0, 1.0};

  bool operator==(const MoistureNormalizers&) const = default;
};

struct MoistureModel {
  Mlp net{MlpTopology{4, 8, 1}};
  int lag = 1;
  MoistureNormalizers norms;

  /// Throws unless lag >= 1 and the network is (3 + lag)-H-1.
  void validate() const;
};

struct MoistureTraining {
  MoistureModel model;
  std::vector<double> loss_history;
};

/// Network input for day t: normalized (et0_t, precip_t, kc_t,
/// theta_{t-1}, ..., theta_{t-lag}).
std::vector<double> moisture_input(const ForcingDay& day, std::span<const double> lagged_theta,
                                   const MoistureNormalizers& norms);

/// One teacher-forced pattern per day t in [lag, N).
std::vector<Pattern> build_patterns(std::span<const ForcingDay> forcing, std::span<const double> theta_obs,
                                    int lag, const MoistureNormalizers& norms);

MoistureTraining train_moisture_model(std::span<const ForcingDay> forcing, std::span<const double> theta_obs,
                                      const TrainConfig& cfg, int lag = 1,
                                      const MoistureNormalizers& norms = {},
                                      std::size_t n_hidden = 8);

/// One estimate per forcing day. The first `lag` estimates are theta_init;
/// from day `lag` on the network predicts. theta_obs is required in
/// TeacherForced mode and must match the forcing length.
std::vector<double> simulate_moisture(const MoistureModel& model, std::span<const ForcingDay> forcing,
                                      std::span<const double> theta_init, SimMode mode,
                                      std::optional<std::span<const double>> theta_obs = std::nullopt);

}  // namespace paddy
