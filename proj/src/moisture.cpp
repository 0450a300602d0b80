#include "paddy/moisture.hpp"

#include <cmath>
#include <string>

#include "paddy/error.hpp"

namespace paddy {

void ForcingDay::validate() const {
  require(std::isfinite(et0) && et0 >= 0.0, ErrorCode::InvalidArgument, "ET0 must be non-negative");
  require(std::isfinite(precip) && precip >= 0.0, ErrorCode::InvalidArgument,
          "precipitation must be non-negative");
  require(std::isfinite(kc) && kc > 0.0, ErrorCode::InvalidArgument, "Kc must be positive");
}

void MoistureModel::validate() const {
  require(lag >= 1, ErrorCode::InvalidArgument, "lag must be >= 1");
  const auto& t = net.topology();
  require(t.n_inputs == static_cast<std::size_t>(3 + lag) && t.n_outputs == 1, ErrorCode::Dimension,
          "moisture network must have 3 + lag inputs and one output");
}

std::vector<double> moisture_input(const ForcingDay& day, std::span<const double> lagged_theta,
                                   const MoistureNormalizers& norms) {
  std::vector<double> in;
  in.reserve(3 + lagged_theta.size());
  in.push_back(norms.et0.normalize(day.et0));
  in.push_back(norms.precip.normalize(day.precip));
  in.push_back(norms.kc.normalize(day.kc));
  for (double th : lagged_theta) in.push_back(norms.theta.normalize(th));
  return in;
}

namespace {

// theta_{t-1}, ..., theta_{t-lag} from a series indexed by day.
std::vector<double> lagged(std::span<const double> series, std::size_t t, int lag) {
  std::vector<double> out(static_cast<std::size_t>(lag));
  for (int k = 1; k <= lag; ++k) out[k - 1] = series[t - k];
  return out;
}

}  // namespace

std::vector<Pattern> build_patterns(std::span<const ForcingDay> forcing, std::span<const double> theta_obs,
                                    int lag, const MoistureNormalizers& norms) {
  require(lag >= 1, ErrorCode::InvalidArgument, "lag must be >= 1");
  require(forcing.size() == theta_obs.size(), ErrorCode::Dimension,
          "forcing has " + std::to_string(forcing.size()) + " days but theta has " +
              std::to_string(theta_obs.size()));
  const auto n = forcing.size();
  require(n > static_cast<std::size_t>(lag), ErrorCode::InsufficientHistory,
          "need more than " + std::to_string(lag) + " days of history, got " + std::to_string(n));

  std::vector<Pattern> patterns;
  patterns.reserve(n - lag);
  for (std::size_t t = static_cast<std::size_t>(lag); t < n; ++t) {
    forcing[t].validate();
    const auto hist = lagged(theta_obs, t, lag);
    patterns.push_back(Pattern{moisture_input(forcing[t], hist, norms), {norms.theta.normalize(theta_obs[t])}});
  }
  return patterns;
}

MoistureTraining train_moisture_model(std::span<const ForcingDay> forcing, std::span<const double> theta_obs,
                                      const TrainConfig& cfg, int lag, const MoistureNormalizers& norms,
                                      std::size_t n_hidden) {
  const auto patterns = build_patterns(forcing, theta_obs, lag, norms);
  const MlpTopology topo{static_cast<std::size_t>(3 + lag), n_hidden, 1};
  auto outcome = train(Mlp{topo}, patterns, cfg);
  return MoistureTraining{MoistureModel{std::move(outcome.net), lag, norms}, std::move(outcome.loss_history)};
}

std::vector<double> simulate_moisture(const MoistureModel& model, std::span<const ForcingDay> forcing,
                                      std::span<const double> theta_init, SimMode mode,
                                      std::optional<std::span<const double>> theta_obs) {
  model.validate();
  const auto lag = static_cast<std::size_t>(model.lag);
  require(theta_init.size() == lag, ErrorCode::InvalidArgument,
          "theta_init must hold exactly lag = " + std::to_string(lag) + " values");
  for (double th : theta_init) {
    require(std::isfinite(th) && th >= model.norms.theta.lo() && th <= model.norms.theta.hi(),
            ErrorCode::InvalidArgument, "theta_init values must lie within the theta normalizer bounds");
  }
  if (mode == SimMode::TeacherForced) {
    require(theta_obs.has_value(), ErrorCode::InvalidArgument, "teacher-forced simulation needs observed theta");
    require(theta_obs->size() == forcing.size(), ErrorCode::Dimension,
            "observed theta length does not match forcing length");
  }

  std::vector<double> est;
  est.reserve(forcing.size());
  for (std::size_t t = 0; t < forcing.size(); ++t) {
    if (t < lag) {
      est.push_back(theta_init[t]);
      continue;
    }
    forcing[t].validate();
    const auto hist = lagged(mode == SimMode::ClosedLoop ? std::span<const double>(est) : *theta_obs, t,
                             model.lag);
    const auto in = moisture_input(forcing[t], hist, model.norms);
    est.push_back(model.norms.theta.denormalize(forward(model.net, in)[0]));
  }
  return est;
}

}  // namespace paddy
