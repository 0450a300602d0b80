#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "paddy/error.hpp"
#include "paddy/hydro_synth.hpp"
#include "paddy/metrics.hpp"
#include "paddy/moisture.hpp"

using namespace paddy;

namespace {

struct Season {
  std::vector<ForcingDay> forcing;
  std::vector<double> theta;
};

Season synthetic_season(std::uint64_t seed) {
  WeatherGenParams g;
  g.seed = seed;
  const auto w = generate_weather(g);
  KcSchedule kc;
  kc.len_late = 28;
  const auto t = generate_truth(w, SiteLocation{}, kc, FieldParams{});
  return Season{t.forcing, t.theta};
}

}  // namespace

TEST(BuildPatterns, CountsAndContents) {
  const auto s = synthetic_season(1);
  ASSERT_EQ(s.forcing.size(), 118u);
  const MoistureNormalizers norms;
  const auto pats = build_patterns(s.forcing, s.theta, 1, norms);
  ASSERT_EQ(pats.size(), 117u);
  EXPECT_EQ(pats[0].input[3], norms.theta.normalize(s.theta[0]));
  for (std::size_t i = 0; i < pats.size(); ++i) EXPECT_EQ(pats[i].target[0], norms.theta.normalize(s.theta[i + 1]));

  const auto lag3 = build_patterns(s.forcing, s.theta, 3, norms);
  ASSERT_EQ(lag3.size(), 115u);
  EXPECT_EQ(lag3[0].input.size(), 6u);
  EXPECT_EQ(lag3[0].input[3], norms.theta.normalize(s.theta[2]));
  EXPECT_EQ(lag3[0].input[5], norms.theta.normalize(s.theta[0]));
}

TEST(BuildPatterns, Errors) {
  const MoistureNormalizers norms;
  std::vector<ForcingDay> one{ForcingDay{4.0, 0.0, 1.1}};
  std::vector<double> th{0.4};
  try {
    build_patterns(one, th, 1, norms);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientHistory);
  }
  std::vector<double> two{0.4, 0.3};
  try {
    build_patterns(one, two, 1, norms);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Dimension);
  }
  std::vector<ForcingDay> none;
  std::vector<double> empty;
  EXPECT_THROW(train_moisture_model(none, empty, TrainConfig{}), Error);
}

TEST(MoistureModel, TrainDeterministicAndAccurate) {
  const auto s = synthetic_season(2010);
  TrainConfig cfg;
  cfg.seed = 12;
  const auto a = train_moisture_model(s.forcing, s.theta, cfg);
  const auto b = train_moisture_model(s.forcing, s.theta, cfg);
  EXPECT_EQ(a.model.net, b.model.net);
  EXPECT_EQ(a.loss_history, b.loss_history);

  const double init[1] = {s.theta[0]};
  const auto est = simulate_moisture(a.model, s.forcing, init, SimMode::ClosedLoop);
  ASSERT_EQ(est.size(), s.forcing.size());
  EXPECT_GE(r_squared(std::span(s.theta).subspan(1), std::span(est).subspan(1)), 0.75);
}

TEST(Simulate, TeacherForcedReproducesOneStepPredictions) {
  const auto s = synthetic_season(3);
  TrainConfig cfg;
  cfg.epochs = 50;
  const auto m = train_moisture_model(s.forcing, s.theta, cfg, 2);
  const auto pats = build_patterns(s.forcing, s.theta, 2, m.model.norms);
  const double init[2] = {s.theta[0], s.theta[1]};
  const auto est = simulate_moisture(m.model, s.forcing, init, SimMode::TeacherForced, std::span<const double>(s.theta));
  EXPECT_EQ(est[0], s.theta[0]);
  EXPECT_EQ(est[1], s.theta[1]);
  for (std::size_t i = 0; i < pats.size(); ++i)
    EXPECT_EQ(est[i + 2], m.model.norms.theta.denormalize(forward(m.model.net, pats[i].input)[0]));
}

TEST(Simulate, BoundedForArbitraryWeights) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> w(-20.0, 20.0), f(0.0, 150.0);
  MoistureModel m;
  m.norms.theta = Normalizer(0.1, 0.6);
  for (int trial = 0; trial < 20; ++trial) {
    for (double& v : m.net.hidden_weights().values()) v = w(rng);
    for (double& v : m.net.output_weights().values()) v = w(rng);
    std::vector<ForcingDay> forcing;
    for (int d = 0; d < 200; ++d) forcing.push_back(ForcingDay{f(rng) / 15, f(rng), 0.5 + f(rng) / 150});
    const double init[1] = {0.3};
    for (double th : simulate_moisture(m, forcing, init, SimMode::ClosedLoop)) {
      EXPECT_GE(th, 0.1);
      EXPECT_LE(th, 0.6);
    }
  }
}

// A network that only looks at the lagged theta turns closed-loop
// simulation into iteration of a scalar map.
TEST(Simulate, ClosedLoopMatchesScalarIteration) {
  MoistureModel m;
  auto& h = m.net.hidden_weights();
  auto& o = m.net.output_weights();
  h(0, 0) = -1.0;
  h(0, 4) = 2.5;
  o(0, 0) = -0.8;
  o(0, 1) = 1.7;
  std::vector<ForcingDay> forcing(30, ForcingDay{3.0, 10.0, 1.1});
  for (std::size_t d = 0; d < forcing.size(); ++d) forcing[d].precip = static_cast<double>(d);
  const double init[1] = {0.2};
  const auto est = simulate_moisture(m, forcing, init, SimMode::ClosedLoop);

  auto sig = [](double y) { return 1.0 / (1.0 + std::exp(-y)); };
  double x = 0.2;
  EXPECT_EQ(est[0], 0.2);
  for (std::size_t t = 1; t < forcing.size(); ++t) {
    const double hidden0 = sig(-1.0 + 2.5 * x);
    x = sig(-0.8 + 1.7 * hidden0);
    EXPECT_NEAR(est[t], x, 1e-15) << t;
  }
}

TEST(Simulate, Errors) {
  MoistureModel m;
  std::vector<ForcingDay> forcing(5, ForcingDay{3.0, 1.0, 1.1});
  const double init[1] = {0.3};
  EXPECT_THROW(simulate_moisture(m, forcing, init, SimMode::TeacherForced), Error);
  const double two[2] = {0.3, 0.3};
  EXPECT_THROW(simulate_moisture(m, forcing, two, SimMode::ClosedLoop), Error);
  const std::vector<double> short_obs{0.3, 0.3};
  EXPECT_THROW(simulate_moisture(m, forcing, init, SimMode::TeacherForced, std::span<const double>(short_obs)), Error);
  EXPECT_EQ(simulate_moisture(m, forcing, init, SimMode::ClosedLoop).size(), 5u);
}
