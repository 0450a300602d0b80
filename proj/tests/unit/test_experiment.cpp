#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include "paddy/error.hpp"
#include "paddy/experiment.hpp"

using namespace paddy;
namespace fs = std::filesystem;

namespace {

ExperimentConfig quick_config() {
  auto cfg = default_experiment_config();
  cfg.et0_training.epochs = 60;
  cfg.moisture_training.epochs = 60;
  return cfg;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t line_count(const fs::path& p) {
  const auto s = slurp(p);
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("paddy_test_" + name);
  fs::remove_all(dir);
  return dir;
}

ErrorCode config_error(const nlohmann::json& j) {
  try {
    parse_experiment_config(j.dump());
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{0};
}

}  // namespace

TEST(ExperimentConfig, DefaultsAreConsistent) {
  const auto cfg = default_experiment_config();
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(cfg.kc.season_length(), 118);
  EXPECT_EQ(cfg.periods[0].season_days, 118);
  EXPECT_EQ(cfg.periods[1].season_days, 118);
  EXPECT_NE(cfg.periods[0].planting_date, cfg.periods[1].planting_date);
}

TEST(ExperimentConfig, JsonRoundTrip) {
  auto cfg = default_experiment_config();
  cfg.field.irrigation = {{10, 25.0}, {40, 12.5}};
  cfg.mode = SimMode::TeacherForced;
  cfg.moisture_et0 = Et0Source::Hargreaves;
  const auto text = experiment_config_to_json(cfg);
  const auto back = parse_experiment_config(text);
  EXPECT_EQ(experiment_config_to_json(back), text);
  EXPECT_EQ(back.field, cfg.field);
  EXPECT_EQ(back.kc, cfg.kc);
  EXPECT_EQ(back.periods[1].weather, cfg.periods[1].weather);
  EXPECT_EQ(back.mode, SimMode::TeacherForced);
}

TEST(ExperimentConfig, MissingAndUnknownKeys) {
  const auto base = nlohmann::json::parse(experiment_config_to_json(default_experiment_config()));

  auto missing = base;
  missing["field"].erase("perc_rate_mm");
  EXPECT_EQ(config_error(missing), ErrorCode::Config);

  auto unknown = base;
  unknown["moisture_model"]["dropout"] = 0.1;
  EXPECT_EQ(config_error(unknown), ErrorCode::Config);

  auto mismatch = base;
  mismatch["kc_schedule"]["len_late"] = 30;
  EXPECT_EQ(config_error(mismatch), ErrorCode::Config);

  auto version = base;
  version["version"] = 7;
  EXPECT_EQ(config_error(version), ErrorCode::Version);

  EXPECT_THROW(parse_experiment_config("{not json"), Error);
}

TEST(Experiment, ReportHasFourCells) {
  const auto r = run_experiment(quick_config());
  ASSERT_EQ(r.cells.size(), 4u);
  for (const char* var : {"et0", "theta"})
    for (const char* period : {"train", "validation"}) {
      const auto& m = r.cell(var, period);
      EXPECT_GT(m.n, 100u);
      EXPECT_GE(m.r2, 0.0);
      EXPECT_LE(m.r2, 1.0);
    }
  EXPECT_EQ(r.cell("theta", "train").n, 118u - 1u);
  EXPECT_THROW(r.cell("rain", "train"), Error);
  EXPECT_EQ(r.et0_provenance.seed, quick_config().et0_training.seed);
  EXPECT_NE(r.et0_provenance.data_digest, 0u);
}

TEST(Experiment, Deterministic) {
  const auto cfg = quick_config();
  const auto a = run_experiment(cfg);
  const auto b = run_experiment(cfg);
  EXPECT_EQ(format_metrics_csv(a), format_metrics_csv(b));
  EXPECT_EQ(a.periods[1].theta_est, b.periods[1].theta_est);
  EXPECT_EQ(a.moisture.model.net, b.moisture.model.net);
}

TEST(Experiment, WriteAndExport) {
  const auto r = run_experiment(quick_config());
  const auto dir = scratch("report");
  write_report(r, dir);
  for (const char* f : {"report.txt", "metrics.csv", "config.json", "et0_model.txt", "moisture_model.txt",
                        "series_period1.csv", "series_period2.csv"})
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  EXPECT_EQ(line_count(dir / "metrics.csv"), 5u);

  const auto series = read_period_series(dir / "series_period2.csv");
  EXPECT_EQ(series.name, "period2");
  EXPECT_EQ(series.days.size(), 118u);
  EXPECT_EQ(series.theta_est, r.periods[1].theta_est);
  EXPECT_EQ(series.warmup, 1u);

  const auto plots = scratch("plots");
  const auto written = export_plot_data(r.periods, plots);
  EXPECT_EQ(written.size(), 6u);
  for (const auto& p : r.periods) {
    EXPECT_EQ(line_count(plots / ("scatter_et0_" + p.name + ".csv")), p.days.size() + 1);
    EXPECT_EQ(line_count(plots / ("scatter_theta_" + p.name + ".csv")), p.days.size() + 1);
  }
  // Each 118-day season touches four or five calendar months.
  const auto months = line_count(plots / "monthly_precipitation.csv") - 1;
  EXPECT_GE(months, 8u);
  EXPECT_LE(months, 10u);
  EXPECT_EQ(line_count(plots / "monthly_temperature.csv") - 1, months);

  const auto again = scratch("plots_again");
  export_plot_data(r.periods, again);
  for (const auto& p : written) EXPECT_EQ(slurp(p), slurp(again / p.filename())) << p;
}

TEST(Experiment, DailyCsvSource) {
  auto cfg = quick_config();
  const auto dir = scratch("csv_source");
  fs::create_directories(dir);
  const auto first = load_period(cfg, cfg.periods[0]);
  write_daily_csv(dir / "p1.csv", first.days);
  cfg.periods[0].source = DataSource::DailyCsv;
  cfg.periods[0].path = dir / "p1.csv";
  const auto loaded = load_period(cfg, cfg.periods[0]);
  EXPECT_EQ(loaded.theta_obs, first.theta_obs);
  EXPECT_EQ(loaded.kc, first.kc);
}

TEST(Experiment, StageIsNamedInErrors) {
  auto cfg = quick_config();
  cfg.periods[1].source = DataSource::DailyCsv;
  cfg.periods[1].path = "/nonexistent/p2.csv";
  try {
    run_experiment(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
    EXPECT_NE(std::string(e.what()).find("[load:period2]"), std::string::npos) << e.what();
  }
}
