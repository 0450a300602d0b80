#pragma once

// Two-period experiment: train both networks on the first cultivation
// period, validate on the second, and write the report and plot data.

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "paddy/crop.hpp"
#include "paddy/evapo.hpp"
#include "paddy/hydro_synth.hpp"
#include "paddy/ingest.hpp"
#include "paddy/metrics.hpp"
#include "paddy/model_io.hpp"
#include "paddy/moisture.hpp"

namespace paddy {

enum class DataSource { Synthetic, DailyCsv, HalfHourlyCsv };
enum class Et0Source { Surrogate, Hargreaves };

struct PeriodSpec {
  std::string name;
  Date planting_date{};
  int season_days = 118;
  DataSource source = DataSource::Synthetic;
  WeatherGenParams weather;     ///< Synthetic only; start date and length follow the period
  std::filesystem::path path;   ///< CSV sources; relative paths resolve against the config file
  int min_coverage = kDefaultMinCoverage;  ///< HalfHourlyCsv only
};

struct ExperimentConfig {
  SiteLocation site;
  Et0Normalizers et0_norms;
  MoistureNormalizers moisture_norms;
  KcSchedule kc;
  TrainConfig et0_training;
  TrainConfig moisture_training;
  std::size_t moisture_hidden = 8;
  int lag = 1;
  SimMode mode = SimMode::ClosedLoop;
  Et0Source moisture_et0 = Et0Source::Surrogate;  ///< ET0 fed to the moisture network
  FieldParams field;                              ///< synthetic truth only
  std::array<PeriodSpec, 2> periods;

  /// Throws Config on inconsistent settings (e.g. a Kc schedule that does
  /// not cover a season).
  void validate() const;
};

/// Paddy seasons planted 2010-10-14 (wet) and 2011-08-20 (dry to wet),
/// both synthetic, 118 days each.
ExperimentConfig default_experiment_config();

/// JSON document; every key is required. `base_dir` anchors relative paths.
ExperimentConfig parse_experiment_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
std::string experiment_config_to_json(const ExperimentConfig& cfg);

/// Observed and estimated series for one cultivation period. All vectors
/// are indexed by day.
struct PeriodSeries {
  std::string name;
  std::vector<DailyRecord> days;
  std::vector<double> kc;
  std::vector<double> et0_reference;  ///< Hargreaves
  std::vector<double> et0_estimate;   ///< network
  std::vector<double> theta_obs;
  std::vector<double> theta_est;
  std::size_t warmup = 0;  ///< leading theta_est entries copied from observations
  std::vector<DayGap> gaps;
};

struct MetricCell {
  std::string variable;  ///< "et0" or "theta"
  std::string period;    ///< "train" or "validation"
  RegressionMetrics metrics;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::array<PeriodSeries, 2> periods;
  Et0Training et0;
  MoistureTraining moisture;
  Provenance et0_provenance;
  Provenance moisture_provenance;
  std::vector<MetricCell> cells;  ///< et0/train, et0/validation, theta/train, theta/validation

  const RegressionMetrics& cell(std::string_view variable, std::string_view period) const;
};

/// Loads or generates both periods' daily data with observed theta.
PeriodSeries load_period(const ExperimentConfig& cfg, const PeriodSpec& spec);

/// Full pipeline. Errors are rethrown with the failing stage prefixed.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Writes report.txt, metrics.csv, config.json, series_<period>.csv,
/// et0_model.txt, moisture_model.txt and the plot-data files.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);

std::string format_report_text(const ExperimentReport& report);
std::string format_metrics_csv(const ExperimentReport& report);

void write_period_series(const PeriodSeries& s, const std::filesystem::path& path);
PeriodSeries read_period_series(const std::filesystem::path& path);

/// Tidy CSVs for plotting:
///   monthly_temperature.csv  period,year,month,days,tmax_mean_c,tavg_mean_c,tmin_mean_c
///   monthly_precipitation.csv period,year,month,days,precip_total_mm
///   scatter_et0_<period>.csv   date,observed_mm,estimated_mm
///   scatter_theta_<period>.csv date,observed_vwc,estimated_vwc,warmup
/// Returns the paths written.
std::vector<std::filesystem::path> export_plot_data(std::span<const PeriodSeries> periods,
                                                    const std::filesystem::path& dir);

}  // namespace paddy
