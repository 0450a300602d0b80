// paddy: command-line front end for the soil-moisture estimation pipeline.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "paddy/error.hpp"
#include "paddy/experiment.hpp"
#include "paddy/text.hpp"

namespace fs = std::filesystem;
using namespace paddy;

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
  out << content;
  if (!out) fail(ErrorCode::Io, "write failed for " + path.string());
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) fail(ErrorCode::Io, "cannot create directory " + dir.string());
}

SimMode parse_mode(const std::string& s) {
  if (s == "closed_loop") return SimMode::ClosedLoop;
  if (s == "teacher_forced") return SimMode::TeacherForced;
  fail(ErrorCode::InvalidArgument, "mode must be closed_loop or teacher_forced");
}

std::vector<DailyWeather> weather_of(const std::vector<DailyRecord>& days) {
  std::vector<DailyWeather> w;
  for (const auto& d : days) w.push_back(d.weather);
  return w;
}

std::vector<double> observed_theta(const std::vector<DailyRecord>& days, std::size_t count) {
  std::vector<double> theta;
  for (std::size_t i = 0; i < count && i < days.size(); ++i) {
    if (!days[i].theta)
      fail(ErrorCode::InvalidArgument, "day " + format_date(days[i].weather.date) + " lacks theta_vwc");
    theta.push_back(*days[i].theta);
  }
  return theta;
}

// ET0 per day from the network when a model is given, Hargreaves otherwise.
std::vector<ForcingDay> forcing_of(const ExperimentConfig& cfg, const std::vector<DailyRecord>& days,
                                   const std::optional<Et0Model>& et0) {
  std::vector<ForcingDay> f;
  for (const auto& d : days) {
    const auto& w = d.weather;
    const double e = et0 ? predict_et0(*et0, w.tmax, w.tavg, w.tmin) : hargreaves_et0(w, cfg.site);
    f.push_back(ForcingDay{e, w.precip, kc_at(cfg.kc, w.day_index)});
  }
  return f;
}

std::optional<Et0Model> et0_for_moisture(const ExperimentConfig& cfg, const std::string& path) {
  if (!path.empty()) return et0_model_from(load_model(fs::path(path)));
  if (cfg.moisture_et0 == Et0Source::Surrogate)
    fail(ErrorCode::InvalidArgument, "config feeds network ET0 to the moisture model; pass --et0-model");
  return std::nullopt;
}

void print_metrics(const std::string& label, const RegressionMetrics& m) {
  std::cout << label << ": n=" << m.n << " r2=" << text::format_double(m.r2)
            << " r2_nse=" << text::format_double(m.r2_nse) << " rmse=" << text::format_double(m.rmse) << '\n';
}

// Spreads one day over 48 half-hour readings with a cosine diurnal cycle
// peaking mid-afternoon; rain falls evenly over the afternoon.
std::vector<HalfHourRecord> disaggregate(const std::vector<DailyRecord>& days) {
  std::vector<HalfHourRecord> out;
  for (const auto& d : days) {
    const auto& w = d.weather;
    for (int k = 0; k < kIntervalsPerDay; ++k) {
      const double hour = k * 0.5;
      const double shape = std::cos(2.0 * 3.14159265358979323846 * (hour - 14.0) / 24.0);
      HalfHourRecord r;
      r.timestamp = std::chrono::sys_days{w.date} + std::chrono::minutes{30 * k};
      r.temp = w.tavg + (shape >= 0 ? shape * (w.tmax - w.tavg) : shape * (w.tavg - w.tmin));
      r.precip = (k >= 26 && k < 34) ? w.precip / 8.0 : 0.0;
      r.theta = d.theta;
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Paddy-field soil-moisture estimation from limited weather data"};
  app.require_subcommand(1);

  std::string config_path, out_path, data_path, model_path, et0_model_path, input_path, mode_name, report_dir,
      estimates_path, planting;
  std::optional<std::uint64_t> seed;
  int min_coverage = kDefaultMinCoverage;
  bool half_hourly = false;

  auto* config_cmd = app.add_subcommand("config", "Print the default experiment configuration");
  config_cmd->add_option("--out", out_path, "Write to this file instead of stdout");

  auto* synth = app.add_subcommand("synth", "Generate both synthetic cultivation periods as daily CSV");
  synth->add_option("--config", config_path, "Experiment configuration (JSON)")->required()->check(CLI::ExistingFile);
  synth->add_option("--seed", seed, "Weather seed for period 1 (period 2 uses seed + 1)");
  synth->add_option("--out", out_path, "Output directory")->required();
  synth->add_flag("--half-hourly", half_hourly, "Also write 30-minute files");

  auto* ingest = app.add_subcommand("ingest", "Aggregate a half-hourly CSV to daily rows");
  ingest->add_option("--input", input_path, "Half-hourly CSV")->required()->check(CLI::ExistingFile);
  ingest->add_option("--output", out_path, "Daily CSV to write")->required();
  ingest->add_option("--min-coverage", min_coverage, "Minimum readings per day (of 48)")->check(CLI::Range(1, 48));
  ingest->add_option("--planting-date", planting, "YYYY-MM-DD origin for day_index");

  auto* train_et0 = app.add_subcommand("train-et0", "Train the ET0 network against Hargreaves");
  train_et0->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
  train_et0->add_option("--data", data_path, "Daily CSV")->required()->check(CLI::ExistingFile);
  train_et0->add_option("--out", out_path, "Model file")->required();
  train_et0->add_option("--seed", seed, "Override the training seed");

  auto* train_moist = app.add_subcommand("train-moisture", "Train the soil-moisture network (teacher forced)");
  train_moist->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
  train_moist->add_option("--data", data_path, "Daily CSV with theta_vwc")->required()->check(CLI::ExistingFile);
  train_moist->add_option("--et0-model", et0_model_path, "ET0 network supplying the ET0 input");
  train_moist->add_option("--out", out_path, "Model file")->required();
  train_moist->add_option("--seed", seed, "Override the training seed");

  auto* simulate = app.add_subcommand("simulate", "Estimate soil moisture for a daily series");
  simulate->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
  simulate->add_option("--model", model_path, "Moisture model file")->required()->check(CLI::ExistingFile);
  simulate->add_option("--et0-model", et0_model_path, "ET0 network supplying the ET0 input");
  simulate->add_option("--data", data_path, "Daily CSV")->required()->check(CLI::ExistingFile);
  simulate->add_option("--mode", mode_name, "closed_loop or teacher_forced (default from config)");
  simulate->add_option("--out", out_path, "Estimates CSV")->required();

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score estimates against observations");
  evaluate_cmd->add_option("--data", data_path, "Daily CSV with observations")->required()->check(CLI::ExistingFile);
  evaluate_cmd->add_option("--estimates", estimates_path, "Estimates CSV from simulate");
  evaluate_cmd->add_option("--et0-model", et0_model_path, "Score an ET0 network against Hargreaves instead");
  evaluate_cmd->add_option("--config", config_path, "Needed with --et0-model (site)");

  auto* run = app.add_subcommand("run", "Run the full two-period experiment");
  run->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_path, "Report directory")->required();
  run->add_option("--seed", seed, "Override both training seeds (moisture uses seed + 1)");

  auto* plots = app.add_subcommand("export-plots", "Write plot-data CSVs from a report directory");
  plots->add_option("--report", report_dir, "Directory written by run")->required()->check(CLI::ExistingDirectory);
  plots->add_option("--out", out_path, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (config_cmd->parsed()) {
      const auto text = experiment_config_to_json(default_experiment_config());
      if (out_path.empty()) std::cout << text;
      else write_file(out_path, text);

    } else if (synth->parsed()) {
      auto cfg = load_experiment_config(config_path);
      if (seed) {
        cfg.periods[0].weather.seed = *seed;
        cfg.periods[1].weather.seed = *seed + 1;
      }
      ensure_dir(out_path);
      for (const auto& p : cfg.periods) {
        if (p.source != DataSource::Synthetic) {
          std::cerr << "skipping " << p.name << ": not a synthetic period\n";
          continue;
        }
        const auto s = load_period(cfg, p);
        write_daily_csv(fs::path(out_path) / (p.name + "_daily.csv"), s.days);
        if (half_hourly) {
          std::ofstream hh(fs::path(out_path) / (p.name + "_half_hourly.csv"), std::ios::binary);
          if (!hh) fail(ErrorCode::Io, "cannot write half-hourly file");
          write_half_hourly_csv(hh, disaggregate(s.days));
        }
        std::cout << "wrote " << p.name << " (" << s.days.size() << " days)\n";
      }

    } else if (ingest->parsed()) {
      std::optional<Date> origin;
      if (!planting.empty()) origin = parse_date(planting);
      const auto agg = daily_aggregate(read_half_hourly_csv(fs::path(input_path)), min_coverage, origin);
      write_daily_csv(fs::path(out_path), agg.days);
      for (const auto& g : agg.gaps)
        std::cerr << "gap: " << format_date(g.date) << " has " << g.records << "/" << kIntervalsPerDay
                  << " records, excluded\n";
      std::cout << "wrote " << agg.days.size() << " days, excluded " << agg.gaps.size() << '\n';

    } else if (train_et0->parsed()) {
      auto cfg = load_experiment_config(config_path);
      if (seed) cfg.et0_training.seed = *seed;
      const auto weather = weather_of(read_daily_csv(fs::path(data_path)));
      const auto trained = train_et0_model(weather, cfg.site, cfg.et0_training, cfg.et0_norms);
      const Provenance prov{cfg.et0_training.seed, cfg.et0_training.epochs,
                            pattern_digest(build_et0_patterns(weather, cfg.site, cfg.et0_norms))};
      save_model(to_artifact(trained.model, prov), fs::path(out_path));
      std::cout << "final epoch mse " << text::format_double(trained.loss_history.back()) << '\n';

    } else if (train_moist->parsed()) {
      auto cfg = load_experiment_config(config_path);
      if (seed) cfg.moisture_training.seed = *seed;
      const auto days = read_daily_csv(fs::path(data_path));
      const auto forcing = forcing_of(cfg, days, et0_for_moisture(cfg, et0_model_path));
      const auto theta = observed_theta(days, days.size());
      const auto trained = train_moisture_model(forcing, theta, cfg.moisture_training, cfg.lag, cfg.moisture_norms,
                                                cfg.moisture_hidden);
      const Provenance prov{cfg.moisture_training.seed, cfg.moisture_training.epochs,
                            pattern_digest(build_patterns(forcing, theta, cfg.lag, cfg.moisture_norms))};
      save_model(to_artifact(trained.model, prov), fs::path(out_path));
      std::cout << "final epoch mse " << text::format_double(trained.loss_history.back()) << '\n';

    } else if (simulate->parsed()) {
      const auto cfg = load_experiment_config(config_path);
      const auto model = moisture_model_from(load_model(fs::path(model_path)));
      const auto mode = mode_name.empty() ? cfg.mode : parse_mode(mode_name);
      const auto days = read_daily_csv(fs::path(data_path));
      const auto forcing = forcing_of(cfg, days, et0_for_moisture(cfg, et0_model_path));
      const auto lag = static_cast<std::size_t>(model.lag);
      const auto init = observed_theta(days, lag);
      std::vector<double> est;
      if (mode == SimMode::TeacherForced) {
        const auto obs = observed_theta(days, days.size());
        est = simulate_moisture(model, forcing, init, mode, std::span<const double>(obs));
      } else {
        est = simulate_moisture(model, forcing, init, mode);
      }
      std::ostringstream out;
      out << "date,theta_est_vwc,warmup\n";
      for (std::size_t i = 0; i < est.size(); ++i)
        out << format_date(days[i].weather.date) << ',' << text::format_double(est[i]) << ',' << (i < lag ? 1 : 0)
            << '\n';
      write_file(out_path, out.str());

    } else if (evaluate_cmd->parsed()) {
      const auto days = read_daily_csv(fs::path(data_path));
      if (!et0_model_path.empty()) {
        if (config_path.empty()) fail(ErrorCode::InvalidArgument, "--et0-model needs --config for the site");
        const auto cfg = load_experiment_config(config_path);
        const auto model = et0_model_from(load_model(fs::path(et0_model_path)));
        std::vector<double> obs, est;
        for (const auto& d : days) {
          obs.push_back(hargreaves_et0(d.weather, cfg.site));
          est.push_back(predict_et0(model, d.weather.tmax, d.weather.tavg, d.weather.tmin));
        }
        print_metrics("et0", evaluate(obs, est));
      } else {
        if (estimates_path.empty()) fail(ErrorCode::InvalidArgument, "pass --estimates or --et0-model");
        std::ifstream in(estimates_path);
        if (!in) fail(ErrorCode::Io, "cannot open " + estimates_path);
        std::string line;
        std::getline(in, line);
        if (text::trim(line) != "date,theta_est_vwc,warmup")
          fail(ErrorCode::Parse, estimates_path + ":1: not an estimates file");
        std::vector<double> obs, est;
        std::size_t i = 0;
        for (std::size_t lineno = 2; std::getline(in, line); ++lineno) {
          if (text::trim(line).empty()) continue;
          const auto f = text::split_csv(line);
          const auto at = estimates_path + ":" + std::to_string(lineno);
          if (f.size() != 3) fail(ErrorCode::Parse, at + ": expected 3 fields");
          if (i >= days.size() || format_date(days[i].weather.date) != text::trim(f[0]))
            fail(ErrorCode::Dimension, at + ": date does not line up with the data file");
          const bool warmup = text::parse_int(f[2], at) != 0;
          if (!warmup && days[i].theta) {
            obs.push_back(*days[i].theta);
            est.push_back(text::parse_double(f[1], at));
          }
          ++i;
        }
        print_metrics("theta", evaluate(obs, est));
      }

    } else if (run->parsed()) {
      auto cfg = load_experiment_config(config_path);
      if (seed) {
        cfg.et0_training.seed = *seed;
        cfg.moisture_training.seed = *seed + 1;
      }
      const auto report = run_experiment(cfg);
      write_report(report, fs::path(out_path));
      std::cout << format_metrics_csv(report);

    } else if (plots->parsed()) {
      const auto cfg = load_experiment_config(fs::path(report_dir) / "config.json");
      std::vector<PeriodSeries> series;
      for (const auto& p : cfg.periods) series.push_back(read_period_series(fs::path(report_dir) / ("series_" + p.name + ".csv")));
      for (const auto& path : export_plot_data(series, fs::path(out_path))) std::cout << "wrote " << path.string() << '\n';
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
