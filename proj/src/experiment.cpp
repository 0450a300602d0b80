#include "paddy/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "paddy/error.hpp"
#include "paddy/text.hpp"

namespace paddy {

using nlohmann::json;

namespace {

constexpr std::string_view kConfigFormat = "paddy-experiment";
constexpr int kConfigVersion = 1;

double deg_to_rad(double d) { return d * std::numbers::pi / 180.0; }
double rad_to_deg(double r) { return r * 180.0 / std::numbers::pi; }

// Strict accessor: every key must be present and of the right type, and
// no unknown keys are tolerated.
class Obj {
 public:
  Obj(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(ErrorCode::Config, path_ + ": expected an object");
  }

  /// Rejects keys that were never read.
  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) fail(ErrorCode::Config, path_ + "." + key + ": unknown key");
    }
  }

  const json& at(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) fail(ErrorCode::Config, path_ + "." + key + ": missing key");
    return *it;
  }
  bool has(const std::string& key) const { return j_.contains(key); }

  double num(const std::string& key) {
    const auto& v = at(key);
    if (!v.is_number()) fail(ErrorCode::Config, path_ + "." + key + ": expected a number");
    return v.get<double>();
  }
  long long integer(const std::string& key) {
    const auto& v = at(key);
    if (!v.is_number_integer()) fail(ErrorCode::Config, path_ + "." + key + ": expected an integer");
    return v.get<long long>();
  }
  std::uint64_t unsigned_integer(const std::string& key) {
    const auto& v = at(key);
    if (!v.is_number_unsigned()) fail(ErrorCode::Config, path_ + "." + key + ": expected a non-negative integer");
    return v.get<std::uint64_t>();
  }
  std::string str(const std::string& key) {
    const auto& v = at(key);
    if (!v.is_string()) fail(ErrorCode::Config, path_ + "." + key + ": expected a string");
    return v.get<std::string>();
  }
  Normalizer bounds(const std::string& key) {
    const auto& v = at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      fail(ErrorCode::Config, path_ + "." + key + ": expected [lo, hi]");
    try {
      return Normalizer(v[0].get<double>(), v[1].get<double>());
    } catch (const Error& e) {
      fail(ErrorCode::Config, path_ + "." + key + ": " + e.what());
    }
  }
  Obj child(const std::string& key) { return Obj(at(key), path_ + "." + key); }
  const std::string& path() const { return path_; }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

TrainConfig train_from(Obj o) {
  TrainConfig t;
  t.epochs = static_cast<int>(o.integer("epochs"));
  t.learning_rate = o.num("learning_rate");
  t.seed = o.unsigned_integer("seed");
  t.init_half_width = o.num("init_half_width");
  o.finish();
  return t;
}

json train_to(const TrainConfig& t) {
  return json{{"epochs", t.epochs},
              {"learning_rate", t.learning_rate},
              {"seed", t.seed},
              {"init_half_width", t.init_half_width}};
}

json bounds_to(const Normalizer& n) { return json::array({n.lo(), n.hi()}); }

std::string source_name(DataSource s) {
  switch (s) {
    case DataSource::Synthetic: return "synthetic";
    case DataSource::DailyCsv: return "daily_csv";
    case DataSource::HalfHourlyCsv: return "half_hourly_csv";
  }
  return "synthetic";
}

WeatherGenParams weather_from(Obj o) {
  WeatherGenParams w;
  w.seed = o.unsigned_integer("seed");
  w.tavg_mean = o.num("tavg_mean_c");
  w.tavg_amplitude = o.num("tavg_amplitude_c");
  w.peak_doy = static_cast<int>(o.integer("peak_doy"));
  w.tavg_noise_sd = o.num("tavg_noise_sd_c");
  w.diurnal_range_mean = o.num("diurnal_range_mean_c");
  w.diurnal_range_log_sd = o.num("diurnal_range_log_sd");
  w.wet_day_prob = o.num("wet_day_prob");
  w.wet_day_prob_end = o.num("wet_day_prob_end");
  w.wet_persistence = o.num("wet_persistence");
  w.precip_mean_wet = o.num("precip_mean_wet_mm");
  o.finish();
  return w;
}

json weather_to(const WeatherGenParams& w) {
  return json{{"seed", w.seed},
              {"tavg_mean_c", w.tavg_mean},
              {"tavg_amplitude_c", w.tavg_amplitude},
              {"peak_doy", w.peak_doy},
              {"tavg_noise_sd_c", w.tavg_noise_sd},
              {"diurnal_range_mean_c", w.diurnal_range_mean},
              {"diurnal_range_log_sd", w.diurnal_range_log_sd},
              {"wet_day_prob", w.wet_day_prob},
              {"wet_day_prob_end", w.wet_day_prob_end},
              {"wet_persistence", w.wet_persistence},
              {"precip_mean_wet_mm", w.precip_mean_wet}};
}

PeriodSpec period_from(Obj o, const std::filesystem::path& base_dir) {
  PeriodSpec p;
  p.name = o.str("name");
  if (p.name.empty() || p.name.find_first_of("/\\ ,") != std::string::npos)
    fail(ErrorCode::Config, o.path() + ".name: must be non-empty without spaces, commas or slashes");
  try {
    p.planting_date = parse_date(o.str("planting_date"));
  } catch (const Error& e) {
    fail(ErrorCode::Config, o.path() + ".planting_date: " + e.what());
  }
  p.season_days = static_cast<int>(o.integer("season_days"));
  const auto src = o.str("source");
  if (src == "synthetic") {
    p.source = DataSource::Synthetic;
    p.weather = weather_from(o.child("weather"));
  } else if (src == "daily_csv" || src == "half_hourly_csv") {
    p.source = src == "daily_csv" ? DataSource::DailyCsv : DataSource::HalfHourlyCsv;
    std::filesystem::path path = o.str("path");
    p.path = path.is_relative() && !base_dir.empty() ? base_dir / path : path;
    if (p.source == DataSource::HalfHourlyCsv) p.min_coverage = static_cast<int>(o.integer("min_coverage"));
  } else {
    fail(ErrorCode::Config, o.path() + ".source: expected synthetic, daily_csv or half_hourly_csv");
  }
  p.weather.start_date = p.planting_date;
  p.weather.n_days = p.season_days;
  o.finish();
  return p;
}

json period_to(const PeriodSpec& p) {
  json j{{"name", p.name},
         {"planting_date", format_date(p.planting_date)},
         {"season_days", p.season_days},
         {"source", source_name(p.source)}};
  if (p.source == DataSource::Synthetic) {
    j["weather"] = weather_to(p.weather);
  } else {
    j["path"] = p.path.generic_string();
    if (p.source == DataSource::HalfHourlyCsv) j["min_coverage"] = p.min_coverage;
  }
  return j;
}

// Runs `fn`, prefixing any library error with the stage name.
template <class Fn>
auto stage(const std::string& name, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.code(), "[" + name + "] " + e.what());
  } catch (const std::exception& e) {
    throw Error(ErrorCode::InvalidArgument, "[" + name + "] " + e.what());
  }
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  auto out = open_output(path);
  out << content;
  if (!out) fail(ErrorCode::Io, "write failed for " + path.string());
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    fail(ErrorCode::Io, "cannot create directory " + dir.string() + (ec ? ": " + ec.message() : ""));
}

std::vector<ForcingDay> forcing_for(const PeriodSeries& s, Et0Source src) {
  std::vector<ForcingDay> f;
  f.reserve(s.days.size());
  for (std::size_t i = 0; i < s.days.size(); ++i) {
    const double et0 = src == Et0Source::Surrogate ? s.et0_estimate[i] : s.et0_reference[i];
    f.push_back(ForcingDay{et0, s.days[i].weather.precip, s.kc[i]});
  }
  return f;
}

std::string fmt(double v) { return text::format_double(v); }

}  // namespace

void ExperimentConfig::validate() const {
  try {
    site.validate();
    et0_training.validate();
    moisture_training.validate();
    field.validate();
  } catch (const Error& e) {
    fail(ErrorCode::Config, e.what());
  }
  require(lag >= 1, ErrorCode::Config, "lag must be >= 1");
  require(moisture_hidden >= 1, ErrorCode::Config, "moisture hidden layer must have at least one node");
  for (const auto& p : periods) {
    require(p.season_days >= 1, ErrorCode::Config, p.name + ": season_days must be >= 1");
    try {
      validate_schedule(kc, p.season_days);
    } catch (const Error& e) {
      fail(ErrorCode::Config, p.name + ": " + e.what());
    }
    if (p.source == DataSource::Synthetic) {
      try {
        p.weather.validate();
      } catch (const Error& e) {
        fail(ErrorCode::Config, p.name + ": " + e.what());
      }
    }
  }
  require(periods[0].name != periods[1].name, ErrorCode::Config, "period names must differ");
}

ExperimentConfig default_experiment_config() {
  using namespace std::chrono;
  ExperimentConfig cfg;
  // 20/30/40/28 keeps the standard rice stage proportions on a 118-day season.
  cfg.kc.len_late = 28;
  cfg.et0_training.seed = 11;
  cfg.moisture_training.seed = 12;

  auto& p1 = cfg.periods[0];
  p1.name = "period1";
  p1.planting_date = year{2010} / October / 14;
  p1.season_days = 118;
  p1.weather.seed = 2010;
  p1.weather.tavg_mean = 23.3;
  p1.weather.tavg_amplitude = 0.6;
  p1.weather.peak_doy = 320;
  p1.weather.diurnal_range_log_sd = 0.35;
  p1.weather.wet_day_prob = 0.65;
  p1.weather.wet_day_prob_end = 0.65;

  auto& p2 = cfg.periods[1];
  p2.name = "period2";
  p2.planting_date = year{2011} / August / 20;
  p2.season_days = 118;
  p2.weather.seed = 2011;
  p2.weather.tavg_mean = 23.8;
  p2.weather.tavg_amplitude = 0.6;
  p2.weather.peak_doy = 345;
  p2.weather.diurnal_range_log_sd = 0.35;
  p2.weather.wet_day_prob = 0.3;
  p2.weather.wet_day_prob_end = 0.7;

  for (auto& p : cfg.periods) {
    p.weather.start_date = p.planting_date;
    p.weather.n_days = p.season_days;
  }
  return cfg;
}

ExperimentConfig parse_experiment_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Parse, std::string("config is not valid JSON: ") + e.what());
  }
  ExperimentConfig cfg;
  {
    Obj o(root, "config");
    if (o.str("format") != kConfigFormat) fail(ErrorCode::Config, "config.format: expected 'paddy-experiment'");
    const auto version = o.integer("version");
    if (version != kConfigVersion)
      fail(ErrorCode::Version, "unsupported config version " + std::to_string(version));

    {
      auto s = o.child("site");
      cfg.site.latitude = deg_to_rad(s.num("latitude_deg"));
      cfg.site.altitude = s.num("altitude_m");
      s.finish();
    }
    {
      auto n = o.child("normalizers");
      cfg.et0_norms = Et0Normalizers{n.bounds("tmax_c"), n.bounds("tavg_c"), n.bounds("tmin_c"), n.bounds("et0_mm")};
      cfg.moisture_norms =
          MoistureNormalizers{cfg.et0_norms.et0, n.bounds("precip_mm"), n.bounds("kc"), n.bounds("theta_vwc")};
      n.finish();
    }
    {
      auto k = o.child("kc_schedule");
      cfg.kc.len_ini = static_cast<int>(k.integer("len_ini"));
      cfg.kc.len_dev = static_cast<int>(k.integer("len_dev"));
      cfg.kc.len_mid = static_cast<int>(k.integer("len_mid"));
      cfg.kc.len_late = static_cast<int>(k.integer("len_late"));
      cfg.kc.kc_ini = k.num("kc_ini");
      cfg.kc.kc_mid = k.num("kc_mid");
      cfg.kc.kc_end = k.num("kc_end");
      k.finish();
    }
    cfg.et0_training = train_from(o.child("et0_training"));
    cfg.moisture_training = train_from(o.child("moisture_training"));
    {
      auto m = o.child("moisture_model");
      const auto hidden = m.integer("hidden");
      if (hidden < 1) fail(ErrorCode::Config, "config.moisture_model.hidden: must be >= 1");
      cfg.moisture_hidden = static_cast<std::size_t>(hidden);
      cfg.lag = static_cast<int>(m.integer("lag"));
      const auto mode = m.str("sim_mode");
      if (mode == "closed_loop") cfg.mode = SimMode::ClosedLoop;
      else if (mode == "teacher_forced") cfg.mode = SimMode::TeacherForced;
      else fail(ErrorCode::Config, "config.moisture_model.sim_mode: expected closed_loop or teacher_forced");
      const auto src = m.str("et0_input");
      if (src == "surrogate") cfg.moisture_et0 = Et0Source::Surrogate;
      else if (src == "hargreaves") cfg.moisture_et0 = Et0Source::Hargreaves;
      else fail(ErrorCode::Config, "config.moisture_model.et0_input: expected surrogate or hargreaves");
      m.finish();
    }
    {
      auto f = o.child("field");
      cfg.field.root_depth = f.num("root_depth_m");
      cfg.field.theta_sat = f.num("theta_sat");
      cfg.field.theta_res = f.num("theta_res");
      cfg.field.theta_init = f.num("theta_init");
      cfg.field.perc_rate = f.num("perc_rate_mm");
      cfg.field.runoff_threshold = f.num("runoff_threshold");
      const auto& irr = f.at("irrigation");
      if (!irr.is_array()) fail(ErrorCode::Config, "config.field.irrigation: expected an array");
      for (std::size_t i = 0; i < irr.size(); ++i) {
        Obj ev(irr[i], "config.field.irrigation[" + std::to_string(i) + "]");
        cfg.field.irrigation.push_back(IrrigationEvent{static_cast<int>(ev.integer("day_index")), ev.num("mm")});
        ev.finish();
      }
      f.finish();
    }
    const auto& periods = o.at("periods");
    if (!periods.is_array() || periods.size() != 2)
      fail(ErrorCode::Config, "config.periods: expected exactly two periods (training, validation)");
    for (std::size_t i = 0; i < 2; ++i)
      cfg.periods[i] = period_from(Obj(periods[i], "config.periods[" + std::to_string(i) + "]"), base_dir);
    o.finish();
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_experiment_config(ss.str(), path.parent_path());
}

std::string experiment_config_to_json(const ExperimentConfig& cfg) {
  json irrigation = json::array();
  for (const auto& ev : cfg.field.irrigation) irrigation.push_back(json{{"day_index", ev.day_index}, {"mm", ev.mm}});
  json j{
      {"format", kConfigFormat},
      {"version", kConfigVersion},
      {"site", {{"latitude_deg", rad_to_deg(cfg.site.latitude)}, {"altitude_m", cfg.site.altitude}}},
      {"normalizers",
       {{"tmax_c", bounds_to(cfg.et0_norms.tmax)},
        {"tavg_c", bounds_to(cfg.et0_norms.tavg)},
        {"tmin_c", bounds_to(cfg.et0_norms.tmin)},
        {"et0_mm", bounds_to(cfg.et0_norms.et0)},
        {"precip_mm", bounds_to(cfg.moisture_norms.precip)},
        {"kc", bounds_to(cfg.moisture_norms.kc)},
        {"theta_vwc", bounds_to(cfg.moisture_norms.theta)}}},
      {"kc_schedule",
       {{"len_ini", cfg.kc.len_ini},
        {"len_dev", cfg.kc.len_dev},
        {"len_mid", cfg.kc.len_mid},
        {"len_late", cfg.kc.len_late},
        {"kc_ini", cfg.kc.kc_ini},
        {"kc_mid", cfg.kc.kc_mid},
        {"kc_end", cfg.kc.kc_end}}},
      {"et0_training", train_to(cfg.et0_training)},
      {"moisture_training", train_to(cfg.moisture_training)},
      {"moisture_model",
       {{"hidden", cfg.moisture_hidden},
        {"lag", cfg.lag},
        {"sim_mode", cfg.mode == SimMode::ClosedLoop ? "closed_loop" : "teacher_forced"},
        {"et0_input", cfg.moisture_et0 == Et0Source::Surrogate ? "surrogate" : "hargreaves"}}},
      {"field",
       {{"root_depth_m", cfg.field.root_depth},
        {"theta_sat", cfg.field.theta_sat},
        {"theta_res", cfg.field.theta_res},
        {"theta_init", cfg.field.theta_init},
        {"perc_rate_mm", cfg.field.perc_rate},
        {"runoff_threshold", cfg.field.runoff_threshold},
        {"irrigation", irrigation}}},
      {"periods", json::array({period_to(cfg.periods[0]), period_to(cfg.periods[1])})},
  };
  return j.dump(2) + "\n";
}

const RegressionMetrics& ExperimentReport::cell(std::string_view variable, std::string_view period) const {
  for (const auto& c : cells)
    if (c.variable == variable && c.period == period) return c.metrics;
  fail(ErrorCode::InvalidArgument, "no metric cell " + std::string(variable) + "/" + std::string(period));
}

PeriodSeries load_period(const ExperimentConfig& cfg, const PeriodSpec& spec) {
  PeriodSeries s;
  s.name = spec.name;
  switch (spec.source) {
    case DataSource::Synthetic: {
      const auto weather = generate_weather(spec.weather);
      const auto truth = generate_truth(weather, cfg.site, cfg.kc, cfg.field);
      for (std::size_t i = 0; i < weather.size(); ++i) s.days.push_back(DailyRecord{weather[i], truth.theta[i]});
      break;
    }
    case DataSource::DailyCsv:
      s.days = read_daily_csv(spec.path);
      break;
    case DataSource::HalfHourlyCsv: {
      auto agg = daily_aggregate(read_half_hourly_csv(spec.path), spec.min_coverage, spec.planting_date);
      s.days = std::move(agg.days);
      s.gaps = std::move(agg.gaps);
      break;
    }
  }
  require(!s.days.empty(), ErrorCode::InsufficientHistory, spec.name + ": no valid days");
  for (const auto& d : s.days) {
    require(d.theta.has_value(), ErrorCode::InvalidArgument,
            spec.name + ": day " + format_date(d.weather.date) + " has no soil-moisture observation");
    s.theta_obs.push_back(*d.theta);
    s.kc.push_back(kc_at(cfg.kc, d.weather.day_index));
  }
  return s;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  stage("config", [&] { cfg.validate(); return 0; });
  ExperimentReport r;
  r.config = cfg;
  for (std::size_t i = 0; i < 2; ++i) {
    r.periods[i] = stage("load:" + cfg.periods[i].name, [&] {
      auto s = load_period(cfg, cfg.periods[i]);
      for (const auto& d : s.days) s.et0_reference.push_back(hargreaves_et0(d.weather, cfg.site));
      return s;
    });
  }

  std::vector<DailyWeather> train_days;
  for (const auto& d : r.periods[0].days) train_days.push_back(d.weather);
  r.et0 = stage("train-et0", [&] { return train_et0_model(train_days, cfg.site, cfg.et0_training, cfg.et0_norms); });
  r.et0_provenance = Provenance{cfg.et0_training.seed, cfg.et0_training.epochs,
                                pattern_digest(build_et0_patterns(train_days, cfg.site, cfg.et0_norms))};

  for (auto& s : r.periods) {
    stage("estimate-et0:" + s.name, [&] {
      for (const auto& d : s.days)
        s.et0_estimate.push_back(predict_et0(r.et0.model, d.weather.tmax, d.weather.tavg, d.weather.tmin));
      return 0;
    });
  }

  const auto train_forcing = forcing_for(r.periods[0], cfg.moisture_et0);
  r.moisture = stage("train-moisture", [&] {
    return train_moisture_model(train_forcing, r.periods[0].theta_obs, cfg.moisture_training, cfg.lag,
                                cfg.moisture_norms, cfg.moisture_hidden);
  });
  r.moisture_provenance =
      Provenance{cfg.moisture_training.seed, cfg.moisture_training.epochs,
                 pattern_digest(build_patterns(train_forcing, r.periods[0].theta_obs, cfg.lag, cfg.moisture_norms))};

  for (auto& s : r.periods) {
    s.theta_est = stage("simulate:" + s.name, [&] {
      const auto forcing = forcing_for(s, cfg.moisture_et0);
      require(s.theta_obs.size() > static_cast<std::size_t>(cfg.lag), ErrorCode::InsufficientHistory,
              "period shorter than the lag warm-up");
      return simulate_moisture(r.moisture.model, forcing, std::span(s.theta_obs).first(cfg.lag), cfg.mode,
                               std::span<const double>(s.theta_obs));
    });
    s.warmup = static_cast<std::size_t>(cfg.lag);
  }

  stage("metrics", [&] {
    const char* labels[2] = {"train", "validation"};
    for (std::size_t i = 0; i < 2; ++i)
      r.cells.push_back(MetricCell{"et0", labels[i], evaluate(r.periods[i].et0_reference, r.periods[i].et0_estimate)});
    for (std::size_t i = 0; i < 2; ++i) {
      const auto& s = r.periods[i];
      r.cells.push_back(MetricCell{"theta", labels[i],
                                   evaluate(std::span(s.theta_obs).subspan(s.warmup),
                                            std::span(s.theta_est).subspan(s.warmup))});
    }
    return 0;
  });
  return r;
}

std::string format_metrics_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "variable,period,n,r2_pearson,r2_nse,rmse\n";
  for (const auto& c : report.cells)
    out << c.variable << ',' << c.period << ',' << c.metrics.n << ',' << fmt(c.metrics.r2) << ','
        << fmt(c.metrics.r2_nse) << ',' << fmt(c.metrics.rmse) << '\n';
  return out.str();
}

std::string format_report_text(const ExperimentReport& report) {
  const auto& cfg = report.config;
  std::ostringstream out;
  char buf[160];
  out << "Paddy soil-moisture experiment\n";
  out << "==============================\n\n";
  out << "Training period:   " << report.periods[0].name << " (" << report.periods[0].days.size() << " days from "
      << format_date(cfg.periods[0].planting_date) << ")\n";
  out << "Validation period: " << report.periods[1].name << " (" << report.periods[1].days.size() << " days from "
      << format_date(cfg.periods[1].planting_date) << ")\n";
  out << "Moisture model:    " << report.moisture.model.net.topology().n_inputs << "-"
      << report.moisture.model.net.topology().n_hidden << "-1, lag " << cfg.lag << ", "
      << (cfg.mode == SimMode::ClosedLoop ? "closed-loop" : "teacher-forced") << " simulation, ET0 input from "
      << (cfg.moisture_et0 == Et0Source::Surrogate ? "network" : "Hargreaves") << "\n\n";

  out << "Metrics (R2 = squared Pearson correlation; NSE = 1 - SSE/SST)\n";
  std::snprintf(buf, sizeof buf, "  %-8s %-11s %5s %10s %10s %12s\n", "variable", "period", "n", "R2", "NSE", "RMSE");
  out << buf;
  for (const auto& c : report.cells) {
    std::snprintf(buf, sizeof buf, "  %-8s %-11s %5zu %10.4f %10.4f %12.6f\n", c.variable.c_str(), c.period.c_str(),
                  c.metrics.n, c.metrics.r2, c.metrics.r2_nse, c.metrics.rmse);
    out << buf;
  }
  out << "\nTraining loss (mean squared error per epoch)\n";
  auto loss_line = [&](const char* label, const std::vector<double>& h) {
    std::snprintf(buf, sizeof buf, "  %-9s epochs %d, first %.6e, last %.6e\n", label, static_cast<int>(h.size()),
                  h.front(), h.back());
    out << buf;
  };
  loss_line("et0", report.et0.loss_history);
  loss_line("moisture", report.moisture.loss_history);

  out << "\nData gaps\n";
  bool any = false;
  for (const auto& s : report.periods) {
    for (const auto& g : s.gaps) {
      out << "  " << s.name << " " << format_date(g.date) << ": " << g.records << "/" << kIntervalsPerDay
          << " records, excluded\n";
      any = true;
    }
  }
  if (!any) out << "  none\n";

  out << "\nConfiguration (all values in effect, including library defaults)\n";
  out << experiment_config_to_json(cfg);
  return out.str();
}

void write_period_series(const PeriodSeries& s, const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "date,day_index,tmax_c,tavg_c,tmin_c,precip_mm,kc,et0_hargreaves_mm,et0_estimate_mm,theta_obs_vwc,"
         "theta_est_vwc,warmup\n";
  for (std::size_t i = 0; i < s.days.size(); ++i) {
    const auto& w = s.days[i].weather;
    out << format_date(w.date) << ',' << w.day_index << ',' << fmt(w.tmax) << ',' << fmt(w.tavg) << ','
        << fmt(w.tmin) << ',' << fmt(w.precip) << ',' << fmt(s.kc[i]) << ',' << fmt(s.et0_reference[i]) << ','
        << fmt(s.et0_estimate[i]) << ',' << fmt(s.theta_obs[i]) << ',' << fmt(s.theta_est[i]) << ','
        << (i < s.warmup ? 1 : 0) << '\n';
  }
  if (!out) fail(ErrorCode::Io, "write failed for " + path.string());
}

PeriodSeries read_period_series(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  PeriodSeries s;
  s.name = path.stem().string();
  if (s.name.starts_with("series_")) s.name = s.name.substr(7);

  std::string line;
  if (!std::getline(in, line) || !line.starts_with("date,day_index,tmax_c"))
    fail(ErrorCode::Parse, path.string() + ":1: not a period series file");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    const auto f = text::split_csv(line);
    const auto at = path.string() + ":" + std::to_string(lineno);
    if (f.size() != 12) fail(ErrorCode::Parse, at + ": expected 12 fields");
    DailyRecord d;
    try {
      d.weather.date = parse_date(text::trim(f[0]));
    } catch (const Error& e) {
      fail(ErrorCode::Parse, at + ": " + e.what());
    }
    d.weather.day_index = static_cast<int>(text::parse_int(f[1], at));
    d.weather.tmax = text::parse_double(f[2], at);
    d.weather.tavg = text::parse_double(f[3], at);
    d.weather.tmin = text::parse_double(f[4], at);
    d.weather.precip = text::parse_double(f[5], at);
    d.theta = text::parse_double(f[9], at);
    s.days.push_back(d);
    s.kc.push_back(text::parse_double(f[6], at));
    s.et0_reference.push_back(text::parse_double(f[7], at));
    s.et0_estimate.push_back(text::parse_double(f[8], at));
    s.theta_obs.push_back(*d.theta);
    s.theta_est.push_back(text::parse_double(f[10], at));
    if (text::parse_int(f[11], at) != 0) s.warmup = s.days.size();
  }
  return s;
}

std::vector<std::filesystem::path> export_plot_data(std::span<const PeriodSeries> periods,
                                                    const std::filesystem::path& dir) {
  ensure_dir(dir);
  std::vector<std::filesystem::path> written;

  std::ostringstream temp, rain;
  temp << "period,year,month,days,tmax_mean_c,tavg_mean_c,tmin_mean_c\n";
  rain << "period,year,month,days,precip_total_mm\n";
  for (const auto& s : periods) {
    struct Month {
      int days = 0;
      double tmax = 0, tavg = 0, tmin = 0, precip = 0;
    };
    std::map<std::pair<int, unsigned>, Month> months;
    for (const auto& d : s.days) {
      auto& m = months[{static_cast<int>(d.weather.date.year()), static_cast<unsigned>(d.weather.date.month())}];
      ++m.days;
      m.tmax += d.weather.tmax;
      m.tavg += d.weather.tavg;
      m.tmin += d.weather.tmin;
      m.precip += d.weather.precip;
    }
    for (const auto& [key, m] : months) {
      const std::string prefix = s.name + ',' + std::to_string(key.first) + ',' + std::to_string(key.second) + ',' +
                                 std::to_string(m.days) + ',';
      temp << prefix << fmt(m.tmax / m.days) << ',' << fmt(m.tavg / m.days) << ',' << fmt(m.tmin / m.days) << '\n';
      rain << prefix << fmt(m.precip) << '\n';
    }
  }
  written.push_back(dir / "monthly_temperature.csv");
  write_text(written.back(), temp.str());
  written.push_back(dir / "monthly_precipitation.csv");
  write_text(written.back(), rain.str());

  for (const auto& s : periods) {
    std::ostringstream et0, theta;
    et0 << "date,observed_mm,estimated_mm\n";
    theta << "date,observed_vwc,estimated_vwc,warmup\n";
    for (std::size_t i = 0; i < s.days.size(); ++i) {
      const auto date = format_date(s.days[i].weather.date);
      et0 << date << ',' << fmt(s.et0_reference[i]) << ',' << fmt(s.et0_estimate[i]) << '\n';
      theta << date << ',' << fmt(s.theta_obs[i]) << ',' << fmt(s.theta_est[i]) << ',' << (i < s.warmup ? 1 : 0)
            << '\n';
    }
    written.push_back(dir / ("scatter_et0_" + s.name + ".csv"));
    write_text(written.back(), et0.str());
    written.push_back(dir / ("scatter_theta_" + s.name + ".csv"));
    write_text(written.back(), theta.str());
  }
  return written;
}

void write_report(const ExperimentReport& report, const std::filesystem::path& dir) {
  ensure_dir(dir);
  write_text(dir / "report.txt", format_report_text(report));
  write_text(dir / "metrics.csv", format_metrics_csv(report));
  write_text(dir / "config.json", experiment_config_to_json(report.config));
  for (const auto& s : report.periods) write_period_series(s, dir / ("series_" + s.name + ".csv"));
  save_model(to_artifact(report.et0.model, report.et0_provenance), dir / "et0_model.txt");
  save_model(to_artifact(report.moisture.model, report.moisture_provenance), dir / "moisture_model.txt");
  export_plot_data(report.periods, dir / "plots");
}

}  // namespace paddy
