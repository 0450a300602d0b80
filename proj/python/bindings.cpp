#include <numbers>
#include <optional>
#include <span>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "paddy/crop.hpp"
#include "paddy/error.hpp"
#include "paddy/evapo.hpp"
#include "paddy/experiment.hpp"
#include "paddy/hydro_synth.hpp"
#include "paddy/metrics.hpp"
#include "paddy/model_io.hpp"
#include "paddy/moisture.hpp"

namespace py = pybind11;
using namespace paddy;

namespace {

std::vector<DailyWeather> weather_from(const std::string& start, const std::vector<double>& tmax,
                                       const std::vector<double>& tavg, const std::vector<double>& tmin) {
  require(tmax.size() == tavg.size() && tavg.size() == tmin.size(), ErrorCode::Dimension,
          "tmax, tavg and tmin must have equal lengths");
  const Date d0 = parse_date(start);
  std::vector<DailyWeather> out;
  for (std::size_t i = 0; i < tmax.size(); ++i) {
    DailyWeather w{static_cast<int>(i), add_days(d0, static_cast<int>(i)), tmax[i], tavg[i], tmin[i], 0.0};
    w.validate();
    out.push_back(w);
  }
  return out;
}

std::vector<ForcingDay> forcing_from(const std::vector<double>& et0, const std::vector<double>& precip,
                                     const std::vector<double>& kc) {
  require(et0.size() == precip.size() && precip.size() == kc.size(), ErrorCode::Dimension,
          "et0, precip and kc must have equal lengths");
  std::vector<ForcingDay> out;
  for (std::size_t i = 0; i < et0.size(); ++i) out.push_back(ForcingDay{et0[i], precip[i], kc[i]});
  return out;
}

SiteLocation site_at(double latitude_deg) {
  SiteLocation s;
  s.latitude = latitude_deg * std::numbers::pi / 180.0;
  s.validate();
  return s;
}

SimMode mode_from(const std::string& name) {
  if (name == "closed_loop") return SimMode::ClosedLoop;
  if (name == "teacher_forced") return SimMode::TeacherForced;
  fail(ErrorCode::InvalidArgument, "mode must be closed_loop or teacher_forced");
}

py::dict metrics_dict(const RegressionMetrics& m) {
  py::dict d;
  d["n"] = m.n;
  d["r2"] = m.r2;
  d["r2_nse"] = m.r2_nse;
  d["rmse"] = m.rmse;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Neural soil-moisture and ET0 estimation for paddy fields";

  py::register_exception<Error>(m, "PaddyError", PyExc_ValueError);

  m.attr("DEFAULT_LATITUDE_DEG") = kDefaultLatitudeDeg;

  m.def("sigmoid_gain", &sigmoid_gain, py::arg("y"), py::arg("gain"));
  m.def("adaptive_gain", &adaptive_gain, py::arg("pattern_error"));

  m.def("extraterrestrial_radiation",
        [](double latitude_deg, int doy) { return extraterrestrial_radiation(site_at(latitude_deg), doy); },
        py::arg("latitude_deg"), py::arg("doy"));
  m.def("hargreaves_et0", py::overload_cast<double, double, double, double>(&hargreaves_et0), py::arg("tmax"),
        py::arg("tavg"), py::arg("tmin"), py::arg("ra"));

  m.def(
      "kc_at",
      [](int dap, int len_ini, int len_dev, int len_mid, int len_late, double kc_ini, double kc_mid, double kc_end) {
        const KcSchedule s{len_ini, len_dev, len_mid, len_late, kc_ini, kc_mid, kc_end};
        validate_schedule(s, s.season_length());
        return kc_at(s, dap);
      },
      py::arg("dap"), py::arg("len_ini") = 20, py::arg("len_dev") = 30, py::arg("len_mid") = 40,
      py::arg("len_late") = 28, py::arg("kc_ini") = 1.05, py::arg("kc_mid") = 1.20, py::arg("kc_end") = 0.90);

  m.def("r_squared", [](const std::vector<double>& o, const std::vector<double>& e) { return r_squared(o, e); },
        py::arg("obs"), py::arg("est"));
  m.def("r_squared_nse",
        [](const std::vector<double>& o, const std::vector<double>& e) { return r_squared_nse(o, e); },
        py::arg("obs"), py::arg("est"));
  m.def("rmse", [](const std::vector<double>& o, const std::vector<double>& e) { return rmse(o, e); },
        py::arg("obs"), py::arg("est"));

  py::class_<Et0Model>(m, "Et0Model")
      .def("predict", &predict_et0, py::arg("tmax"), py::arg("tavg"), py::arg("tmin"))
      .def("save", [](const Et0Model& e, const std::filesystem::path& p) { save_model(to_artifact(e, {}), p); })
      .def_static("load", [](const std::filesystem::path& p) { return et0_model_from(load_model(p)); })
      .def_property_readonly("gain", [](const Et0Model& e) { return e.net.gain(); });

  m.def(
      "train_et0",
      [](const std::vector<double>& tmax, const std::vector<double>& tavg, const std::vector<double>& tmin,
         const std::string& start_date, double latitude_deg, int epochs, double learning_rate, std::uint64_t seed) {
        const auto days = weather_from(start_date, tmax, tavg, tmin);
        auto t = train_et0_model(days, site_at(latitude_deg), TrainConfig{epochs, learning_rate, seed, 0.5});
        return py::make_tuple(t.model, t.loss_history);
      },
      py::arg("tmax"), py::arg("tavg"), py::arg("tmin"), py::arg("start_date"),
      py::arg("latitude_deg") = kDefaultLatitudeDeg, py::arg("epochs") = 1000, py::arg("learning_rate") = 0.2,
      py::arg("seed") = 0, "Returns (model, per-epoch mean squared error).");

  py::class_<MoistureModel>(m, "MoistureModel")
      .def_readonly("lag", &MoistureModel::lag)
      .def(
          "simulate",
          [](const MoistureModel& mm, const std::vector<double>& et0, const std::vector<double>& precip,
             const std::vector<double>& kc, const std::vector<double>& theta_init, const std::string& mode,
             std::optional<std::vector<double>> theta_obs) {
            const auto f = forcing_from(et0, precip, kc);
            std::optional<std::span<const double>> obs;
            if (theta_obs) obs = std::span<const double>(*theta_obs);
            return simulate_moisture(mm, f, theta_init, mode_from(mode), obs);
          },
          py::arg("et0"), py::arg("precip"), py::arg("kc"), py::arg("theta_init"), py::arg("mode") = "closed_loop",
          py::arg("theta_obs") = py::none())
      .def("save", [](const MoistureModel& mm, const std::filesystem::path& p) { save_model(to_artifact(mm, {}), p); })
      .def_static("load", [](const std::filesystem::path& p) { return moisture_model_from(load_model(p)); });

  m.def(
      "train_moisture",
      [](const std::vector<double>& et0, const std::vector<double>& precip, const std::vector<double>& kc,
         const std::vector<double>& theta, int lag, std::size_t hidden, int epochs, double learning_rate,
         std::uint64_t seed) {
        const auto f = forcing_from(et0, precip, kc);
        auto t = train_moisture_model(f, theta, TrainConfig{epochs, learning_rate, seed, 0.5}, lag, {}, hidden);
        return py::make_tuple(t.model, t.loss_history);
      },
      py::arg("et0"), py::arg("precip"), py::arg("kc"), py::arg("theta"), py::arg("lag") = 1, py::arg("hidden") = 8,
      py::arg("epochs") = 1000, py::arg("learning_rate") = 0.2, py::arg("seed") = 0,
      "Teacher-forced training. Returns (model, per-epoch mean squared error).");

  m.def(
      "synthetic_season",
      [](std::uint64_t seed, const std::string& start_date, int n_days) {
        WeatherGenParams g;
        g.seed = seed;
        g.start_date = parse_date(start_date);
        g.n_days = n_days;
        const auto w = generate_weather(g);
        const SiteLocation site;
        KcSchedule kc;
        kc.len_late = n_days - kc.len_ini - kc.len_dev - kc.len_mid;
        const auto truth = generate_truth(w, site, kc, FieldParams{});
        py::dict d;
        std::vector<std::string> dates;
        std::vector<double> tmax, tavg, tmin, precip, et0, kcs;
        for (std::size_t i = 0; i < w.size(); ++i) {
          dates.push_back(format_date(w[i].date));
          tmax.push_back(w[i].tmax);
          tavg.push_back(w[i].tavg);
          tmin.push_back(w[i].tmin);
          precip.push_back(w[i].precip);
          et0.push_back(truth.forcing[i].et0);
          kcs.push_back(truth.forcing[i].kc);
        }
        d["date"] = dates;
        d["tmax"] = tmax;
        d["tavg"] = tavg;
        d["tmin"] = tmin;
        d["precip"] = precip;
        d["et0"] = et0;
        d["kc"] = kcs;
        d["theta"] = truth.theta;
        return d;
      },
      py::arg("seed"), py::arg("start_date") = "2010-10-14", py::arg("n_days") = 118,
      "Seeded weather with bucket-model soil moisture, as a dict of columns.");

  m.def("default_config", [] { return experiment_config_to_json(default_experiment_config()); },
        "Default two-period experiment as a JSON string.");

  m.def(
      "run_experiment",
      [](std::optional<std::string> config_json, std::optional<std::filesystem::path> out_dir) {
        const auto cfg = config_json ? parse_experiment_config(*config_json) : default_experiment_config();
        const auto r = run_experiment(cfg);
        if (out_dir) write_report(r, *out_dir);
        py::dict metrics;
        for (const auto& c : r.cells) metrics[py::str(c.variable + "/" + c.period)] = metrics_dict(c.metrics);
        py::dict periods;
        for (const auto& s : r.periods) {
          py::dict d;
          d["et0_reference"] = s.et0_reference;
          d["et0_estimate"] = s.et0_estimate;
          d["theta_obs"] = s.theta_obs;
          d["theta_est"] = s.theta_est;
          d["warmup"] = s.warmup;
          periods[py::str(s.name)] = d;
        }
        py::dict out;
        out["metrics"] = metrics;
        out["periods"] = periods;
        out["et0_loss"] = r.et0.loss_history;
        out["moisture_loss"] = r.moisture.loss_history;
        return out;
      },
      py::arg("config_json") = py::none(), py::arg("out_dir") = py::none(),
      "Runs both periods; metrics are keyed 'et0/train', 'theta/validation' and so on.");
}
