"""Neural soil-moisture and ET0 estimation for paddy fields."""

from ._core import (
    DEFAULT_LATITUDE_DEG,
    Et0Model,
    MoistureModel,
    PaddyError,
    adaptive_gain,
    default_config,
    extraterrestrial_radiation,
    hargreaves_et0,
    kc_at,
    r_squared,
    r_squared_nse,
    rmse,
    run_experiment,
    sigmoid_gain,
    synthetic_season,
    train_et0,
    train_moisture,
)

__all__ = [
    "DEFAULT_LATITUDE_DEG",
    "Et0Model",
    "MoistureModel",
    "PaddyError",
    "adaptive_gain",
    "default_config",
    "extraterrestrial_radiation",
    "hargreaves_et0",
    "kc_at",
    "r_squared",
    "r_squared_nse",
    "rmse",
    "run_experiment",
    "sigmoid_gain",
    "synthetic_season",
    "train_et0",
    "train_moisture",
]
