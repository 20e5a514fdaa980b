"""Run configuration shared by the CLI and the acceptance suite."""

from __future__ import annotations

import configparser
import dataclasses
from dataclasses import dataclass


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    quad_rtol: float = 1e-6
    pole_guard: float = 1e-8
    enum_cap: int = 10 ** 8
    bump_radius: float = 1.0
    radius_cap: float = 1.0
    nu_norm_min: float = 20.0
    regular_T: float = 2.0
    seed: int = 0
    format: str = "json"
    out: str | None = None
    # grids
    band_t: tuple = (5.0, 10.0, 20.0, 50.0)
    ball_t: tuple = (20.0, 50.0)
    ray_t_min: float = 2.0
    ray_t_max: float = 200.0
    ray_samples: int = 400
    random_trials: int = 1000

    def __post_init__(self):
        if self.quad_rtol <= 0 or self.pole_guard <= 0:
            raise ConfigError("tolerances must be positive")
        if self.enum_cap < 10 ** 4:
            raise ConfigError("enumeration cap must be at least 1e4")
        if not 0 < self.bump_radius <= self.radius_cap:
            raise ConfigError("need 0 < bump_radius <= radius_cap")
        if self.format not in ("json", "csv"):
            raise ConfigError(f"unknown format {self.format!r}")
        if not self.band_t or not self.ball_t or self.ray_samples < 2 or self.random_trials < 1:
            raise ConfigError("grids must be non-empty")
        if not 0 < self.ray_t_min < self.ray_t_max:
            raise ConfigError("need 0 < ray_t_min < ray_t_max")

    def replace(self, **kw) -> "RunConfig":
        return dataclasses.replace(self, **{k: v for k, v in kw.items() if v is not None})


def _coerce(name, default, raw: str):
    raw = raw.strip()
    if isinstance(default, tuple):
        return tuple(float(x) for x in raw.split(",") if x.strip())
    if name == "out":
        return raw or None
    if isinstance(default, bool):
        return raw.lower() in ("1", "true", "yes")
    if isinstance(default, int):
        return int(float(raw))
    if isinstance(default, float):
        return float(raw)
    return raw


def load_config(path: str | None = None, text: str | None = None) -> RunConfig:
    """Read flat ``key = value`` lines (``#`` comments) into a RunConfig."""
    if path is None and text is None:
        return RunConfig()
    if text is None:
        with open(path) as fh:
            text = fh.read()
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    parser.optionxform = str
    parser.read_string("[run]\n" + text)
    defaults = RunConfig()
    known = {f.name: getattr(defaults, f.name) for f in dataclasses.fields(RunConfig)}
    kw = {}
    for key, raw in parser["run"].items():
        if key not in known:
            raise ConfigError(f"unknown config key {key!r}")
        try:
            kw[key] = _coerce(key, known[key], raw)
        except ValueError as exc:
            raise ConfigError(f"bad value for {key}: {raw!r}") from exc
    return RunConfig(**kw)
