"""Flat ``key = value`` run configuration."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field

from .dynamics import Topology
from .measures import MEASURES
from .noise import PowerLawParams

ENGINES = ("fourier", "gh", "mc")
FORMATS = ("csv", "json", "svg")


class ConfigError(ValueError):
    def __init__(self, key: str | None, message: str):
        self.key = key
        super().__init__(f"{key}: {message}" if key else message)


@dataclass(frozen=True)
class RunConfig:
    topology: Topology = Topology.COM
    p: float = 1.0
    lam: float = 1.0
    delta_a: float = 1.0
    delta_b: float = 1.0
    delta_c: float = 1.0
    g: float = 1e-2
    alpha: float = 3.0
    tau_max: float = 20.0
    tau_steps: int = 400
    measures: tuple[str, ...] = tuple(MEASURES)
    mc_samples: int = 10_000
    seed: int = 42
    engine: str = "fourier"
    output: str | None = None
    format: str = "csv"

    @property
    def noise(self) -> PowerLawParams:
        return PowerLawParams(self.g, self.alpha)

    def with_value(self, key: str, value) -> "RunConfig":
        """Copy with one config key replaced (key spelled as in the config file)."""
        return build_config({**to_mapping(self), key: value})


# config-file key -> dataclass field
_KEYS = {f.name: f.name for f in dataclasses.fields(RunConfig)}
_KEYS["lambda"] = _KEYS.pop("lam")
CONFIG_KEYS = tuple(_KEYS)


def _parse_float(key, raw) -> float:
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise ConfigError(key, f"cannot parse {raw!r} as a number") from None
    if not math.isfinite(value):
        raise ConfigError(key, f"value must be finite, got {raw!r}")
    return value


def _parse_int(key, raw) -> int:
    try:
        return int(str(raw).strip())
    except ValueError:
        raise ConfigError(key, f"cannot parse {raw!r} as an integer") from None


def _convert(key: str, raw):
    if key == "topology":
        try:
            return Topology.parse(raw)
        except ValueError as exc:
            raise ConfigError(key, str(exc)) from None
    if key in ("tau_steps", "mc_samples", "seed"):
        return _parse_int(key, raw)
    if key == "measures":
        names = raw if isinstance(raw, (list, tuple)) else [m.strip() for m in str(raw).split(",")]
        names = tuple(m for m in names if m)
        unknown = [m for m in names if m not in MEASURES]
        if unknown or not names:
            raise ConfigError(key, f"unknown measure(s) {unknown}; choose from {', '.join(MEASURES)}")
        return names
    if key == "engine":
        value = str(raw).strip().lower()
        if value not in ENGINES:
            raise ConfigError(key, f"unknown engine {raw!r}; expected one of {', '.join(ENGINES)}")
        return value
    if key == "format":
        value = str(raw).strip().lower()
        if value not in FORMATS:
            raise ConfigError(key, f"unknown format {raw!r}; expected one of {', '.join(FORMATS)}")
        return value
    if key == "output":
        return None if raw in (None, "") else str(raw).strip()
    return _parse_float(key, raw)


def _validate(cfg: RunConfig) -> None:
    if not 0.0 <= cfg.p <= 1.0:
        raise ConfigError("p", f"must lie in [0, 1], got {cfg.p}")
    if cfg.lam < 0:
        raise ConfigError("lambda", f"must be >= 0, got {cfg.lam}")
    if cfg.g <= 0:
        raise ConfigError("g", f"must be > 0, got {cfg.g}")
    if cfg.alpha <= 1:
        raise ConfigError("alpha", f"must be > 1, got {cfg.alpha}")
    try:
        PowerLawParams(cfg.g, cfg.alpha)
    except ValueError as exc:
        raise ConfigError("alpha", str(exc)) from None
    if cfg.tau_max <= 0:
        raise ConfigError("tau_max", f"must be > 0, got {cfg.tau_max}")
    if cfg.tau_steps < 2:
        raise ConfigError("tau_steps", f"must be >= 2, got {cfg.tau_steps}")
    if cfg.mc_samples < 1:
        raise ConfigError("mc_samples", f"must be >= 1, got {cfg.mc_samples}")
    if cfg.seed < 0:
        raise ConfigError("seed", f"must be >= 0, got {cfg.seed}")


def build_config(values: dict) -> RunConfig:
    kwargs = {}
    for key, raw in values.items():
        norm = key.strip().replace("-", "_")
        if norm not in _KEYS:
            raise ConfigError(key, "unknown key")
        kwargs[_KEYS[norm]] = _convert(norm, raw)
    cfg = RunConfig(**kwargs)
    _validate(cfg)
    return cfg


def to_mapping(cfg: RunConfig) -> dict:
    out = {}
    for key, name in _KEYS.items():
        value = getattr(cfg, name)
        if isinstance(value, Topology):
            value = value.value
        out[key] = value
    return out


def parse_pairs(text: str) -> dict[str, str]:
    """Read ``key = value`` lines; ``#`` starts a comment."""
    pairs: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(None, f"line {lineno}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(None, f"line {lineno}: missing key")
        pairs[key] = value
    return pairs


def parse_config(text: str = "", overrides: dict | None = None) -> RunConfig:
    """Parse config text, apply ``overrides`` on top, and validate."""
    values = parse_pairs(text)
    values.update(overrides or {})
    return build_config(values)
