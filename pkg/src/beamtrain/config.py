"""Simulation configuration: defaults, flat ``key = value`` files and overrides."""
from dataclasses import asdict, dataclass, field, fields, replace
import hashlib
import math

from .channel import DEFAULT_AOA_RANGE, DEFAULT_AOD_RANGE
from .errors import ConfigurationError
from .training import NORMALIZATION_MODES
from .transceiver import SIGNAL_MODES

DEFAULT_SNR_GRID = (0.0, 5.0, 10.0, 15.0, 20.0)


@dataclass(frozen=True)
class SimConfig:
    N: int = 8
    M: int = 8
    N_r: int = 16
    K: int = 4
    L: int = 3
    d_over_lambda: float = 0.5
    aod_range: tuple = DEFAULT_AOD_RANGE
    aoa_range: tuple = DEFAULT_AOA_RANGE
    snr_grid_db: tuple = field(default=DEFAULT_SNR_GRID)
    mc_iterations: int = 500
    master_seed: int = 2024
    signal_mode: str = "gaussian"
    normalization_mode: str = "unit-norm"

    def __post_init__(self):
        validate(self)

    @property
    def N_t(self):
        return self.N * self.M

    def fingerprint(self):
        text = repr(sorted(asdict(self).items()))
        return hashlib.sha256(text.encode()).hexdigest()[:16]


def validate(cfg):
    for name in ("N", "M", "N_r", "K", "L", "mc_iterations"):
        value = getattr(cfg, name)
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            raise ConfigurationError(f"{name} must be a positive integer, got {value!r}")
    if cfg.N_r % cfg.K:
        raise ConfigurationError(f"K={cfg.K} must divide N_r={cfg.N_r}")
    if not (math.isfinite(cfg.d_over_lambda) and cfg.d_over_lambda > 0):
        raise ConfigurationError(f"d_over_lambda must be > 0, got {cfg.d_over_lambda}")
    for name in ("aod_range", "aoa_range"):
        lo, hi = getattr(cfg, name)
        if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
            raise ConfigurationError(f"{name} must be a finite interval lo <= hi, got {(lo, hi)}")
    if not cfg.snr_grid_db:
        raise ConfigurationError("snr_grid_db must not be empty")
    if not all(math.isfinite(x) for x in cfg.snr_grid_db):
        raise ConfigurationError(f"snr_grid_db has non-finite entries: {cfg.snr_grid_db}")
    if not isinstance(cfg.master_seed, int) or not 0 <= cfg.master_seed < 2**64:
        raise ConfigurationError(f"master_seed must be an unsigned 64-bit integer, got {cfg.master_seed!r}")
    if cfg.signal_mode not in SIGNAL_MODES:
        raise ConfigurationError(f"signal_mode must be one of {SIGNAL_MODES}, got {cfg.signal_mode!r}")
    if cfg.normalization_mode not in NORMALIZATION_MODES:
        raise ConfigurationError(
            f"normalization_mode must be one of {NORMALIZATION_MODES}, got {cfg.normalization_mode!r}"
        )


def _parse_int(key, text):
    try:
        return int(text)
    except ValueError:
        raise ConfigurationError(f"{key}: expected an integer, got {text!r}") from None


def _parse_float(key, text):
    try:
        return float(text)
    except ValueError:
        raise ConfigurationError(f"{key}: expected a number, got {text!r}") from None


def _parse_floats(key, text):
    return tuple(_parse_float(key, part.strip()) for part in text.split(",") if part.strip())


def _parse_range(key, text):
    values = _parse_floats(key, text)
    if len(values) != 2:
        raise ConfigurationError(f"{key}: expected 'lo, hi', got {text!r}")
    return values


_PARSERS = {
    "N": _parse_int, "M": _parse_int, "N_r": _parse_int, "K": _parse_int, "L": _parse_int,
    "mc_iterations": _parse_int, "master_seed": _parse_int,
    "d_over_lambda": _parse_float,
    "aod_range": _parse_range, "aoa_range": _parse_range,
    "snr_grid_db": _parse_floats,
    "signal_mode": lambda key, text: text, "normalization_mode": lambda key, text: text,
    "N_t": _parse_int,
}


def parse_config_text(text, source="<config>"):
    """Parse ``key = value`` lines; ``#`` starts a comment. Returns a dict."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _PARSERS:
            raise ConfigurationError(f"{source}:{lineno}: unknown key {key!r}")
        values[key] = _PARSERS[key](key, value)
    return values


def load_config(path=None, overrides=None):
    """Defaults, then file values, then ``overrides`` (flags win).

    ``N_t`` may appear in either source but must equal ``N * M`` after merging.
    """
    merged = {}
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigurationError(f"cannot read config {path}: {exc.strerror}") from None
        merged.update(parse_config_text(text, str(path)))
    if overrides:
        known = {f.name for f in fields(SimConfig)} | {"N_t"}
        for key, value in overrides.items():
            if key not in known:
                raise ConfigurationError(f"unknown config key {key!r}")
            if value is not None:
                merged[key] = value
    n_t = merged.pop("N_t", None)
    if "snr_grid_db" in merged:
        merged["snr_grid_db"] = tuple(float(x) for x in merged["snr_grid_db"])
    for key in ("aod_range", "aoa_range"):
        if key in merged:
            merged[key] = tuple(float(x) for x in merged[key])
    cfg = replace(SimConfig(), **merged)
    if n_t is not None and n_t != cfg.N_t:
        raise ConfigurationError(f"N_t={n_t} disagrees with N*M={cfg.N_t}")
    return cfg


def snr_grid(lo, hi, step):
    if step <= 0:
        raise ConfigurationError(f"snr step must be > 0, got {step}")
    if hi < lo:
        raise ConfigurationError(f"snr max {hi} is below snr min {lo}")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return tuple(lo + i * step for i in range(count))
