"""Geometric Saleh-Valenzuela channel with uniform linear arrays."""
from dataclasses import dataclass
import math

import numpy as np

from . import _backend
from .errors import ConfigurationError

DEFAULT_AOD_RANGE = (-math.pi / 6, math.pi / 6)
DEFAULT_AOA_RANGE = (-math.pi, math.pi)
# elevations are stored for planar-array extensions; a ULA ignores them
DEFAULT_ELEVATION_RANGE = (0.0, 0.0)


@dataclass(frozen=True)
class ArrayGeometry:
    element_count: int
    spacing_over_wavelength: float = 0.5

    def __post_init__(self):
        if self.element_count < 1:
            raise ConfigurationError(f"element_count must be >= 1, got {self.element_count}")
        if not self.spacing_over_wavelength > 0:
            raise ConfigurationError(
                f"spacing_over_wavelength must be > 0, got {self.spacing_over_wavelength}"
            )


@dataclass(frozen=True)
class PathParams:
    gain: complex
    aod_azimuth: float
    aoa_azimuth: float
    aod_elevation: float = 0.0
    aoa_elevation: float = 0.0


@dataclass(frozen=True)
class PathSet:
    paths: tuple

    def __post_init__(self):
        if len(self.paths) < 1:
            raise ConfigurationError("a PathSet needs at least one path")

    def __len__(self):
        return len(self.paths)

    @property
    def gains(self):
        return np.array([p.gain for p in self.paths], dtype=np.complex128)

    @property
    def aod(self):
        return np.array([p.aod_azimuth for p in self.paths])

    @property
    def aoa(self):
        return np.array([p.aoa_azimuth for p in self.paths])


def ula_response(phi, geometry):
    """Unit-norm ULA array response; element u has phase 2*pi*(d/lambda)*u*sin(phi)."""
    if not math.isfinite(phi):
        raise ConfigurationError(f"angle must be finite, got {phi}")
    return _backend.kernels.ula_response(
        float(phi), geometry.element_count, float(geometry.spacing_over_wavelength)
    )


def _check_range(name, bounds):
    lo, hi = bounds
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ConfigurationError(f"{name} bounds must be finite, got {bounds}")
    if lo > hi:
        raise ConfigurationError(f"{name} lower bound {lo} exceeds upper bound {hi}")
    return float(lo), float(hi)


def sample_paths(
    rng,
    L=3,
    aod_range=DEFAULT_AOD_RANGE,
    aoa_range=DEFAULT_AOA_RANGE,
    elevation_range=DEFAULT_ELEVATION_RANGE,
):
    """Draw ``L`` paths: CN(0, 1) gains and uniform azimuths on the given ranges.

    The draw order is fixed (gains, AoD, AoA, elevations) so a seeded
    generator always yields the same PathSet.
    """
    if L < 1:
        raise ConfigurationError(f"path count L must be >= 1, got {L}")
    aod_lo, aod_hi = _check_range("aod_range", aod_range)
    aoa_lo, aoa_hi = _check_range("aoa_range", aoa_range)
    el_lo, el_hi = _check_range("elevation_range", elevation_range)

    re_im = rng.standard_normal((L, 2)) / math.sqrt(2.0)
    gains = re_im[:, 0] + 1j * re_im[:, 1]
    aod = rng.uniform(aod_lo, aod_hi, L)
    aoa = rng.uniform(aoa_lo, aoa_hi, L)
    elev = rng.uniform(el_lo, el_hi, (L, 2))
    return PathSet(tuple(
        PathParams(complex(gains[l]), float(aod[l]), float(aoa[l]),
                   float(elev[l, 0]), float(elev[l, 1]))
        for l in range(L)
    ))


def assemble_channel(paths, n_rx, n_tx, rx_spacing=0.5, tx_spacing=None):
    """Channel matrix ``sqrt(Nr*Nt/L) * sum_l g_l f_r(aoa_l) f_t(aod_l)^H``.

    Array gains are taken as one inside the sampled angular ranges.
    ``tx_spacing`` defaults to ``rx_spacing``.
    """
    if n_rx < 1 or n_tx < 1:
        raise ConfigurationError(f"antenna counts must be >= 1, got n_rx={n_rx}, n_tx={n_tx}")
    if tx_spacing is None:
        tx_spacing = rx_spacing
    if rx_spacing != tx_spacing:
        # the kernels share one spacing; fall back to explicit outer products
        H = np.zeros((n_rx, n_tx), dtype=np.complex128)
        rx_geo, tx_geo = ArrayGeometry(n_rx, rx_spacing), ArrayGeometry(n_tx, tx_spacing)
        for p in paths.paths:
            H += p.gain * np.outer(ula_response(p.aoa_azimuth, rx_geo),
                                   ula_response(p.aod_azimuth, tx_geo).conj())
        return math.sqrt(n_rx * n_tx / len(paths)) * H
    return _backend.kernels.assemble_channel(
        paths.gains, paths.aoa, paths.aod, int(n_rx), int(n_tx), float(rx_spacing)
    )


def numerical_rank(H, rtol=1e-9):
    s = np.linalg.svd(H, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > rtol * s[0]))
