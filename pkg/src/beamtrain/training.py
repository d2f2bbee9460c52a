"""Transmit beam training: the energy-weighted COM estimator, the max-energy
baseline and the TRN-Unit layout of the training trials."""
from dataclasses import dataclass
import math

import numpy as np

from . import _backend
from .codebook import AnalogPrecoder, assemble_precoder, rotate
from .errors import ConfigurationError, DegenerateObservationError, ScheduleError

NORMALIZATION_MODES = ("raw", "unit-norm", "unit-modulus")


@dataclass(frozen=True)
class EstimatedAWVs:
    vectors: np.ndarray  # M x N, column k is the estimate for subarray k
    normalization_mode: str

    def precoder(self):
        return AnalogPrecoder(self.vectors)


@dataclass(frozen=True)
class TrnSchedule:
    """Placement of training trials into 802.11ay TRN-Units.

    ``mapping[t]`` is the 1-based ``(unit, switching_subfield)`` carrying
    trial ``t + 1``. The ``t_p`` leading subfields of each unit reuse the data
    AWV and are not modelled beyond their count.
    """

    t_p: int
    t_m: int
    t_n: int
    mapping: tuple

    @property
    def n_units(self):
        return self.mapping[-1][0] if self.mapping else 0

    def trials_in_unit(self, unit):
        return sum(1 for u, _ in self.mapping if u == unit)


def compute_weights(obs):
    energies = obs.energies
    total = float(np.sum(energies))
    if not total > 0:
        raise DegenerateObservationError("all training observations are zero")
    return energies / total


def normalize(vectors, mode):
    if mode == "raw":
        return vectors
    if mode == "unit-norm":
        return vectors / np.linalg.norm(vectors, axis=0, keepdims=True)
    if mode == "unit-modulus":
        M = vectors.shape[0]
        return np.exp(1j * np.angle(vectors)) / math.sqrt(M)
    raise ConfigurationError(
        f"unknown normalization mode {mode!r}; expected one of {NORMALIZATION_MODES}"
    )


def com_estimate(obs, codebook, mode="unit-norm"):
    """Energy-weighted combination of the codewords each subarray transmitted.

    Subarray ``k`` gets ``sum_t w_t * a[(k - t) % N]`` where ``w_t`` is trial
    t's share of total received energy, so a trial that carried all the energy
    hands back exactly the AWVs it used.
    """
    if obs.n_trials != codebook.size:
        raise ConfigurationError(
            f"{obs.n_trials} observations for a codebook of {codebook.size} codewords"
        )
    weights = compute_weights(obs)
    raw = _backend.kernels.com_accumulate(weights, codebook.codewords)
    return EstimatedAWVs(normalize(raw, mode), mode)


def baseline_rotation(obs):
    """Trial index with the most received energy; np.argmax keeps the first on ties."""
    if obs.n_trials < 1:
        raise ConfigurationError("no observations to select from")
    return int(np.argmax(obs.energies))


def baseline_select(obs, codebook):
    k = baseline_rotation(obs)
    return assemble_precoder(codebook, rotate(codebook.size, obs.rotations[k]))


def trn_schedule(n_trials, t_p=0, t_m=None):
    if t_m is None:
        t_m = n_trials
    if t_m < 1:
        raise ScheduleError(f"T_M must be >= 1, got {t_m}")
    if t_p < 0 or n_trials < 0:
        raise ScheduleError(f"T_P and trial count must be >= 0, got {t_p}, {n_trials}")
    mapping = tuple((t // t_m + 1, t % t_m + 1) for t in range(n_trials))
    return TrnSchedule(t_p=t_p, t_m=t_m, t_n=1, mapping=mapping)
