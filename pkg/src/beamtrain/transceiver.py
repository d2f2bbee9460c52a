"""Received-signal synthesis and the omni receive combiner used during Tx training."""
from dataclasses import dataclass
import math

import numpy as np

from . import _backend
from .codebook import AnalogPrecoder
from .errors import ConfigurationError

SIGNAL_MODES = ("gaussian", "pilot")


@dataclass(frozen=True)
class Combiner:
    analog: np.ndarray   # K x N_r, block-diagonal
    digital: np.ndarray  # K x K, diagonal

    @property
    def W(self):
        return self.digital @ self.analog


@dataclass(frozen=True)
class ObservationSet:
    """Received vectors of the N training trials; column t was sent under rotation t."""

    Y: np.ndarray
    rotations: tuple

    def __post_init__(self):
        if self.Y.ndim != 2 or self.Y.shape[1] != len(self.rotations):
            raise ConfigurationError(
                f"observation matrix {self.Y.shape} does not match {len(self.rotations)} trials"
            )

    @property
    def n_trials(self):
        return self.Y.shape[1]

    @property
    def energies(self):
        return np.sum(np.abs(self.Y) ** 2, axis=0)

    def scaled(self, factor):
        return ObservationSet(self.Y * factor, self.rotations)


def omni_combiner(n_rx, K):
    if K < 1 or n_rx < 1 or n_rx % K:
        raise ConfigurationError(f"K={K} must divide N_r={n_rx}")
    width = n_rx // K
    analog = np.kron(np.eye(K), np.full((1, width), 1.0 / math.sqrt(width)))
    return Combiner(analog.astype(np.complex128), np.eye(K, dtype=np.complex128))


def _as_matrix(x):
    if isinstance(x, AnalogPrecoder):
        return x.matrix
    if isinstance(x, Combiner):
        return x.W
    return np.atleast_2d(np.asarray(x, dtype=np.complex128))


def synthesize_rx(H, A, D, W, s, noise, rho):
    """Return ``sqrt(rho) * W H A D s + W noise``."""
    H, A, D, W = (_as_matrix(x) for x in (H, A, D, W))
    s = np.asarray(s, dtype=np.complex128).ravel()
    noise = np.asarray(noise, dtype=np.complex128).ravel()
    if rho < 0:
        raise ConfigurationError(f"rho must be >= 0, got {rho}")
    if not (W.shape[1] == H.shape[0] == noise.size and H.shape[1] == A.shape[0]
            and A.shape[1] == D.shape[0] and D.shape[1] == s.size):
        raise ConfigurationError(
            f"inconsistent dimensions: W{W.shape} H{H.shape} A{A.shape} D{D.shape} "
            f"s({s.size},) noise({noise.size},)"
        )
    return math.sqrt(rho) * (W @ (H @ (A @ (D @ s)))) + W @ noise


def complex_normal(rng, shape, variance):
    z = rng.standard_normal(tuple(shape) + (2,))
    return (z[..., 0] + 1j * z[..., 1]) * math.sqrt(variance / 2.0)


def draw_symbols(rng, N, mode="gaussian"):
    """Transmit vector with E[s s^H] = I/N."""
    if mode == "gaussian":
        return complex_normal(rng, (N,), 1.0 / N)
    if mode == "pilot":
        return np.full(N, 1.0 / math.sqrt(N), dtype=np.complex128)
    raise ConfigurationError(f"unknown signal mode {mode!r}; expected one of {SIGNAL_MODES}")


def run_training_trials(H, codebook, W, rho, sigma2, rng, signal_mode="gaussian"):
    """Transmit N trials, rotating the codebook assignment once per trial, D = I.

    Per trial the symbols are drawn first, then the receiver noise.
    """
    W = _as_matrix(W)
    H = np.asarray(H, dtype=np.complex128)
    M, N = codebook.codewords.shape
    if H.shape[1] != N * M or W.shape[1] != H.shape[0]:
        raise ConfigurationError(
            f"inconsistent dimensions: W{W.shape} H{H.shape} codebook {M}x{N}"
        )
    if sigma2 < 0 or rho < 0:
        raise ConfigurationError(f"rho and sigma2 must be >= 0, got {rho}, {sigma2}")
    n_rx = H.shape[0]
    symbols = np.empty((N, N), dtype=np.complex128)
    noise = np.empty((N, n_rx), dtype=np.complex128)
    for t in range(N):
        symbols[t] = draw_symbols(rng, N, signal_mode)
        noise[t] = complex_normal(rng, (n_rx,), sigma2)
    Y = _backend.kernels.training_observations(
        W @ H, codebook.codewords, W, symbols, noise, float(rho)
    )
    return ObservationSet(Y, tuple(range(N)))
