"""Orthonormal constant-modulus codebook, cyclic rotations and block-diagonal precoders.

Indices are 0-based throughout: at rotation ``k`` subarray ``n`` transmits
codeword ``(n - k) % N``. Rotation 1 therefore puts the last codeword on the
first subarray and codeword 0 on the second.
"""
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, ScheduleError


@dataclass(frozen=True)
class Codebook:
    """``codewords`` is an M x N array whose columns are the AWVs."""

    codewords: np.ndarray

    def __post_init__(self):
        self.codewords.setflags(write=False)

    @property
    def size(self):
        return self.codewords.shape[1]

    @property
    def length(self):
        return self.codewords.shape[0]

    def __getitem__(self, j):
        return self.codewords[:, j]


@dataclass(frozen=True)
class RotationAssignment:
    rotation: int
    codeword_of: tuple  # codeword_of[n] = codeword index used by subarray n

    def __post_init__(self):
        n = len(self.codeword_of)
        if sorted(self.codeword_of) != list(range(n)):
            raise ScheduleError(f"assignment {self.codeword_of} is not a permutation")


@dataclass(frozen=True)
class AnalogPrecoder:
    """Block-diagonal analog stage stored compactly.

    Column ``n`` of ``blocks`` (M x N) is the AWV applied to subarray ``n``;
    :attr:`matrix` expands it to the dense NM x N form.
    """

    blocks: np.ndarray
    rotation: int = None

    @property
    def n_subarrays(self):
        return self.blocks.shape[1]

    @property
    def matrix(self):
        M, N = self.blocks.shape
        A = np.zeros((N * M, N), dtype=np.complex128)
        for n in range(N):
            A[n * M:(n + 1) * M, n] = self.blocks[:, n]
        return A


def make_codebook(N, M):
    """First ``N`` columns of the unitary M-point DFT matrix."""
    if N < 1 or M < 1:
        raise ConfigurationError(f"codebook dimensions must be positive, got N={N}, M={M}")
    if N > M:
        raise ConfigurationError(
            f"cannot build {N} orthogonal constant-modulus vectors of length {M} (need N <= M)"
        )
    m = np.arange(M)[:, None]
    j = np.arange(N)[None, :]
    return Codebook(np.exp(2j * np.pi * m * j / M) / np.sqrt(M))


def rotate(N, k):
    if not 0 <= k < N:
        raise ScheduleError(f"rotation index must lie in [0, {N - 1}], got {k}")
    return RotationAssignment(int(k), tuple((n - k) % N for n in range(N)))


def assemble_precoder(codebook, assignment):
    N = len(assignment.codeword_of)
    if N != codebook.size:
        raise ConfigurationError(
            f"assignment covers {N} subarrays but the codebook has {codebook.size} codewords"
        )
    blocks = codebook.codewords[:, list(assignment.codeword_of)].copy()
    return AnalogPrecoder(blocks, assignment.rotation)


def precoder_from_blocks(blocks):
    """Wrap an arbitrary M x N array of per-subarray AWVs."""
    blocks = np.asarray(blocks, dtype=np.complex128)
    if blocks.ndim != 2:
        raise ConfigurationError(f"blocks must be 2-D (M x N), got shape {blocks.shape}")
    return AnalogPrecoder(blocks)
