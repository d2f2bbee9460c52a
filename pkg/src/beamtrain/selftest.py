"""Fast invariant checks runnable without pytest (``beamtrain selftest``)."""
import math

import numpy as np

from . import _backend
from .channel import ArrayGeometry, assemble_channel, numerical_rank, sample_paths, ula_response
from .codebook import assemble_precoder, make_codebook, rotate
from .metrics import capacity, capacity_eig_oracle
from .training import com_estimate, compute_weights, trn_schedule
from .transceiver import ObservationSet, omni_combiner


def _codebook_orthonormal():
    worst = 0.0
    for N, M in ((2, 2), (4, 8), (8, 8)):
        F = make_codebook(N, M).codewords
        worst = max(worst, np.max(np.abs(F.conj().T @ F - np.eye(N))),
                    np.max(np.abs(np.abs(F) - 1 / math.sqrt(M))))
    return worst <= 1e-12, f"max deviation {worst:.2e}"


def _precoder_unitary():
    cb = make_codebook(8, 8)
    worst = max(np.max(np.abs(A.conj().T @ A - np.eye(8)))
                for A in (assemble_precoder(cb, rotate(8, k)).matrix for k in range(8)))
    return worst <= 1e-12, f"max |A^H A - I| {worst:.2e}"


def _latin_square():
    N = 8
    grid = np.array([rotate(N, k).codeword_of for k in range(N)])
    ok = all(sorted(grid[:, n]) == list(range(N)) for n in range(N))
    return ok, "each subarray uses every codeword once"


def _ula_unit_norm():
    rng = np.random.default_rng(0)
    worst = 0.0
    for phi in rng.uniform(-math.pi, math.pi, 50):
        v = ula_response(phi, ArrayGeometry(16))
        worst = max(worst, abs(np.linalg.norm(v) - 1), np.max(np.abs(np.abs(v) - 0.25)))
    return worst <= 1e-12, f"max deviation {worst:.2e}"


def _channel_rank():
    rng = np.random.default_rng(1)
    ranks = [numerical_rank(assemble_channel(sample_paths(rng, 3), 16, 64)) for _ in range(50)]
    return max(ranks) <= 3, f"max rank {max(ranks)}"


def _combiner_orthonormal():
    W = omni_combiner(16, 4).W
    dev = np.max(np.abs(W @ W.conj().T - np.eye(4)))
    return dev <= 1e-12, f"|W W^H - I| {dev:.2e}"


def _capacity_oracle():
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(50):
        K, N = rng.integers(1, 5), rng.integers(1, 5)
        n_rx, n_tx = K * rng.integers(1, 4), N * rng.integers(1, 4)
        W = rng.standard_normal((K, n_rx)) + 1j * rng.standard_normal((K, n_rx))
        H = rng.standard_normal((n_rx, n_tx)) + 1j * rng.standard_normal((n_rx, n_tx))
        P = rng.standard_normal((n_tx, N)) + 1j * rng.standard_normal((n_tx, N))
        a = capacity(W, H, P, 1.0, 0.3)
        worst = max(worst, abs(a - capacity_eig_oracle(W, H, P, 1.0, 0.3)))
    return worst <= 1e-9, f"max |logdet - eig| {worst:.2e}"


def _com_one_hot():
    cb = make_codebook(8, 8)
    for t in range(8):
        Y = np.zeros((4, 8), dtype=complex)
        Y[0, t] = 1.0
        est = com_estimate(ObservationSet(Y, tuple(range(8))), cb, "raw").vectors
        if not np.array_equal(est, assemble_precoder(cb, rotate(8, t)).blocks):
            return False, f"trial {t} not recovered"
    return True, "exact recovery for all 8 trials"


def _weights_sum():
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(200):
        Y = rng.standard_normal((4, 8)) + 1j * rng.standard_normal((4, 8))
        worst = max(worst, abs(compute_weights(ObservationSet(Y, tuple(range(8)))).sum() - 1))
    return worst <= 1e-12, f"max |sum w - 1| {worst:.2e}"


def _schedule():
    s = trn_schedule(8, 0, 3)
    return s.n_units == 3 and s.trials_in_unit(3) == 2, f"{s.n_units} units"


CHECKS = (
    ("codebook orthonormal + constant modulus", _codebook_orthonormal),
    ("rotated precoders A^H A = I", _precoder_unitary),
    ("rotation latin square", _latin_square),
    ("ULA response unit norm", _ula_unit_norm),
    ("channel rank <= L", _channel_rank),
    ("omni combiner W W^H = I", _combiner_orthonormal),
    ("capacity log-det vs eigen oracle", _capacity_oracle),
    ("COM one-hot recovery", _com_one_hot),
    ("weights sum to one", _weights_sum),
    ("TRN schedule fill", _schedule),
)


def run_selftest(echo=print):
    echo(f"backend: {_backend.kernels.NAME}")
    failures = 0
    for name, check in CHECKS:
        try:
            ok, detail = check()
        except Exception as exc:  # report, don't abort the suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        failures += not ok
        echo(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    return failures == 0
