"""Seeded Monte Carlo SNR sweeps comparing COM against the max-energy baseline."""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
import logging
import math

import numpy as np

from . import _backend
from .channel import assemble_channel, sample_paths
from .codebook import make_codebook
from .errors import BeamTrainError, NumericalError
from .metrics import evaluate_method
from .training import baseline_select, com_estimate
from .transceiver import omni_combiner, run_training_trials

log = logging.getLogger(__name__)

RHO = 1.0


@dataclass(frozen=True)
class SweepRow:
    snr_db: float
    mean_com: float
    std_com: float
    mean_11ad: float
    std_11ad: float
    mean_gain: float
    iters: int


@dataclass(frozen=True)
class SweepResult:
    rows: tuple
    seed: int
    fingerprint: str
    samples: dict = None  # snr index -> (com, baseline) arrays, debug mode only

    def row_at(self, snr_db):
        for row in self.rows:
            if row.snr_db == snr_db:
                return row
        raise KeyError(snr_db)


class RunningStats:
    """Welford accumulator; population standard deviation."""

    def __init__(self):
        self.count = 0
        self.mean = 0.0
        self._m2 = 0.0

    def push(self, x):
        self.count += 1
        delta = x - self.mean
        self.mean += delta / self.count
        self._m2 += delta * (x - self.mean)

    @property
    def std(self):
        return math.sqrt(self._m2 / self.count) if self.count else 0.0


def iteration_rng(master_seed, snr_index, iteration):
    """Counter-based child stream for one (SNR point, iteration) pair."""
    seq = np.random.SeedSequence(master_seed, spawn_key=(snr_index, iteration))
    return np.random.default_rng(seq)


def noise_variance(snr_db, rho=RHO):
    return rho * 10.0 ** (-snr_db / 10.0)


def run_iteration(cfg, snr_index, iteration, codebook=None, combiner=None):
    """One paired realization; returns ``(capacity_com, capacity_baseline)``."""
    if codebook is None:
        codebook = make_codebook(cfg.N, cfg.M)
    if combiner is None:
        combiner = omni_combiner(cfg.N_r, cfg.K)
    W = combiner.W
    sigma2 = noise_variance(cfg.snr_grid_db[snr_index])
    rng = iteration_rng(cfg.master_seed, snr_index, iteration)
    paths = sample_paths(rng, cfg.L, cfg.aod_range, cfg.aoa_range)
    H = assemble_channel(paths, cfg.N_r, cfg.N_t, cfg.d_over_lambda)
    obs = run_training_trials(H, codebook, W, RHO, sigma2, rng, cfg.signal_mode)
    est = com_estimate(obs, codebook, cfg.normalization_mode)
    base = baseline_select(obs, codebook)
    return (evaluate_method(H, est.precoder(), W, RHO, sigma2),
            evaluate_method(H, base, W, RHO, sigma2))


def _run_chunk(cfg, snr_index, start, stop, backend):
    with _backend.use_backend(backend):
        codebook = make_codebook(cfg.N, cfg.M)
        combiner = omni_combiner(cfg.N_r, cfg.K)
        out = np.empty((stop - start, 2))
        for i, it in enumerate(range(start, stop)):
            try:
                out[i] = run_iteration(cfg, snr_index, it, codebook, combiner)
            except BeamTrainError as exc:
                raise type(exc)(f"snr index {snr_index}, iteration {it}: {exc}") from exc
            except (ArithmeticError, np.linalg.LinAlgError) as exc:
                raise NumericalError(f"snr index {snr_index}, iteration {it}: {exc}") from exc
    return snr_index, start, out


def _chunks(cfg, workers):
    size = max(1, math.ceil(cfg.mc_iterations / max(1, workers)))
    for s in range(len(cfg.snr_grid_db)):
        for start in range(0, cfg.mc_iterations, size):
            yield s, start, min(start + size, cfg.mc_iterations)


def _aggregate(snr_db, values):
    com, base, gain = RunningStats(), RunningStats(), RunningStats()
    for c, b in values.tolist():
        com.push(c)
        base.push(b)
        gain.push(c - b)
    row = SweepRow(float(snr_db), com.mean, com.std, base.mean, base.std, gain.mean, com.count)
    for v in (row.mean_com, row.mean_11ad, row.mean_gain):
        if not math.isfinite(v):
            raise NumericalError(f"non-finite aggregate at {snr_db} dB")
    return row


def run_sweep(cfg, workers=1, keep_samples=False):
    """Evaluate both training methods at every SNR point of ``cfg``.

    Results depend only on ``cfg``: each (SNR index, iteration) owns a child
    stream and chunks are reassembled in index order before aggregation.
    """
    make_codebook(cfg.N, cfg.M)  # fail fast on N > M
    backend = _backend.kernels.NAME
    values = np.empty((len(cfg.snr_grid_db), cfg.mc_iterations, 2))
    chunks = list(_chunks(cfg, workers))
    if workers <= 1:
        results = (_run_chunk(cfg, s, a, b, backend) for s, a, b in chunks)
        for s, start, out in results:
            values[s, start:start + len(out)] = out
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_chunk, cfg, s, a, b, backend) for s, a, b in chunks]
            for fut in futures:
                s, start, out = fut.result()
                values[s, start:start + len(out)] = out
    rows = []
    for s, snr_db in enumerate(cfg.snr_grid_db):
        row = _aggregate(snr_db, values[s])
        log.info("%6.2f dB  COM %.4f  11ad %.4f  gain %.4f", snr_db,
                 row.mean_com, row.mean_11ad, row.mean_gain)
        rows.append(row)
    order = sorted(range(len(rows)), key=lambda i: rows[i].snr_db)
    samples = None
    if keep_samples:
        samples = {i: (values[i, :, 0].copy(), values[i, :, 1].copy()) for i in order}
    return SweepResult(tuple(rows[i] for i in order), cfg.master_seed, cfg.fingerprint(), samples)
