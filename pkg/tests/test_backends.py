"""The compiled kernels and the numpy fallback must agree."""
import numpy as np
import pytest

from beamtrain import _fallback, available_backends, set_backend, use_backend
from beamtrain.errors import ConfigurationError

compiled = available_backends().get("cython")
needs_ext = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")


def _cn(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_fallback_always_available():
    assert available_backends()["python"] is _fallback


def test_unknown_backend():
    with pytest.raises(ConfigurationError):
        set_backend("fortran")


def test_use_backend_restores():
    from beamtrain import _backend
    before = _backend.kernels.NAME
    with use_backend("python"):
        assert _backend.kernels.NAME == "python"
    assert _backend.kernels.NAME == before


@needs_ext
@pytest.mark.parametrize("seed", range(5))
def test_kernel_parity(seed):
    rng = np.random.default_rng(seed)
    K, N, M, n_rx, L = 4, 8, 8, 16, 3
    gains, aoa, aod = _cn(rng, L), rng.uniform(-3, 3, L), rng.uniform(-0.5, 0.5, L)
    for mod in (compiled, _fallback):
        assert mod.ula_response(0.4, 7, 0.5).shape == (7,)
    np.testing.assert_allclose(compiled.ula_response(0.4, 7, 0.3), _fallback.ula_response(0.4, 7, 0.3), atol=1e-14)
    H_c = compiled.assemble_channel(gains, aoa, aod, n_rx, N * M, 0.5)
    H_p = _fallback.assemble_channel(gains, aoa, aod, n_rx, N * M, 0.5)
    np.testing.assert_allclose(H_c, H_p, atol=1e-12)

    WH, cb, W = _cn(rng, (K, N * M)), _cn(rng, (M, N)), _cn(rng, (K, n_rx))
    S, Z = _cn(rng, (N, N)), _cn(rng, (N, n_rx))
    np.testing.assert_allclose(compiled.training_observations(WH, cb, W, S, Z, 2.5),
                               _fallback.training_observations(WH, cb, W, S, Z, 2.5), atol=1e-11)
    np.testing.assert_allclose(compiled.subarray_gain(WH, cb), _fallback.subarray_gain(WH, cb), atol=1e-12)
    w = rng.dirichlet(np.ones(N))
    np.testing.assert_allclose(compiled.com_accumulate(w, cb), _fallback.com_accumulate(w, cb), atol=1e-14)
    G = _cn(rng, (K, N))
    assert compiled.logdet2_gram(G, 3.0) == pytest.approx(_fallback.logdet2_gram(G, 3.0), abs=1e-10)


@needs_ext
def test_compiled_logdet_rejects_indefinite():
    with pytest.raises(np.linalg.LinAlgError):
        compiled.logdet2_gram(np.eye(2, dtype=complex), -2.0)


@needs_ext
def test_sweep_agrees_across_backends():
    from beamtrain.config import SimConfig
    from beamtrain.sweep import run_sweep
    cfg = SimConfig(snr_grid_db=(0.0, 20.0), mc_iterations=10)
    with use_backend("python"):
        a = run_sweep(cfg)
    with use_backend("cython"):
        b = run_sweep(cfg)
    for ra, rb in zip(a.rows, b.rows):
        assert ra.mean_com == pytest.approx(rb.mean_com, abs=1e-9)
        assert ra.mean_11ad == pytest.approx(rb.mean_11ad, abs=1e-9)


def test_benchmark_script_runs(capsys):
    import runpy
    from pathlib import Path
    script = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_backends.py"
    mod = runpy.run_path(str(script), run_name="bench")
    mod["main"](["--repeat", "5", "--mc", "2"])
    out = capsys.readouterr().out
    assert "logdet2_gram" in out and "full sweep" in out
