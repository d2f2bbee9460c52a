import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from beamtrain.channel import assemble_channel, sample_paths
from beamtrain.codebook import assemble_precoder, make_codebook, rotate
from beamtrain.errors import ConfigurationError
from beamtrain.transceiver import (
    complex_normal, draw_symbols, omni_combiner, run_training_trials, synthesize_rx,
)

pytestmark = pytest.mark.usefixtures("backend")


def test_omni_combiner_paper_dims():
    c = omni_combiner(16, 4)
    assert c.analog.shape == (4, 16)
    for k in range(4):
        np.testing.assert_allclose(c.analog[k, 4 * k:4 * k + 4], 0.5)
        assert np.all(np.delete(c.analog[k], range(4 * k, 4 * k + 4)) == 0)
    np.testing.assert_array_equal(c.digital, np.eye(4))


def test_omni_combiner_square_is_identity():
    np.testing.assert_array_equal(omni_combiner(4, 4).W, np.eye(4))


@pytest.mark.parametrize("n_rx,K", [(4, 2), (16, 4), (12, 3)])
def test_omni_combiner_orthonormal_rows(n_rx, K):
    W = omni_combiner(n_rx, K).W
    assert np.max(np.abs(W @ W.conj().T - np.eye(K))) <= 1e-12


def test_omni_combiner_divisibility():
    with pytest.raises(ConfigurationError):
        omni_combiner(16, 3)


def test_synthesize_zero_signal_zero_noise():
    rng = np.random.default_rng(0)
    H = rng.standard_normal((4, 6))
    y = synthesize_rx(H, np.ones((6, 2)), np.eye(2), np.ones((2, 4)), np.zeros(2), np.zeros(4), 3.0)
    np.testing.assert_array_equal(y, np.zeros(2))


def test_synthesize_zero_power_leaves_noise():
    rng = np.random.default_rng(1)
    W = omni_combiner(4, 2).W
    noise = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    y = synthesize_rx(rng.standard_normal((4, 4)), np.eye(4)[:, :2], np.eye(2), W, np.ones(2), noise, 0.0)
    np.testing.assert_allclose(y, W @ noise, atol=1e-15)


def test_synthesize_scalar():
    # sqrt(4)*1*2*1*1*1 + 0.5
    y = synthesize_rx([[2]], [[1]], [[1]], [[1]], [1], [0.5], 4.0)
    np.testing.assert_allclose(y, [4.5])


def test_synthesize_accepts_precoder_and_combiner():
    cb = make_codebook(2, 2)
    A = assemble_precoder(cb, rotate(2, 1))
    W = omni_combiner(2, 1)
    H = np.arange(8).reshape(2, 4).astype(complex)
    y = synthesize_rx(H, A, np.eye(2), W, [1, 1], [0, 0], 1.0)
    np.testing.assert_allclose(y, W.W @ H @ A.matrix @ np.ones(2))


def test_synthesize_dimension_mismatch():
    with pytest.raises(ConfigurationError):
        synthesize_rx(np.ones((4, 6)), np.ones((5, 2)), np.eye(2), np.ones((2, 4)), np.ones(2), np.zeros(4), 1.0)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_synthesize_linear_in_signal(seed):
    rng = np.random.default_rng(seed)
    H = complex_normal(rng, (4, 6), 1.0)
    A = complex_normal(rng, (6, 3), 1.0)
    W = complex_normal(rng, (2, 4), 1.0)
    s1, s2 = complex_normal(rng, (3,), 1.0), complex_normal(rng, (3,), 1.0)
    zero = np.zeros(4)
    lhs = synthesize_rx(H, A, np.eye(3), W, s1 + s2, zero, 2.0)
    rhs = synthesize_rx(H, A, np.eye(3), W, s1, zero, 2.0) + synthesize_rx(H, A, np.eye(3), W, s2, zero, 2.0)
    assert np.max(np.abs(lhs - rhs)) <= 1e-12


def test_pilot_symbols():
    np.testing.assert_allclose(draw_symbols(None, 4, "pilot"), 0.5 * np.ones(4))


def test_gaussian_symbol_power():
    s = np.stack([draw_symbols(np.random.default_rng(i), 8) for i in range(3000)])
    np.testing.assert_allclose(np.mean(np.abs(s) ** 2, axis=0), 1 / 8, rtol=0.1)


def test_unknown_signal_mode():
    with pytest.raises(ConfigurationError):
        draw_symbols(np.random.default_rng(0), 4, "qpsk")


def _setup(seed=0):
    rng = np.random.default_rng(seed)
    H = assemble_channel(sample_paths(rng, 3), 16, 64)
    return H, make_codebook(8, 8), omni_combiner(16, 4)


def test_trials_shape():
    H, cb, W = _setup()
    obs = run_training_trials(H, cb, W, 1.0, 0.1, np.random.default_rng(1))
    assert obs.Y.shape == (4, 8)
    assert obs.rotations == tuple(range(8))


def test_trials_zero_channel_zero_noise():
    _, cb, W = _setup()
    obs = run_training_trials(np.zeros((16, 64)), cb, W, 1.0, 0.0, np.random.default_rng(1), "pilot")
    assert np.all(obs.Y == 0)


def test_trials_deterministic():
    H, cb, W = _setup()
    a = run_training_trials(H, cb, W, 1.0, 0.1, np.random.default_rng(3))
    b = run_training_trials(H, cb, W, 1.0, 0.1, np.random.default_rng(3))
    assert np.array_equal(a.Y, b.Y)


@pytest.mark.parametrize("mode", ["gaussian", "pilot"])
def test_trials_replay_through_dense_model(mode):
    """Each column equals the dense received-signal model under rotation t."""
    H, cb, W = _setup(4)
    sigma2 = 0.3
    obs = run_training_trials(H, cb, W, 2.0, sigma2, np.random.default_rng(8), mode)
    rng = np.random.default_rng(8)
    for t in range(8):
        s = draw_symbols(rng, 8, mode)
        noise = complex_normal(rng, (16,), sigma2)
        A = assemble_precoder(cb, rotate(8, t))
        y = synthesize_rx(H, A, np.eye(8), W, s, noise, 2.0)
        np.testing.assert_allclose(obs.Y[:, t], y, atol=1e-12)


def test_trials_dimension_mismatch():
    _, cb, W = _setup()
    with pytest.raises(ConfigurationError):
        run_training_trials(np.zeros((16, 32)), cb, W, 1.0, 0.1, np.random.default_rng(0))
