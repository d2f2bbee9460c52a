import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from beamtrain.codebook import assemble_precoder, make_codebook, rotate
from beamtrain.errors import ConfigurationError, DegenerateObservationError, ScheduleError
from beamtrain.training import (
    baseline_rotation, baseline_select, com_estimate, compute_weights, normalize, trn_schedule,
)
from beamtrain.transceiver import ObservationSet, omni_combiner, synthesize_rx

pytestmark = pytest.mark.usefixtures("backend")


def obs_from_energies(energies):
    """One nonzero entry per column so that ||y_t||^2 equals energies[t]."""
    N = len(energies)
    Y = np.zeros((4, N), dtype=complex)
    Y[0] = np.sqrt(energies)
    return ObservationSet(Y, tuple(range(N)))


def test_weights_uniform():
    np.testing.assert_allclose(compute_weights(obs_from_energies([1, 1, 1, 1])), 0.25, atol=1e-15)


def test_weights_direct_normalization():
    np.testing.assert_allclose(compute_weights(obs_from_energies([3, 1])), [0.75, 0.25], atol=1e-15)


def test_weights_zero_observations():
    with pytest.raises(DegenerateObservationError):
        compute_weights(obs_from_energies([0, 0, 0]))


finite_complex = st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False)


@settings(max_examples=300, deadline=None)
@given(Y=arrays(np.complex128, (4, 8), elements=finite_complex))
def test_weights_sum_to_one(Y):
    assume(np.sum(np.abs(Y) ** 2) > 1e-200)
    w = compute_weights(ObservationSet(Y, tuple(range(8))))
    assert abs(w.sum() - 1) <= 1e-12
    assert np.all((w >= 0) & (w <= 1))


@pytest.mark.parametrize("t", range(8))
def test_one_hot_recovers_transmitted_codewords(t):
    cb = make_codebook(8, 8)
    energies = np.zeros(8)
    energies[t] = 2.0
    est = com_estimate(obs_from_energies(energies), cb, "raw").vectors
    np.testing.assert_array_equal(est, assemble_precoder(cb, rotate(8, t)).blocks)


def test_first_trial_dominant_gives_identity():
    cb = make_codebook(8, 8)
    est = com_estimate(obs_from_energies([1, 0, 0, 0, 0, 0, 0, 0]), cb, "raw").vectors
    np.testing.assert_array_equal(est, cb.codewords)


def test_second_trial_dominant_gives_last_codeword_on_first_subarray():
    cb = make_codebook(8, 8)
    est = com_estimate(obs_from_energies([0, 1, 0, 0, 0, 0, 0, 0]), cb, "raw").vectors
    np.testing.assert_array_equal(est[:, 0], cb[7])


def test_uniform_weights_collapse_to_first_antenna():
    # sum_j exp(2j pi m j / 8) / sqrt(8) = sqrt(8) * [m == 0]; scaled by 1/8
    cb = make_codebook(8, 8)
    est = com_estimate(obs_from_energies(np.ones(8)), cb, "raw").vectors
    expected = np.zeros(8)
    expected[0] = math.sqrt(8) / 8
    for k in range(8):
        np.testing.assert_allclose(est[:, k], expected, atol=1e-15)


def _random_obs(seed, N=8):
    rng = np.random.default_rng(seed)
    Y = rng.standard_normal((4, N)) + 1j * rng.standard_normal((4, N))
    Y *= rng.exponential(size=N)
    return ObservationSet(Y, tuple(range(N)))


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_raw_estimate_norm_bounded(seed):
    est = com_estimate(_random_obs(seed), make_codebook(8, 8), "raw").vectors
    assert np.all(np.linalg.norm(est, axis=0) <= 1 + 1e-12)


def test_com_matches_explicit_loop():
    cb = make_codebook(8, 8)
    obs = _random_obs(17)
    w = compute_weights(obs)
    expected = np.zeros((8, 8), complex)
    for k in range(8):
        for i in range(8):
            expected[:, k] += w[i] * cb[(k - i) % 8]
    np.testing.assert_allclose(com_estimate(obs, cb, "raw").vectors, expected, atol=1e-15)


@pytest.mark.parametrize("mode", ["unit-norm", "unit-modulus"])
def test_normalized_modes(mode):
    est = com_estimate(_random_obs(5), make_codebook(8, 8), mode)
    v = est.vectors
    if mode == "unit-norm":
        np.testing.assert_allclose(np.linalg.norm(v, axis=0), 1, atol=1e-12)
    else:
        np.testing.assert_allclose(np.abs(v), 1 / math.sqrt(8), atol=1e-12)
    assert est.normalization_mode == mode


def test_unknown_normalization():
    with pytest.raises(ConfigurationError):
        normalize(np.ones((2, 2)), "peak")


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), scale=st.floats(1e-6, 1e6))
def test_scale_invariance(seed, scale):
    cb = make_codebook(8, 8)
    obs = _random_obs(seed)
    a = com_estimate(obs, cb, "raw").vectors
    b = com_estimate(obs.scaled(scale), cb, "raw").vectors
    np.testing.assert_allclose(a, b, atol=1e-12)
    assert baseline_rotation(obs) == baseline_rotation(obs.scaled(scale))


def test_com_size_mismatch():
    with pytest.raises(ConfigurationError):
        com_estimate(_random_obs(0, N=4), make_codebook(8, 8))


def test_baseline_argmax():
    assert baseline_rotation(obs_from_energies([0.1, 0.9, 0.3])) == 1


def test_baseline_tie_break():
    assert baseline_rotation(obs_from_energies([0.5, 0.5])) == 0


def test_baseline_all_zero_picks_rotation_zero():
    cb = make_codebook(3, 3)
    assert baseline_select(obs_from_energies([0, 0, 0]), cb).rotation == 0


def test_baseline_constructed_channel_prefers_third_trial():
    """H only sees subarray 0 along the codeword it transmits at rotation 2."""
    N = M = 8
    cb = make_codebook(N, M)
    target = cb[(0 - 2) % N]
    H = np.zeros((16, N * M), complex)
    H[:, :M] = np.outer(np.ones(16), target.conj())
    W = omni_combiner(16, 4).W
    s = np.ones(N) / math.sqrt(N)
    Y = np.column_stack([
        synthesize_rx(H, assemble_precoder(cb, rotate(N, k)), np.eye(N), W, s, np.zeros(16), 1.0)
        for k in range(N)
    ])
    brute = [np.vdot(Y[:, k], Y[:, k]).real for k in range(N)]
    assert int(np.argmax(brute)) == 2
    chosen = baseline_select(ObservationSet(Y, tuple(range(N))), cb)
    assert chosen.rotation == 2


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_baseline_is_a_scheduled_precoder(seed):
    cb = make_codebook(8, 8)
    chosen = baseline_select(_random_obs(seed), cb).blocks
    scheduled = [assemble_precoder(cb, rotate(8, k)).blocks for k in range(8)]
    assert any(np.array_equal(chosen, A) for A in scheduled)


def test_schedule_two_units():
    s = trn_schedule(8, t_p=2, t_m=4)
    assert s.n_units == 2
    assert s.mapping[4] == (2, 1)
    assert s.t_n == 1 and s.t_p == 2


def test_schedule_single_unit():
    assert trn_schedule(8, t_m=8).n_units == 1


def test_schedule_ceiling():
    s = trn_schedule(8, t_m=3)
    assert s.n_units == 3
    assert s.trials_in_unit(3) == 2
    assert len(set(s.mapping)) == 8


def test_schedule_rejects_zero_tm():
    with pytest.raises(ScheduleError):
        trn_schedule(8, t_m=0)
