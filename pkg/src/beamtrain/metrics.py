"""Effective log-det capacity between transmit and receive data streams."""
import numpy as np

from . import _backend
from .codebook import AnalogPrecoder
from .errors import CombinerRankError, ConfigurationError, NumericalError


def _whitener(W):
    """Cholesky factor of W W^H; identity short-cut for orthonormal rows."""
    WWh = W @ W.conj().T
    K = WWh.shape[0]
    if np.allclose(WWh, np.eye(K), rtol=0, atol=1e-12):
        return None
    try:
        return np.linalg.cholesky(0.5 * (WWh + WWh.conj().T))
    except np.linalg.LinAlgError:
        raise CombinerRankError(f"W W^H is singular for combiner of shape {W.shape}") from None


def _logdet(G, scale):
    try:
        value = _backend.kernels.logdet2_gram(np.ascontiguousarray(G), float(scale))
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"capacity matrix not positive definite: {exc}") from None
    if not np.isfinite(value):
        raise NumericalError(f"non-finite capacity {value}")
    return max(value, 0.0)


def capacity_from_gain(G, W, rho, sigma2, n_streams):
    """Capacity given the effective gain ``G = W H P`` (K x N)."""
    if not sigma2 > 0:
        raise ConfigurationError(f"sigma2 must be > 0, got {sigma2}")
    if rho < 0:
        raise ConfigurationError(f"rho must be >= 0, got {rho}")
    L = _whitener(W)
    if L is not None:
        G = np.linalg.solve(L, G)
    return _logdet(G, rho / (n_streams * sigma2))


def capacity(W, H, P, rho, sigma2, n_streams=None):
    """``log2 det(I_K + rho/N * R^-1 (W H P)(W H P)^H)`` with ``R = sigma2 W W^H``.

    ``n_streams`` defaults to the number of columns of ``P``.
    """
    W = np.atleast_2d(np.asarray(W, dtype=np.complex128))
    H = np.atleast_2d(np.asarray(H, dtype=np.complex128))
    P = np.atleast_2d(np.asarray(P, dtype=np.complex128))
    if W.shape[1] != H.shape[0] or H.shape[1] != P.shape[0]:
        raise ConfigurationError(f"inconsistent dimensions: W{W.shape} H{H.shape} P{P.shape}")
    if n_streams is None:
        n_streams = P.shape[1]
    return capacity_from_gain(W @ H @ P, W, rho, sigma2, n_streams)


def capacity_eig_oracle(W, H, P, rho, sigma2, n_streams=None):
    """Reference path: sum of log2(1 + eigenvalue) without whitening tricks."""
    W, H, P = (np.atleast_2d(np.asarray(x, dtype=np.complex128)) for x in (W, H, P))
    if n_streams is None:
        n_streams = P.shape[1]
    G = W @ H @ P
    Rn = sigma2 * (W @ W.conj().T)
    T = (rho / n_streams) * np.linalg.solve(Rn, G @ G.conj().T)
    lam = np.linalg.eigvals(T).real
    return float(np.sum(np.log2(1.0 + np.clip(lam, 0.0, None))))


def evaluate_method(H, A_chosen, W, rho, sigma2):
    """Capacity of a trained analog precoder with identity digital precoder."""
    if isinstance(A_chosen, AnalogPrecoder):
        blocks = A_chosen.blocks
        W = np.asarray(W, dtype=np.complex128)
        H = np.asarray(H, dtype=np.complex128)
        M, N = blocks.shape
        if W.shape[1] != H.shape[0] or H.shape[1] != N * M:
            raise ConfigurationError(
                f"inconsistent dimensions: W{W.shape} H{H.shape} precoder {M}x{N} blocks"
            )
        G = _backend.kernels.subarray_gain(W @ H, blocks)
        return capacity_from_gain(G, W, rho, sigma2, N)
    return capacity(W, H, A_chosen, rho, sigma2)
