"""Pure numpy implementations of the hot kernels.

Every function here has a twin with the same signature in ``_kernels.pyx``.
Arrays are complex128/float64 and are never modified in place.
"""
import numpy as np

NAME = "python"


def ula_response(phi, n, spacing):
    u = np.arange(n)
    return np.exp(2j * np.pi * spacing * u * np.sin(phi)) / np.sqrt(n)


def assemble_channel(gains, aoa, aod, n_rx, n_tx, spacing):
    gains = np.asarray(gains, dtype=np.complex128)
    n_paths = gains.shape[0]
    rx = np.exp(2j * np.pi * spacing * np.outer(np.sin(aoa), np.arange(n_rx)))
    tx = np.exp(2j * np.pi * spacing * np.outer(np.sin(aod), np.arange(n_tx)))
    # gamma * (1/sqrt(Nr)) * (1/sqrt(Nt)) collapses to 1/sqrt(L)
    H = (rx.T * gains) @ tx.conj()
    return H / np.sqrt(n_paths)


def subarray_gain(WH, blocks):
    K = WH.shape[0]
    M, N = blocks.shape
    return np.einsum("knm,mn->kn", WH.reshape(K, N, M), blocks)


def training_observations(WH, codewords, W, symbols, noise, rho):
    K = WH.shape[0]
    M, N = codewords.shape
    WHb = WH.reshape(K, N, M)
    # per_pair[k, n, j]: response of subarray n steered with codeword j
    per_pair = np.einsum("knm,mj->knj", WHb, codewords)
    Y = np.empty((K, N), dtype=np.complex128)
    idx = np.arange(N)
    for t in range(N):
        cols = per_pair[:, idx, (idx - t) % N]
        Y[:, t] = np.sqrt(rho) * (cols @ symbols[t]) + W @ noise[t]
    return Y


def com_accumulate(weights, codewords):
    M, N = codewords.shape
    out = np.zeros((M, N), dtype=np.complex128)
    for i in range(N):
        out += weights[i] * np.roll(codewords, i, axis=1)
    return out


def logdet2_gram(G, scale):
    K = G.shape[0]
    B = np.eye(K) + scale * (G @ G.conj().T)
    B = 0.5 * (B + B.conj().T)
    L = np.linalg.cholesky(B)
    return float(2.0 * np.sum(np.log2(np.abs(np.diag(L)))))
