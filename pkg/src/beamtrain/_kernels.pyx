# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Signatures mirror ``beamtrain._fallback``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sin, cos, sqrt, log2, M_PI

cnp.import_array()

NAME = "cython"

ctypedef double complex cplx


cdef inline cplx cexpj(double theta) nogil:
    return cos(theta) + 1j * sin(theta)


def ula_response(double phi, Py_ssize_t n, double spacing):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(n, dtype=np.complex128)
    cdef double step = 2.0 * M_PI * spacing * sin(phi)
    cdef double norm = 1.0 / sqrt(<double>n)
    cdef Py_ssize_t u
    for u in range(n):
        out[u] = cexpj(step * u) * norm
    return out


def assemble_channel(gains, aoa, aod, Py_ssize_t n_rx, Py_ssize_t n_tx, double spacing):
    cdef const cplx[::1] g = np.ascontiguousarray(gains, dtype=np.complex128)
    cdef const double[::1] ar = np.ascontiguousarray(aoa, dtype=np.float64)
    cdef const double[::1] ad = np.ascontiguousarray(aod, dtype=np.float64)
    cdef Py_ssize_t n_paths = g.shape[0]
    out = np.empty((n_rx, n_tx), dtype=np.complex128)
    cdef double[:, ::1] H = out.view(np.float64)
    # per-path responses as separate real/imag planes
    resp = np.empty((4, n_paths, max(n_rx, n_tx)), dtype=np.float64)
    cdef double[:, :, ::1] R = resp
    cdef Py_ssize_t l, r, t
    cdef double phase, scale = 1.0 / sqrt(<double>n_paths)
    cdef double re, im, ar_re, ar_im
    with nogil:
        for l in range(n_paths):
            phase = 2.0 * M_PI * spacing * sin(ar[l])
            for r in range(n_rx):
                # scaled gain folded into the receive response
                re = cos(phase * r)
                im = sin(phase * r)
                R[0, l, r] = (re * g[l].real - im * g[l].imag) * scale
                R[1, l, r] = (re * g[l].imag + im * g[l].real) * scale
            phase = 2.0 * M_PI * spacing * sin(ad[l])
            for t in range(n_tx):
                R[2, l, t] = cos(phase * t)
                R[3, l, t] = -sin(phase * t)
        for r in range(n_rx):
            for t in range(n_tx):
                re = 0.0
                im = 0.0
                for l in range(n_paths):
                    ar_re = R[0, l, r]
                    ar_im = R[1, l, r]
                    re = re + ar_re * R[2, l, t] - ar_im * R[3, l, t]
                    im = im + ar_re * R[3, l, t] + ar_im * R[2, l, t]
                H[r, 2 * t] = re
                H[r, 2 * t + 1] = im
    return out


cdef void _subarray_gain(const cplx[:, ::1] WH, const cplx[:, ::1] blocks,
                         cplx[:, ::1] out) noexcept nogil:
    cdef Py_ssize_t K = WH.shape[0]
    cdef Py_ssize_t M = blocks.shape[0]
    cdef Py_ssize_t N = blocks.shape[1]
    cdef Py_ssize_t k, n, m
    cdef cplx acc
    for k in range(K):
        for n in range(N):
            acc = 0
            for m in range(M):
                acc = acc + WH[k, n * M + m] * blocks[m, n]
            out[k, n] = acc


def subarray_gain(WH, blocks):
    cdef const cplx[:, ::1] wh = np.ascontiguousarray(WH, dtype=np.complex128)
    cdef const cplx[:, ::1] b = np.ascontiguousarray(blocks, dtype=np.complex128)
    out = np.empty((wh.shape[0], b.shape[1]), dtype=np.complex128)
    cdef cplx[:, ::1] o = out
    with nogil:
        _subarray_gain(wh, b, o)
    return out


def training_observations(WH, codewords, W, symbols, noise, double rho):
    cdef const cplx[:, ::1] wh = np.ascontiguousarray(WH, dtype=np.complex128)
    cdef const cplx[:, ::1] cb = np.ascontiguousarray(codewords, dtype=np.complex128)
    cdef const cplx[:, ::1] w = np.ascontiguousarray(W, dtype=np.complex128)
    cdef const cplx[:, ::1] s = np.ascontiguousarray(symbols, dtype=np.complex128)
    cdef const cplx[:, ::1] z = np.ascontiguousarray(noise, dtype=np.complex128)
    cdef Py_ssize_t K = wh.shape[0]
    cdef Py_ssize_t M = cb.shape[0]
    cdef Py_ssize_t N = cb.shape[1]
    cdef Py_ssize_t n_rx = w.shape[1]
    pair_arr = np.empty((K, N, N), dtype=np.complex128)
    cdef cplx[:, :, ::1] pair = pair_arr
    out = np.empty((K, N), dtype=np.complex128)
    cdef cplx[:, ::1] Y = out
    cdef Py_ssize_t k, n, j, m, t, r
    cdef cplx acc, sig, nz
    cdef double amp = sqrt(rho)
    with nogil:
        # pair[k, n, j]: response of subarray n steered with codeword j
        for k in range(K):
            for n in range(N):
                for j in range(N):
                    acc = 0
                    for m in range(M):
                        acc = acc + wh[k, n * M + m] * cb[m, j]
                    pair[k, n, j] = acc
        for t in range(N):
            for k in range(K):
                sig = 0
                for n in range(N):
                    sig = sig + pair[k, n, (n - t + N) % N] * s[t, n]
                nz = 0
                for r in range(n_rx):
                    nz = nz + w[k, r] * z[t, r]
                Y[k, t] = amp * sig + nz
    return out


def com_accumulate(weights, codewords):
    cdef const double[::1] wt = np.ascontiguousarray(weights, dtype=np.float64)
    cdef const cplx[:, ::1] cb = np.ascontiguousarray(codewords, dtype=np.complex128)
    cdef Py_ssize_t M = cb.shape[0]
    cdef Py_ssize_t N = cb.shape[1]
    out = np.zeros((M, N), dtype=np.complex128)
    cdef cplx[:, ::1] est = out
    cdef Py_ssize_t i, k, m, j
    with nogil:
        for i in range(N):
            for k in range(N):
                j = (k - i + N) % N
                for m in range(M):
                    est[m, k] = est[m, k] + wt[i] * cb[m, j]
    return out


def logdet2_gram(G, double scale):
    cdef const cplx[:, ::1] g = np.ascontiguousarray(G, dtype=np.complex128)
    cdef Py_ssize_t K = g.shape[0]
    cdef Py_ssize_t N = g.shape[1]
    B_arr = np.empty((K, K), dtype=np.complex128)
    cdef cplx[:, ::1] B = B_arr
    cdef Py_ssize_t i, j, n, p
    cdef cplx acc
    cdef double d, total = 0.0
    cdef bint failed = False
    with nogil:
        # lower triangle of I + scale * G G^H; Hermitian by construction
        for i in range(K):
            for j in range(i + 1):
                acc = 0
                for n in range(N):
                    acc = acc + g[i, n] * g[j, n].conjugate()
                B[i, j] = scale * acc
            B[i, i] = B[i, i].real + 1.0
        # in-place Cholesky on the lower triangle
        for j in range(K):
            d = B[j, j].real
            for p in range(j):
                d = d - (B[j, p].real * B[j, p].real + B[j, p].imag * B[j, p].imag)
            if not d > 0.0:
                failed = True
                break
            d = sqrt(d)
            B[j, j] = d
            total = total + log2(d)
            for i in range(j + 1, K):
                acc = B[i, j]
                for p in range(j):
                    acc = acc - B[i, p] * B[j, p].conjugate()
                B[i, j] = acc / d
    if failed:
        raise np.linalg.LinAlgError("matrix is not positive definite")
    return 2.0 * total
