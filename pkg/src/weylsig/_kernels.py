"""Batch kernels on signed permutations.

A signed permutation of {1..n} is an int64 row w with w[i] = s_i * (pi(i)+1),
i.e. the matrix sending e_i to s_i e_{pi(i)}. Rows are stacked into (m, n)
arrays. Every kernel has a numba version and a numpy version with the same
signature; set WEYLSIG_DISABLE_NUMBA=1 to force numpy.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("WEYLSIG_DISABLE_NUMBA", "").strip() not in ("", "0")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:
    NUMBA_AVAILABLE = False


# ----------------------------------------------------------------- numpy path


def compose_np(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise a o b; either argument may be a single row."""
    a = np.atleast_2d(a)
    b = np.atleast_2d(b)
    m = max(a.shape[0], b.shape[0])
    a = np.broadcast_to(a, (m, a.shape[1]))
    b = np.broadcast_to(b, (m, b.shape[1]))
    idx = np.abs(b) - 1
    return np.sign(b) * np.take_along_axis(a, idx, axis=1)


def inverse_np(w: np.ndarray) -> np.ndarray:
    w = np.atleast_2d(w)
    out = np.empty_like(w)
    rows = np.arange(w.shape[0])[:, None]
    cols = np.abs(w) - 1
    out[rows, cols] = np.sign(w) * (np.arange(w.shape[1]) + 1)
    return out


def encode_np(w: np.ndarray) -> np.ndarray:
    """Injective int64 key per row (base 2n+1 digits)."""
    w = np.atleast_2d(w)
    n = w.shape[1]
    base = 2 * n + 1
    digits = w + n
    powers = base ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return digits.astype(np.int64) @ powers


def det_np(w: np.ndarray) -> np.ndarray:
    """Determinant of each signed permutation matrix."""
    w = np.atleast_2d(w)
    perm = np.abs(w) - 1
    n = w.shape[1]
    inv = np.zeros(w.shape[0], dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            inv += perm[:, i] > perm[:, j]
    signs = np.prod(np.sign(w), axis=1)
    return np.where(inv % 2 == 0, 1, -1) * signs


def conjugate_np(g: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Row-wise x^{-1} g x."""
    return compose_np(compose_np(inverse_np(x), g), x)


def signed_sum_np(dets: np.ndarray, values: np.ndarray) -> int:
    return int(np.dot(dets.astype(np.int64), values.astype(np.int64)))


# ----------------------------------------------------------------- numba path

if NUMBA_AVAILABLE:

    @njit(cache=True)
    def _compose_nb(a, b):
        m = max(a.shape[0], b.shape[0])
        n = a.shape[1]
        out = np.empty((m, n), dtype=np.int64)
        for r in range(m):
            ra = r if a.shape[0] > 1 else 0
            rb = r if b.shape[0] > 1 else 0
            for i in range(n):
                x = b[rb, i]
                if x > 0:
                    out[r, i] = a[ra, x - 1]
                else:
                    out[r, i] = -a[ra, -x - 1]
        return out

    @njit(cache=True)
    def _inverse_nb(w):
        m, n = w.shape
        out = np.empty((m, n), dtype=np.int64)
        for r in range(m):
            for i in range(n):
                x = w[r, i]
                if x > 0:
                    out[r, x - 1] = i + 1
                else:
                    out[r, -x - 1] = -(i + 1)
        return out

    @njit(cache=True)
    def _encode_nb(w):
        m, n = w.shape
        base = 2 * n + 1
        out = np.empty(m, dtype=np.int64)
        for r in range(m):
            k = 0
            for i in range(n):
                k = k * base + (w[r, i] + n)
            out[r] = k
        return out

    @njit(cache=True)
    def _det_nb(w):
        m, n = w.shape
        out = np.empty(m, dtype=np.int64)
        for r in range(m):
            s = 1
            for i in range(n):
                if w[r, i] < 0:
                    s = -s
                pi = abs(w[r, i])
                for j in range(i + 1, n):
                    if pi > abs(w[r, j]):
                        s = -s
            out[r] = s
        return out

    @njit(cache=True)
    def _signed_sum_nb(dets, values):
        t = 0
        for i in range(dets.shape[0]):
            t += dets[i] * values[i]
        return t

    def compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return _compose_nb(np.atleast_2d(a).astype(np.int64), np.atleast_2d(b).astype(np.int64))

    def inverse(w: np.ndarray) -> np.ndarray:
        return _inverse_nb(np.atleast_2d(w).astype(np.int64))

    def encode(w: np.ndarray) -> np.ndarray:
        return _encode_nb(np.atleast_2d(w).astype(np.int64))

    def det(w: np.ndarray) -> np.ndarray:
        return _det_nb(np.atleast_2d(w).astype(np.int64))

    def conjugate(g: np.ndarray, x: np.ndarray) -> np.ndarray:
        return compose(compose(inverse(x), g), x)

    def signed_sum(dets: np.ndarray, values: np.ndarray) -> int:
        return int(_signed_sum_nb(dets.astype(np.int64), values.astype(np.int64)))

else:
    compose = compose_np
    inverse = inverse_np
    encode = encode_np
    det = det_np
    conjugate = conjugate_np
    signed_sum = signed_sum_np


BACKEND = "numba" if NUMBA_AVAILABLE else "numpy"
