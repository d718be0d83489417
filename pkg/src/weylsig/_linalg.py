"""Exact linear algebra on numpy object arrays of Fractions."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np


def as_exact(rows: Sequence[Sequence]) -> np.ndarray:
    a = np.array([[Fraction(x) for x in r] for r in rows], dtype=object)
    if a.ndim != 2:
        a = a.reshape(len(rows), -1)
    return a


def eye(d: int) -> np.ndarray:
    m = zeros(d, d)
    for i in range(d):
        m[i, i] = Fraction(1)
    return m


def zeros(r: int, c: int) -> np.ndarray:
    m = np.empty((r, c), dtype=object)
    m.fill(Fraction(0))
    return m


def trace(m: np.ndarray) -> Fraction:
    return sum(m.diagonal(), Fraction(0))


def row_reduce(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = m.copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i, c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = a[r] / a[r, c]
        for i in range(rows):
            if i != r and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[r]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: np.ndarray) -> int:
    return len(row_reduce(m)[1])


def nullspace(m: np.ndarray) -> list[np.ndarray]:
    """Basis of {x : m x = 0}."""
    a, pivots = row_reduce(m)
    cols = m.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        x = np.array([Fraction(0)] * cols, dtype=object)
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -a[i, f]
        basis.append(x)
    return basis


def det(m: np.ndarray) -> Fraction:
    a = m.copy()
    n = a.shape[0]
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i, c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[[c, p]] = a[[p, c]]
            d = -d
        d *= a[c, c]
        for i in range(c + 1, n):
            if a[i, c] != 0:
                a[i] = a[i] - (a[i, c] / a[c, c]) * a[c]
    return d


def key(m: np.ndarray) -> tuple:
    return tuple(m.ravel().tolist())
