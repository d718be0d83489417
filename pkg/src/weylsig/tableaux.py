"""Kostka numbers, Littlewood-Richardson coefficients and split squares.

All counts are exact Python integers. Kostka numbers use a horizontal-strip
recursion, LR coefficients a depth-first filling of the skew shape checked
against the lattice-word condition, and the split-square coefficients
``c^{lam,+}`` / ``c^{lam,-}`` (multiplicities of GL irreducibles in the
symmetric and exterior square of ``V^lam``) peel highest weights off the
weight multiplicities of unordered tableau pairs.
"""

from __future__ import annotations

import os
import threading
from pathlib import Path
from typing import Iterator, Sequence

from .partitions import (
    Partition,
    PartitionError,
    compositions,
    conjugate,
    contains,
    partitions_of,
    sort_desc,
)

SPLIT_SQUARE_CAP = 8


class CoefficientCache:
    """Memo tables for Kostka and LR values, safe to share between threads."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self.kostka: dict[tuple[Partition, Partition], int] = {}
        self.lr: dict[tuple[Partition, Partition, Partition], int] = {}

    def get_kostka(self, key):
        return self.kostka.get(key)

    def put_kostka(self, key, value: int) -> None:
        with self._lock:
            self.kostka[key] = value

    def get_lr(self, key):
        return self.lr.get(key)

    def put_lr(self, key, value: int) -> None:
        with self._lock:
            self.lr[key] = value

    def clear(self) -> None:
        with self._lock:
            self.kostka.clear()
            self.lr.clear()

    # Persistent form: one "key<TAB>value" line per entry.
    def dump(self, path: str | os.PathLike) -> None:
        from .partitions import format_composition, format_partition

        lines = []
        with self._lock:
            for (shape, content), v in sorted(self.kostka.items()):
                lines.append(f"K {format_partition(shape)} {format_composition(content)}\t{v}")
            for (lam, mu, nu), v in sorted(self.lr.items()):
                lines.append(
                    f"LR {format_partition(lam)} {format_partition(mu)} {format_partition(nu)}\t{v}"
                )
        Path(path).write_text("\n".join(lines) + ("\n" if lines else ""))

    def load(self, path: str | os.PathLike) -> int:
        from .partitions import parse_composition, parse_partition

        p = Path(path)
        if not p.exists():
            return 0
        count = 0
        with self._lock:
            for line in p.read_text().splitlines():
                if not line.strip():
                    continue
                key, value = line.split("\t")
                fields = key.split(" ")
                if fields[0] == "K":
                    self.kostka[(parse_partition(fields[1]), parse_composition(fields[2]))] = int(value)
                elif fields[0] == "LR":
                    k = tuple(parse_partition(f) for f in fields[1:4])
                    self.lr[k] = int(value)  # type: ignore[index]
                count += 1
        return count


CACHE = CoefficientCache()


def _horizontal_strips(mu: Partition, shape: Partition, k: int) -> Iterator[Partition]:
    """Partitions nu with mu <= nu <= shape and nu/mu a horizontal k-strip."""
    rows = len(shape)
    mu_pad = tuple(mu) + (0,) * (rows - len(mu))

    def rec(i: int, left: int, acc: tuple[int, ...]) -> Iterator[Partition]:
        if i == rows:
            if left == 0:
                yield tuple(x for x in acc if x)
            return
        upper = shape[i] if i == 0 else min(shape[i], mu_pad[i - 1])
        hi = min(upper, mu_pad[i] + left)
        for v in range(hi, mu_pad[i] - 1, -1):
            yield from rec(i + 1, left - (v - mu_pad[i]), acc + (v,))

    yield from rec(0, k, ())


def _kostka_dp(shape: Partition, content: Partition) -> int:
    states: dict[Partition, int] = {(): 1}
    for c in content:
        nxt: dict[Partition, int] = {}
        for mu, cnt in states.items():
            for nu in _horizontal_strips(mu, shape, c):
                nxt[nu] = nxt.get(nu, 0) + cnt
        states = nxt
        if not states:
            return 0
    return states.get(tuple(shape), 0)


def kostka(shape: Sequence[int], content: Sequence[int], cache: CoefficientCache = CACHE) -> int:
    """Number of semistandard tableaux of ``shape`` with the given content."""
    shape = tuple(x for x in shape if x)
    if sum(shape) != sum(content) or any(c < 0 for c in content):
        return 0
    key = (shape, sort_desc(content))
    hit = cache.get_kostka(key)
    if hit is not None:
        return hit
    value = _kostka_dp(*key)
    cache.put_kostka(key, value)
    return value


def _lr_fill(outer: Partition, inner: Partition, content: Partition) -> int:
    rows = len(outer)
    inner = tuple(inner) + (0,) * (rows - len(inner))
    cells = [(r, c) for r in range(rows) for c in range(outer[r] - 1, inner[r] - 1, -1)]
    grid: dict[tuple[int, int], int] = {}
    counts = [0] * (len(content) + 1)
    kinds = len(content)

    def rec(idx: int) -> int:
        if idx == len(cells):
            return 1
        r, c = cells[idx]
        lo = 1
        above = grid.get((r - 1, c))
        if above is not None:
            lo = above + 1
        hi = min(kinds, r + 1)
        right = grid.get((r, c + 1))
        if right is not None:
            hi = min(hi, right)
        total = 0
        for v in range(lo, hi + 1):
            if counts[v] >= content[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            counts[v] += 1
            grid[(r, c)] = v
            total += rec(idx + 1)
            del grid[(r, c)]
            counts[v] -= 1
        return total

    return rec(0)


def lr_coefficient(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int], cache: CoefficientCache = CACHE) -> int:
    """Littlewood-Richardson coefficient ``c^lam_{mu,nu}``."""
    lam = tuple(x for x in lam if x)
    mu = tuple(x for x in mu if x)
    nu = tuple(x for x in nu if x)
    if sum(lam) != sum(mu) + sum(nu) or not contains(lam, mu) or not contains(lam, nu):
        return 0
    key = (lam, mu, nu)
    hit = cache.get_lr(key)
    if hit is not None:
        return hit
    value = _lr_fill(lam, mu, nu)
    cache.put_lr(key, value)
    return value


def lr_product(mu: Sequence[int], nu: Sequence[int]) -> dict[Partition, int]:
    """Expansion of ``s_mu * s_nu``: lam -> c^lam_{mu,nu}, nonzero terms only."""
    n = sum(mu) + sum(nu)
    out = {}
    for lam in partitions_of(n):
        c = lr_coefficient(lam, mu, nu)
        if c:
            out[lam] = c
    return out


def skew_expansion(lam: Sequence[int], k: int) -> dict[tuple[Partition, Partition], int]:
    """Pairs (nu, xi) with |nu| = k and nonzero ``c^lam_{nu,xi}``."""
    lam = tuple(x for x in lam if x)
    rest = sum(lam) - k
    if rest < 0 or k < 0:
        return {}
    out = {}
    for nu in partitions_of(k):
        if not contains(lam, nu):
            continue
        for xi in partitions_of(rest):
            c = lr_coefficient(lam, nu, xi)
            if c:
                out[(nu, xi)] = c
    return out


def weight_multiplicities(lam: Sequence[int], nvars: int) -> dict[tuple[int, ...], int]:
    """Weights of the GL(nvars) module ``V^lam`` with their multiplicities."""
    lam = tuple(x for x in lam if x)
    out = {}
    if len(lam) > nvars:
        return out
    for w in compositions(sum(lam), nvars):
        k = kostka(lam, w)
        if k:
            out[w] = k
    return out


def split_square_weights(lam: Sequence[int], nvars: int) -> tuple[dict, dict]:
    """Weight multiplicities of S^2(V^lam) and Lambda^2(V^lam).

    Counts unordered pairs {T1, T2} of semistandard tableaux with entries
    <= nvars, grouped by the weight of T1 + T2. Pairs with T1 = T2 count
    toward the symmetric square only.
    """
    mult = weight_multiplicities(lam, nvars)
    weights = sorted(mult)
    plus: dict[tuple[int, ...], int] = {}
    minus: dict[tuple[int, ...], int] = {}
    for i, a in enumerate(weights):
        ma = mult[a]
        for b in weights[i:]:
            w = tuple(x + y for x, y in zip(a, b))
            if a == b:
                p, m = ma * (ma + 1) // 2, ma * (ma - 1) // 2
            else:
                p = m = ma * mult[b]
            plus[w] = plus.get(w, 0) + p
            minus[w] = minus.get(w, 0) + m
    return plus, minus


def split_square_coefficients(lam: Sequence[int], sign: str, cap: int = SPLIT_SQUARE_CAP) -> dict[Partition, int]:
    """``c^{lam,sign}_nu`` for all nu: sign '+' is S^2, '-' is Lambda^2."""
    lam = tuple(x for x in lam if x)
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    if sum(lam) > cap:
        raise PartitionError(f"|lam|={sum(lam)} exceeds the split-square cap {cap}")
    if not lam:
        return {(): 1} if sign == "+" else {}
    nvars = 2 * len(lam)
    plus, minus = split_square_weights(lam, nvars)
    weights = plus if sign == "+" else minus
    found: dict[Partition, int] = {}
    for nu in partitions_of(2 * sum(lam)):
        if len(nu) > nvars:
            continue
        w = tuple(nu) + (0,) * (nvars - len(nu))
        c = weights.get(w, 0) - sum(v * kostka(mu, nu) for mu, v in found.items())
        if c < 0:
            raise ArithmeticError(f"negative multiplicity while peeling {nu}")
        if c:
            found[nu] = c
    return found


def split_square_kostka_side(lam: Sequence[int], content: Sequence[int], sign: str) -> int:
    """Sum over nu of ``c^{lam,sign}_nu * K_{nu,content}``."""
    return sum(c * kostka(nu, content) for nu, c in split_square_coefficients(lam, sign).items())


def conjugate_all(d: dict[Partition, int]) -> dict[Partition, int]:
    return {conjugate(k): v for k, v in d.items()}
