"""Partitions, compositions and their text forms.

Partitions are plain tuples of positive integers in weakly decreasing order;
compositions are tuples of non-negative integers where position matters.
Every other module in the package indexes irreducibles and parabolic
subgroups by these tuples.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

Partition = tuple[int, ...]
Composition = tuple[int, ...]

PARTITION_CAP = 30


class PartitionError(ValueError):
    """Raised on malformed partition text or a violated size cap."""


def partition(parts: Iterable[int]) -> Partition:
    """Normalize to a partition: drop zeros and check monotonicity."""
    out = tuple(int(p) for p in parts if p != 0)
    if any(p < 0 for p in out):
        raise PartitionError(f"negative part in {out}")
    if any(out[i] < out[i + 1] for i in range(len(out) - 1)):
        raise PartitionError(f"{out} is not weakly decreasing")
    return out


def sort_desc(parts: Iterable[int]) -> Partition:
    """The partition with the same nonzero entries as ``parts``."""
    return tuple(sorted((int(p) for p in parts if p), reverse=True))


def size(a: Sequence[int]) -> int:
    return sum(a)


def conjugate(p: Sequence[int]) -> Partition:
    """Transpose the Young diagram of ``p``."""
    p = tuple(x for x in p if x)
    if not p:
        return ()
    return tuple(sum(1 for x in p if x > j) for j in range(p[0]))


def lex_compare(a: Sequence[int], b: Sequence[int]) -> int:
    """Lexicographic comparison after zero-padding; returns -1, 0 or 1."""
    n = max(len(a), len(b))
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        if x != y:
            return 1 if x > y else -1
    return 0


def lex_key(a: Sequence[int], width: int) -> tuple[int, ...]:
    """Sort key realizing :func:`lex_compare` for tuples of length <= width."""
    return tuple(a) + (0,) * (width - len(a))


def concat(a: Sequence[int], b: Sequence[int]) -> Composition:
    return tuple(a) + tuple(b)


def entrywise_sum(a: Sequence[int], b: Sequence[int]) -> Composition:
    n = max(len(a), len(b))
    return tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def effective_length(a: Sequence[int]) -> int:
    """Index (1-based) of the last nonzero entry, 0 when there is none."""
    for i in range(len(a) - 1, -1, -1):
        if a[i]:
            return i + 1
    return 0


def trim(a: Sequence[int]) -> Composition:
    """Drop trailing zeros."""
    return tuple(a[: effective_length(a)])


@lru_cache(maxsize=None)
def _partitions_desc(n: int, largest: int) -> tuple[Partition, ...]:
    if n == 0:
        return ((),)
    out: list[Partition] = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_desc(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_of(n: int, cap: int = PARTITION_CAP) -> list[Partition]:
    """All partitions of ``n`` in strictly decreasing lexicographic order."""
    if n < 0:
        raise PartitionError("n must be non-negative")
    if n > cap:
        raise PartitionError(f"n={n} exceeds the partition cap {cap}")
    return list(_partitions_desc(n, n))


def bipartitions_of(n: int, cap: int = PARTITION_CAP) -> list[tuple[Partition, Partition]]:
    """All ordered pairs of partitions with total size ``n``."""
    out = []
    for i in range(n + 1):
        for lam in partitions_of(i, cap):
            for mu in partitions_of(n - i, cap):
                out.append((lam, mu))
    return out


def compositions(n: int, k: int) -> Iterator[Composition]:
    """Weak compositions of ``n`` into exactly ``k`` non-negative parts."""
    if k == 0:
        if n == 0:
            yield ()
        return
    if k == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in compositions(n - first, k - 1):
            yield (first,) + rest


def positive_compositions(n: int) -> Iterator[Composition]:
    """Compositions of ``n`` into positive parts."""
    if n == 0:
        yield ()
        return
    for first in range(n, 0, -1):
        for rest in positive_compositions(n - first):
            yield (first,) + rest


def splittings(p: Sequence[int], bounds: Sequence[int] | None = None) -> Iterator[tuple[Composition, Composition]]:
    """All pairs (alpha, beta) of non-negative tuples with alpha + beta = p.

    ``bounds`` optionally caps alpha entrywise (used to force zeros).
    """
    p = tuple(p)
    caps = tuple(p) if bounds is None else tuple(min(x, y) for x, y in zip(p, bounds))

    def rec(i: int) -> Iterator[Composition]:
        if i == len(p):
            yield ()
            return
        for a in range(caps[i] + 1):
            for rest in rec(i + 1):
                yield (a,) + rest

    for alpha in rec(0):
        yield alpha, tuple(x - y for x, y in zip(p, alpha))


def contains(outer: Sequence[int], inner: Sequence[int]) -> bool:
    """True when the diagram of ``inner`` fits inside ``outer``."""
    if len(inner) > len(outer):
        return False
    return all(inner[i] <= outer[i] for i in range(len(inner)))


def hook_dimension(p: Sequence[int]) -> int:
    """Number of standard Young tableaux of shape ``p`` (hook length formula)."""
    p = tuple(x for x in p if x)
    n = sum(p)
    conj = conjugate(p)
    prod = 1
    for i, row in enumerate(p):
        for j in range(row):
            prod *= (row - j - 1) + (conj[j] - i - 1) + 1
    f = 1
    for k in range(2, n + 1):
        f *= k
    return f // prod


# ---------------------------------------------------------------- text forms

_INT_LIST = r"\s*(?:\d+\s*(?:,\s*\d+\s*)*)?"
_PARTITION_RE = re.compile(r"^\s*\[(" + _INT_LIST + r")\]\s*$")
_COMPOSITION_RE = re.compile(r"^\s*\((" + _INT_LIST + r")\)\s*$")


def _ints(body: str) -> tuple[int, ...]:
    body = body.strip()
    if not body:
        return ()
    return tuple(int(x) for x in body.split(","))


def parse_partition(text: str) -> Partition:
    """Parse ``"[2,1]"``; ``"[]"`` is the empty partition."""
    m = _PARTITION_RE.match(text)
    if not m:
        raise PartitionError(f"not a partition: {text!r}")
    parts = _ints(m.group(1))
    if any(x == 0 for x in parts):
        raise PartitionError(f"partition parts must be positive: {text!r}")
    return partition(parts)


def parse_composition(text: str) -> Composition:
    """Parse ``"(2,0,1)"``; zeros are kept."""
    m = _COMPOSITION_RE.match(text)
    if not m:
        raise PartitionError(f"not a composition: {text!r}")
    return _ints(m.group(1))


def parse_bipartition(text: str) -> tuple[Partition, Partition]:
    """Parse ``"[2,1]|[1]"``."""
    if text.count("|") != 1:
        raise PartitionError(f"not a bipartition: {text!r}")
    left, right = text.split("|")
    return parse_partition(left), parse_partition(right)


def format_partition(p: Sequence[int]) -> str:
    return "[" + ",".join(str(x) for x in p) + "]"


def format_composition(c: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in c) + ")"


def format_bipartition(lam: Sequence[int], mu: Sequence[int]) -> str:
    return format_partition(lam) + "|" + format_partition(mu)
