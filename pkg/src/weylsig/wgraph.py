"""Weak W-graphs, their projectors and tau-invariants, and Atlas ``wcell``
output.

A weak W-graph (V, m, tau) defines s_a on the span of V by
    s_a(v) = -v                                   if a in tau(v)
    s_a(v) = v - sum_{u : a in tau(u)} m(u,v) u    otherwise
and is valid when these operators satisfy the Coxeter relations.
All arithmetic is exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _linalg as L

ELEMENT_CAP = 10**6


# ------------------------------------------------------------- Coxeter data


@dataclass(frozen=True)
class CoxeterData:
    rank: int
    coxeter_matrix: tuple[tuple[int, ...], ...]
    tag: str | None = None
    gram: tuple[tuple[Fraction, ...], ...] | None = None

    def __post_init__(self) -> None:
        M = self.coxeter_matrix
        if len(M) != self.rank or any(len(r) != self.rank for r in M):
            raise ValueError("Coxeter matrix has the wrong shape")
        for i in range(self.rank):
            if M[i][i] != 1:
                raise ValueError("Coxeter matrix diagonal must be 1")
            for j in range(self.rank):
                if M[i][j] != M[j][i] or (i != j and M[i][j] < 2):
                    raise ValueError("Coxeter matrix must be symmetric with entries >= 2")

    @property
    def family(self) -> str | None:
        return self.tag[0] if self.tag else None

    def cartan(self) -> list[list[Fraction]]:
        """m(a, b) = 2 (a, b) / (a, a)."""
        if self.gram is None:
            raise ValueError("no root lengths recorded for this Coxeter datum")
        G = self.gram
        return [[2 * G[i][j] / G[i][i] for j in range(self.rank)] for i in range(self.rank)]


def _gram_from_edges(rank: int, lengths: Sequence[int], edges: Mapping[tuple[int, int], int]):
    G = [[Fraction(0)] * rank for _ in range(rank)]
    for i in range(rank):
        G[i][i] = Fraction(lengths[i])
    for (i, j), m in edges.items():
        # (a, b) = -sqrt(|a|^2 |b|^2) cos(pi/m); squared ratio is rational for Weyl groups
        prod = Fraction(lengths[i] * lengths[j])
        c2 = {3: Fraction(1, 4), 4: Fraction(1, 2), 6: Fraction(3, 4)}[m]
        val = prod * c2
        root = Fraction(_isqrt(val.numerator), _isqrt(val.denominator))
        if root * root != val:
            raise ValueError("non-crystallographic edge")
        G[i][j] = G[j][i] = -root
    return tuple(tuple(r) for r in G)


def _isqrt(x: int) -> int:
    import math

    return math.isqrt(x)


def coxeter_data(tag: str) -> CoxeterData:
    """Coxeter datum for ``A<n>``, ``B<n>``, ``C<n>``, ``D<n>``, ``G2``, ``F4``."""
    m = re.fullmatch(r"\s*([ABCDGF])(\d+)\s*", tag)
    if not m:
        raise ValueError(f"unknown type {tag!r}")
    fam, r = m.group(1), int(m.group(2))
    edges: dict[tuple[int, int], int] = {}
    if fam == "A":
        lengths = [2] * r
        edges = {(i, i + 1): 3 for i in range(r - 1)}
    elif fam in "BC":
        if r < 2:
            raise ValueError("B_n/C_n need n >= 2")
        edges = {(i, i + 1): 3 for i in range(r - 2)}
        edges[(r - 2, r - 1)] = 4
        lengths = [2] * (r - 1) + [1] if fam == "B" else [1] * (r - 1) + [2]
    elif fam == "D":
        if r < 3:
            raise ValueError("D_n needs n >= 3 here")
        edges = {(i, i + 1): 3 for i in range(r - 2)}
        edges[(r - 3, r - 1)] = 3
        lengths = [2] * r
    elif fam == "G":
        if r != 2:
            raise ValueError("G has rank 2")
        edges = {(0, 1): 6}
        lengths = [1, 3]
    else:
        if r != 4:
            raise ValueError("F has rank 4")
        edges = {(0, 1): 3, (1, 2): 4, (2, 3): 3}
        lengths = [2, 2, 1, 1]
    M = [[1 if i == j else 2 for j in range(r)] for i in range(r)]
    for (i, j), v in edges.items():
        M[i][j] = M[j][i] = v
    return CoxeterData(r, tuple(tuple(x) for x in M), f"{fam}{r}", _gram_from_edges(r, lengths, edges))


# -------------------------------------------------------------- W-graphs


@dataclass
class WeakWGraph:
    """Vertices are 0..len(tau)-1; ``names`` keeps printed labels; tau sets
    hold 1-based simple-root indices."""

    tau: list[frozenset[int]]
    m: dict[tuple[int, int], Fraction] = field(default_factory=dict)
    names: list[str] | None = None
    cox: CoxeterData | None = None

    @property
    def size(self) -> int:
        return len(self.tau)

    def weight(self, u: int, v: int) -> Fraction:
        return self.m.get((u, v), Fraction(0))


def coxeter_graph_wgraph(cox: CoxeterData) -> WeakWGraph:
    """V = simple roots, tau(a) = {a}, m(a, b) = 2(a, b)/(a, a)."""
    C = cox.cartan()
    m = {}
    for i in range(cox.rank):
        for j in range(cox.rank):
            if i != j and C[i][j]:
                m[(i, j)] = Fraction(C[i][j])
    return WeakWGraph([frozenset({i + 1}) for i in range(cox.rank)], m, [f"a{i + 1}" for i in range(cox.rank)], cox)


def simple_reflection_matrix(g: WeakWGraph, alpha: int) -> np.ndarray:
    """Matrix of s_alpha (1-based root index); column v is s_alpha(v)."""
    n = g.size
    s = L.zeros(n, n)
    for v in range(n):
        if alpha in g.tau[v]:
            s[v, v] = Fraction(-1)
            continue
        s[v, v] = Fraction(1)
        for u in range(n):
            if alpha in g.tau[u]:
                s[u, v] -= g.weight(u, v)
    return s


@dataclass(frozen=True)
class Validation:
    ok: bool
    violation: str | None = None


def validate(g: WeakWGraph, cox: CoxeterData) -> Validation:
    """Check s_a^2 = 1 and (s_a s_b)^{m_ab} = 1 for every pair."""
    for t in g.tau:
        if any(a < 1 or a > cox.rank for a in t):
            return Validation(False, f"tau set {sorted(t)} outside 1..{cox.rank}")
    eye = L.eye(g.size)
    mats = [simple_reflection_matrix(g, a + 1) for a in range(cox.rank)]
    for a in range(cox.rank):
        if not np.array_equal(mats[a].dot(mats[a]), eye):
            return Validation(False, f"s_{a + 1}^2 != 1")
    for a in range(cox.rank):
        for b in range(a + 1, cox.rank):
            p = mats[a].dot(mats[b])
            acc = eye
            for _ in range(cox.coxeter_matrix[a][b]):
                acc = acc.dot(p)
            if not np.array_equal(acc, eye):
                return Validation(False, f"(s_{a + 1} s_{b + 1})^{cox.coxeter_matrix[a][b]} != 1")
    return Validation(True)


def vertex_partition(g: WeakWGraph, A: Iterable[int]) -> tuple[set[int], set[int], set[int]]:
    """(V(A,-), V(A,0), V(A,+)): A inside tau(v), meeting it partially, missing it."""
    A = frozenset(A)
    minus, zero, plus = set(), set(), set()
    for v, t in enumerate(g.tau):
        if A <= t:
            minus.add(v)
        elif A & t:
            zero.add(v)
        else:
            plus.add(v)
    return minus, zero, plus


def reflection_matrix(cox: CoxeterData, alpha: int) -> np.ndarray:
    """s_alpha on the span of the simple roots: a_j -> a_j - m(a_i, a_j) a_i."""
    C = cox.cartan()
    i = alpha - 1
    s = L.eye(cox.rank)
    for j in range(cox.rank):
        s[i, j] -= C[i][j]
    return s


def _cox_of(g: WeakWGraph, cox: CoxeterData | None) -> CoxeterData:
    cox = cox or g.cox
    if cox is None:
        raise ValueError("a Coxeter datum is needed to enumerate W(A)")
    return cox


def parabolic_elements(
    g: WeakWGraph, A: Iterable[int], cox: CoxeterData | None = None, cap: int = ELEMENT_CAP
) -> list[tuple[np.ndarray, int]]:
    """(matrix on the graph module, sign) for every element of W(A).

    Elements are told apart in the reflection representation, which is
    faithful; the graph module need not be.
    """
    cox = _cox_of(g, cox)
    A = sorted(set(A))
    gens = [(reflection_matrix(cox, a), simple_reflection_matrix(g, a)) for a in A]
    start = (L.eye(cox.rank), L.eye(g.size), 1)
    seen = {L.key(start[0]): start}
    frontier = [start]
    while frontier:
        nxt = []
        for r, m, s in frontier:
            for rx, mx in gens:
                y = r.dot(rx)
                k = L.key(y)
                if k not in seen:
                    seen[k] = (y, m.dot(mx), -s)
                    nxt.append(seen[k])
                    if len(seen) > cap:
                        raise RuntimeError(f"W(A) exceeds the element cap {cap}")
        frontier = nxt
    return [(m, s) for _, m, s in seen.values()]


def _average(g: WeakWGraph, A: Iterable[int], signed: bool, cox: CoxeterData | None) -> np.ndarray:
    elems = parabolic_elements(g, A, cox)
    acc = L.zeros(g.size, g.size)
    for m, s in elems:
        acc = acc + (m if (s > 0 or not signed) else -m)
    return acc / Fraction(len(elems))


def projector_Q(g: WeakWGraph, A: Iterable[int], cox: CoxeterData | None = None) -> np.ndarray:
    """Average over W(A): projection onto the W(A)-invariants."""
    return _average(g, A, False, cox)


def projector_R(g: WeakWGraph, A: Iterable[int], cox: CoxeterData | None = None) -> np.ndarray:
    """Sign-weighted average over W(A): projection onto the sign isotypic part."""
    return _average(g, A, True, cox)


def realization_operator(g: WeakWGraph, A: Iterable[int], cox: CoxeterData | None = None) -> np.ndarray:
    """Q(all - A) R(A) as a matrix on the graph module."""
    cox = _cox_of(g, cox)
    A = frozenset(A)
    rest = frozenset(range(1, cox.rank + 1)) - A
    return projector_Q(g, rest, cox).dot(projector_R(g, A, cox))


def tau_trace(g: WeakWGraph, A: Iterable[int], cox: CoxeterData | None = None) -> Fraction:
    """trace Q(all - A) R(A). Not a vertex count in general: the two
    projectors need not commute."""
    return L.trace(realization_operator(g, A, cox))


def tau_subset_realized(g: WeakWGraph, A: Iterable[int], cox: CoxeterData | None = None) -> int:
    """rank Q(all - A) R(A); equals #{v : tau(v) = A}."""
    A = frozenset(A)
    r = L.rank(realization_operator(g, A, cox))
    count = sum(1 for x in g.tau if x == A)
    if r != count:
        raise ArithmeticError(f"rank {r} disagrees with the vertex count {count}")
    return count


@dataclass(frozen=True)
class TauSignature:
    subsets: frozenset[frozenset[int]]

    def text(self) -> str:
        parts = sorted(self.subsets, key=lambda s: (len(s), sorted(s)))
        return "{" + ",".join("{" + ",".join(map(str, sorted(p))) + "}" for p in parts) + "}"

    def __str__(self) -> str:
        return self.text()

    def sign_support(self, rank: int) -> set[frozenset[int]]:
        """All A with A inside some tau(v)."""
        from itertools import combinations

        out = set()
        for t in self.subsets:
            items = sorted(t)
            for k in range(len(items) + 1):
                out.update(frozenset(c) for c in combinations(items, k))
        return out


def tau_signature(g: WeakWGraph) -> TauSignature:
    return TauSignature(frozenset(g.tau))


def character_values(g: WeakWGraph, words: Sequence[Sequence[int]]) -> list[Fraction]:
    """Traces of the products s_{w_1} ... s_{w_k} for the given words."""
    out = []
    for w in words:
        m = L.eye(g.size)
        for a in w:
            m = m.dot(simple_reflection_matrix(g, a))
        out.append(L.trace(m))
    return out


# --------------------------------------------------------------- wcell parse


class WcellParseError(ValueError):
    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class WcellBlock:
    members: dict[int, list[int]]
    induced: dict[int, list[int]]
    cells: dict[int, WeakWGraph]

    def ordered_cells(self) -> list[tuple[int, WeakWGraph]]:
        return sorted(self.cells.items())


_MEMBERS = re.compile(r"^#(\d+)=\{([\d,\s]*)\}$")
_INDUCED = re.compile(r"^#(\d+):(?:->((?:#\d+)(?:,#\d+)*))?\.$")
_CELL_HDR = re.compile(r"^//\s*cell\s*#(\d+):$")
_VERTEX = re.compile(r"^(\d+)\[(\d+)\]:\s*\{([\d,\s]*)\}(?:\s*-->\s*(\d+(?::\d+)?(?:\s*,\s*\d+(?::\d+)?)*))?$")


def _int_list(body: str) -> list[int]:
    body = body.strip()
    return [int(x) for x in body.split(",")] if body else []


def parse_wcell(text: str, cox: CoxeterData | None = None) -> WcellBlock:
    """Parse Atlas ``wcell`` output.

    Arrows u --> v set m(u, v) = 1. An arrow target written ``v:k`` sets
    m(u, v) = k (provisional extension).
    """
    members: dict[int, list[int]] = {}
    induced: dict[int, list[int]] = {}
    cells: dict[int, WeakWGraph] = {}
    current: int | None = None
    pending: dict[int, list] = {}
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or set(line) <= {"-"}:
            continue
        m = _CELL_HDR.match(line)
        if m:
            current = int(m.group(1))
            if current in pending:
                raise WcellParseError(no, f"cell #{current} listed twice")
            pending[current] = []
            continue
        if line.startswith("//"):
            current = None
            continue
        m = _MEMBERS.match(line)
        if m and current is None:
            members[int(m.group(1))] = _int_list(m.group(2))
            continue
        m = _INDUCED.match(line)
        if m and current is None:
            targets = m.group(2)
            induced[int(m.group(1))] = [int(x[1:]) for x in targets.split(",")] if targets else []
            continue
        m = _VERTEX.match(line)
        if m and current is not None:
            local, glob = int(m.group(1)), int(m.group(2))
            tau = frozenset(_int_list(m.group(3)))
            edges = []
            if m.group(4):
                for item in m.group(4).split(","):
                    item = item.strip()
                    if ":" in item:
                        t, w = item.split(":")
                        edges.append((int(t), Fraction(int(w))))
                    else:
                        edges.append((int(item), Fraction(1)))
            if local != len(pending[current]):
                raise WcellParseError(no, f"expected local index {len(pending[current])}, got {local}")
            pending[current].append((glob, tau, edges, no))
            continue
        raise WcellParseError(no, f"unrecognized line {raw!r}")
    for c, rows in pending.items():
        size = len(rows)
        mm: dict[tuple[int, int], Fraction] = {}
        for u, (_, _, edges, no) in enumerate(rows):
            for v, w in edges:
                if v >= size:
                    raise WcellParseError(no, f"edge target {v} outside cell #{c}")
                mm[(u, v)] = w
        cells[c] = WeakWGraph([r[1] for r in rows], mm, [str(r[0]) for r in rows], cox)
        if c in members and sorted(members[c]) != sorted(r[0] for r in rows):
            raise WcellParseError(rows[0][3] if rows else 1, f"cell #{c} vertices disagree with the header")
    return WcellBlock(members, induced, cells)


# ---------------------------------------------------- special identification

G2_ORBIT_NAMES = {
    frozenset({frozenset()}): "G_2",
    frozenset({frozenset({1}), frozenset({2})}): "G_2(a_1)",
    frozenset({frozenset({1, 2})}): "0",
}


def parabolic_from_subset(cox: CoxeterData, A: Iterable[int]):
    """Canonical parabolic key of W(A) for a classical Coxeter datum."""
    A = set(A)
    fam, r = cox.tag[0], cox.rank
    if fam == "A":
        n = r + 1
        blocks, size = [], 1
        for i in range(1, n):
            if i in A:
                size += 1
            else:
                blocks.append(size)
                size = 1
        blocks.append(size)
        return tuple(sorted(blocks, reverse=True))
    if fam in "BC":
        from .type_b import ParabolicB

        n = r
        j = n
        if n in A:
            while j - 1 >= 1 and (j - 1) in A:
                j -= 1
            b = n - j + 1
        else:
            b = 0
        upto = n - b
        blocks, size = [], 1
        for i in range(1, upto):
            if i in A:
                size += 1
            else:
                blocks.append(size)
                size = 1
        if upto:
            blocks.append(size)
        return ParabolicB(tuple(blocks), (b,) if b else ())
    if fam == "D":
        from .type_d import parabolic_d_from_generators

        return parabolic_d_from_generators(r, A)
    raise ValueError("parabolic keys exist only for classical types")


def identify_special(sig: TauSignature, cox: CoxeterData):
    """The irreducible whose sign-signature support is the set of A lying in
    some tau-invariant of ``sig``."""
    from itertools import combinations

    fam, r = cox.tag[0], cox.rank
    support = sig.sign_support(r)
    keys = set()
    allkeys = set()
    for k in range(r + 1):
        for A in combinations(range(1, r + 1), k):
            p = parabolic_from_subset(cox, A)
            allkeys.add(p)
            if frozenset(A) in support:
                keys.add(p)
    from .type_a import SignatureError

    if fam == "A":
        from .type_a import recover_a, sign_signature_a

        lam = recover_a({p: 1 for p in keys})
        if sign_signature_a(lam).support() != keys:
            raise SignatureError("no irreducible has this sign support")
        return lam
    if fam in "BC":
        from .type_b import irreps_b_in_order, sign_signature_b

        cands = irreps_b_in_order(r)
    else:
        from .type_d import irreps_d, sign_signature_d

        cands = irreps_d(r)
    sigf = sign_signature_b if fam in "BC" else sign_signature_d
    hits = []
    for v in cands:
        s = sigf(v)
        if {p for p in allkeys if s[p] > 0} == keys:
            hits.append(v)
    if len(hits) != 1:
        raise SignatureError(f"{len(hits)} irreducibles match this sign support")
    return hits[0]
