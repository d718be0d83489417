"""Exceptional root systems (G2, optionally F4): reflection subgroups from
additively closed root subsystems, the character table, and extended sign
signatures.

Roots are integer vectors in the simple-root basis; Weyl group elements are
permutations of the root list.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import _linalg as L
from .wgraph import coxeter_data

Perm = tuple[int, ...]

F4_ENABLED = os.environ.get("WEYLSIG_F4", "").strip() not in ("", "0")

PARABOLIC = "parabolic"
PSEUDO = "pseudo-parabolic"
NEITHER = "neither"

# column order of the published tables
G2_COLUMNS = ["0", "A_1", "A^3_1", "G_2", "A_2", "A^3_1+A_1"]
F4_COLUMNS = [
    "0", "A_1", "A^2_1", "A_2", "B_2", "A^2_1+A_1", "A^2_2", "B_3", "A^2_1+A_2", "A^2_2+A_1", "C_3", "F_4",
    "2A_1", "B_2+A_1", "A_3", "A^2_1+2A_1", "B_4", "A^2_1+A_3", "A^2_2+A_2", "C_3+A_1",
    "3A_1", "4A_1", "B_2+2A_1", "D_4",
]
G2_ROWS = ["phi_{1,6}", "phi_{1,3}''", "phi_{1,3}'", "phi_{1,0}", "phi_{2,1}", "phi_{2,2}"]
F4_ROWS = [
    "phi_{1,0}", "phi_{1,12}''", "phi_{1,12}'", "phi_{1,24}", "phi_{2,4}''", "phi_{2,16}'", "phi_{2,4}'",
    "phi_{2,16}''", "phi_{4,8}", "phi_{9,2}", "phi_{9,6}''", "phi_{9,6}'", "phi_{9,10}", "phi_{6,6}'",
    "phi_{6,6}''", "phi_{12,4}", "phi_{4,1}", "phi_{4,7}''", "phi_{4,7}'", "phi_{4,13}", "phi_{8,3}''",
    "phi_{8,9}'", "phi_{8,3}'", "phi_{8,9}''", "phi_{16,5}",
]


class LabelError(RuntimeError):
    pass


# ------------------------------------------------------------ root systems


@dataclass
class RootSystem:
    tag: str
    rank: int
    gram: np.ndarray
    roots: list[tuple[int, ...]]
    index: dict[tuple[int, ...], int]
    simple: list[int]
    elements: list[Perm] = field(default_factory=list)
    element_index: dict[Perm, int] = field(default_factory=dict)
    _refl: dict[int, Perm] = field(default_factory=dict)
    _norms: dict[int, Fraction] = field(default_factory=dict)

    def form(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        return sum((self.gram[i, j] * x[i] * y[j] for i in range(self.rank) for j in range(self.rank)), Fraction(0))

    def norm(self, r: int) -> Fraction:
        if r not in self._norms:
            self._norms[r] = self.form(self.roots[r], self.roots[r])
        return self._norms[r]

    def is_positive(self, r: int) -> bool:
        # positive roots come first in the root list
        return r < len(self.roots) // 2

    def negative(self, r: int) -> int:
        return self.index[tuple(-c for c in self.roots[r])]

    @property
    def positive(self) -> list[int]:
        return list(range(len(self.roots) // 2))

    @property
    def size(self) -> int:
        return len(self.elements)

    def reflection(self, r: int) -> Perm:
        """s_r as a permutation of the root list."""
        if r in self._refl:
            return self._refl[r]
        b = self.roots[r]
        nb = self.norm(r)
        out = []
        for x in self.roots:
            c = 2 * self.form(x, b) / nb
            out.append(self.index[tuple(xi - int(c) * bi for xi, bi in zip(x, b))])
        self._refl[r] = tuple(out)
        return self._refl[r]

    def sign(self, w: Perm) -> int:
        """(-1)^length: parity of positive roots sent to negative ones."""
        half = len(self.roots) // 2
        flips = sum(1 for r in range(half) if w[r] >= half)
        return -1 if flips % 2 else 1

    def matrix(self, w: Perm) -> np.ndarray:
        """w on the span of the simple roots; column i holds w(a_i)."""
        m = L.zeros(self.rank, self.rank)
        for i, s in enumerate(self.simple):
            for j, c in enumerate(self.roots[w[s]]):
                m[j, i] = Fraction(c)
        return m

    def lowest_root(self) -> int:
        return min(range(len(self.roots)), key=lambda r: sum(self.roots[r]))

    def long_length(self) -> Fraction:
        return max(self.norm(r) for r in range(len(self.roots)))

    def short_length(self) -> Fraction:
        return min(self.norm(r) for r in range(len(self.roots)))


def compose(a: Perm, b: Perm) -> Perm:
    """a o b."""
    return tuple(a[i] for i in b)


def invert(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def _build(tag: str) -> RootSystem:
    cox = coxeter_data(tag)
    r = cox.rank
    gram = L.as_exact(cox.gram)
    simple = [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)]

    def form(x, y):
        return sum((gram[i, j] * x[i] * y[j] for i in range(r) for j in range(r)), Fraction(0))

    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for x in frontier:
            for b in simple:
                c = 2 * form(x, b) / form(b, b)
                y = tuple(xi - int(c) * bi for xi, bi in zip(x, b))
                if y not in roots:
                    roots.add(y)
                    nxt.append(y)
        frontier = nxt
    ordered = sorted(roots, key=lambda x: (sum(x) < 0, abs(sum(x)), [-abs(c) for c in x]))
    index = {x: i for i, x in enumerate(ordered)}
    rs = RootSystem(tag, r, gram, ordered, index, [index[s] for s in simple])
    gens = [rs.reflection(s) for s in rs.simple]
    ident = tuple(range(len(ordered)))
    seen = {ident: 0}
    elems = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                y = compose(w, g)
                if y not in seen:
                    seen[y] = len(elems)
                    elems.append(y)
                    nxt.append(y)
        frontier = nxt
    rs.elements = elems
    rs.element_index = seen
    return rs


@lru_cache(maxsize=None)
def build_g2() -> RootSystem:
    return _build("G2")


@lru_cache(maxsize=None)
def build_f4() -> RootSystem:
    return _build("F4")


def root_system(tag: str) -> RootSystem:
    tag = tag.upper()
    if tag == "G2":
        return build_g2()
    if tag == "F4":
        return build_f4()
    raise ValueError(f"no exceptional root system {tag!r} here")


# --------------------------------------------------------- conjugacy classes


@dataclass
class Classes:
    of: list[int]
    reps: list[int]
    sizes: list[int]

    def __len__(self) -> int:
        return len(self.reps)


@lru_cache(maxsize=None)
def conjugacy_classes(tag: str) -> Classes:
    rs = root_system(tag)
    gens = [rs.reflection(s) for s in rs.simple]
    of = [-1] * rs.size
    reps, sizes = [], []
    for i, w in enumerate(rs.elements):
        if of[i] >= 0:
            continue
        c = len(reps)
        of[i] = c
        stack = [w]
        count = 1
        while stack:
            x = stack.pop()
            for g in gens:
                y = compose(compose(g, x), g)
                j = rs.element_index[y]
                if of[j] < 0:
                    of[j] = c
                    count += 1
                    stack.append(y)
        reps.append(i)
        sizes.append(count)
    return Classes(of, reps, sizes)


# -------------------------------------------------------- character table


@dataclass
class Character:
    label: str
    values: tuple[int, ...]

    @property
    def degree(self) -> int:
        return self.values[0]


def _class_constants(rs: RootSystem, cl: Classes) -> np.ndarray:
    """c[i, j, k] = #{(a, b) in C_i x C_j : ab = z_k}."""
    k_n = len(cl)
    c = np.zeros((k_n, k_n, k_n), dtype=np.int64)
    inv = [rs.element_index[invert(w)] for w in rs.elements]
    for k, zi in enumerate(cl.reps):
        z = rs.elements[zi]
        for ai, a in enumerate(rs.elements):
            b = compose(rs.elements[inv[ai]], z)
            c[cl.of[ai], cl.of[rs.element_index[b]], k] += 1
    return c


def _central_characters(c: np.ndarray, seed: int = 1) -> list[list[Fraction]]:
    """Common eigenvectors of the class-multiplication matrices, normalized
    to 1 on the identity class. Float eigenvalues only propose candidates;
    every eigenspace is computed exactly."""
    k_n = c.shape[0]
    rng = random.Random(seed)
    for _ in range(20):
        coeffs = [rng.randint(-7, 7) for _ in range(k_n)]
        M = sum(coeffs[j] * c[:, j, :] for j in range(k_n))
        guesses = sorted({int(round(x.real)) for x in np.linalg.eigvals(M.astype(float))})
        Mx = L.as_exact(M.tolist())
        vecs = []
        for ev in guesses:
            ns = L.nullspace(Mx - ev * L.eye(k_n))
            if len(ns) != 1:
                break
            v = ns[0]
            vecs.append([x / v[0] for x in v])
        if len(vecs) == k_n:
            return vecs
    raise LabelError("could not separate the central characters")


def _isqrt_fraction(x: Fraction) -> int:
    r = math.isqrt(x.numerator // x.denominator) if x.denominator == 1 else None
    if r is None or r * r != x:
        raise LabelError(f"degree squared {x} is not a square integer")
    return r


def fake_degree_valuation(rs: RootSystem, cl: Classes, chi: Sequence[int]) -> int:
    """Least d with chi inside S^d of the reflection representation."""
    n_pos = len(rs.positive)
    series = []
    for rep in cl.reps:
        m = rs.matrix(rs.elements[rep])
        p, acc = [], L.eye(rs.rank)
        for _ in range(rs.rank):
            acc = acc.dot(m)
            p.append(L.trace(acc))
        e = [Fraction(1)]
        for k in range(1, rs.rank + 1):
            e.append(sum(((-1) ** (i - 1) * e[k - i] * p[i - 1] for i in range(1, k + 1)), Fraction(0)) / k)
        den = [(-1) ** k * e[k] for k in range(rs.rank + 1)]
        inv = [Fraction(0)] * (n_pos + 1)
        inv[0] = Fraction(1)
        for d in range(1, n_pos + 1):
            inv[d] = -sum((den[k] * inv[d - k] for k in range(1, min(d, rs.rank) + 1)), Fraction(0))
        series.append(inv)
    for d in range(n_pos + 1):
        tot = sum((cl.sizes[k] * chi[k] * series[k][d] for k in range(len(cl))), Fraction(0))
        if tot:
            return d
    raise LabelError("character missing from the coinvariants")


def _reflection_value(rs: RootSystem, cl: Classes, chi: Sequence[int], long: bool) -> int:
    target = rs.long_length() if long else rs.short_length()
    r = next(r for r in rs.simple if rs.norm(r) == target)
    return chi[cl.of[rs.element_index[rs.reflection(r)]]]


def _exterior_square_reflection(rs: RootSystem, cl: Classes) -> list[int]:
    out = []
    for rep in cl.reps:
        m = rs.matrix(rs.elements[rep])
        t1, t2 = L.trace(m), L.trace(m.dot(m))
        out.append(int((t1 * t1 - t2) / 2))
    return out


@lru_cache(maxsize=None)
def character_table(tag: str) -> tuple[Character, ...]:
    """Irreducible characters labelled phi_{a,b}: a the degree, b the fake
    degree valuation. Ties get primes: '' marks the member with the larger
    sign multiplicity on short reflections; for F4's phi_{6,6} pair, the
    exterior square of the reflection representation is ''."""
    rs = root_system(tag)
    cl = conjugacy_classes(tag)
    c = _class_constants(rs, cl)
    chars = []
    for w in _central_characters(c):
        norm = sum((w[k] * w[k] / cl.sizes[k] for k in range(len(cl))), Fraction(0))
        deg = _isqrt_fraction(Fraction(rs.size) / norm)
        vals = [deg * w[k] / cl.sizes[k] for k in range(len(cl))]
        if any(v.denominator != 1 for v in vals):
            raise LabelError("non-integral character value")
        chars.append(tuple(int(v) for v in vals))
    for a in chars:
        for b in chars:
            ip = Fraction(sum(cl.sizes[k] * a[k] * b[k] for k in range(len(cl))), rs.size)
            if ip != (1 if a == b else 0):
                raise LabelError("orthogonality fails")
    keyed: dict[tuple[int, int], list[tuple[int, ...]]] = {}
    for chi in chars:
        keyed.setdefault((chi[0], fake_degree_valuation(rs, cl, chi)), []).append(chi)
    ext2 = _exterior_square_reflection(rs, cl)
    out = []
    for (a, b), group in keyed.items():
        base = f"phi_{{{a},{b}}}"
        if len(group) == 1:
            out.append(Character(base, group[0]))
            continue
        if len(group) != 2:
            raise LabelError(f"{len(group)} characters share {base}")
        x, y = group
        dx = _reflection_value(rs, cl, x, False) - _reflection_value(rs, cl, x, True)
        dy = _reflection_value(rs, cl, y, False) - _reflection_value(rs, cl, y, True)
        if dx != dy:
            dbl, sgl = (x, y) if dx < dy else (y, x)
        elif list(x) == ext2 or list(y) == ext2:
            dbl, sgl = (x, y) if list(x) == ext2 else (y, x)
        else:
            raise LabelError(f"cannot tell the two {base} characters apart")
        out.append(Character(base + "'", sgl))
        out.append(Character(base + "''", dbl))
    order = {"G2": G2_ROWS, "F4": F4_ROWS}[rs.tag]
    labels = {ch.label for ch in out}
    if labels != set(order):
        raise LabelError(f"labels {sorted(labels ^ set(order))} disagree with the published table")
    return tuple(sorted(out, key=lambda ch: order.index(ch.label)))


def character(tag: str, label: str) -> Character:
    for ch in character_table(tag):
        if ch.label == label:
            return ch
    raise KeyError(label)


def value_on_word(tag: str, chi: Character, word: Sequence[int]) -> int:
    """chi at s_{w1} ... s_{wk} (1-based simple indices)."""
    rs = root_system(tag)
    w = tuple(range(len(rs.roots)))
    for a in word:
        w = compose(w, rs.reflection(rs.simple[a - 1]))
    return chi.values[conjugacy_classes(tag).of[rs.element_index[w]]]


# ------------------------------------------------------- closed subsystems


@dataclass(frozen=True)
class RootSubsystem:
    roots: frozenset[int]
    label: str
    kind: str
    rank: int

    def __str__(self) -> str:
        return self.label


def reflection_closure(rs: RootSystem, seed: Iterable[int]) -> frozenset[int]:
    refl = {}
    out = set()
    for r in seed:
        out.add(r)
        out.add(rs.negative(r))
    frontier = list(out)
    while frontier:
        nxt = []
        for a in list(out):
            if a not in refl:
                refl[a] = rs.reflection(a)
            for b in list(out):
                y = refl[a][b]
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(out)


def is_additively_closed(rs: RootSystem, psi: frozenset[int]) -> bool:
    for a in psi:
        for b in psi:
            s = tuple(x + y for x, y in zip(rs.roots[a], rs.roots[b]))
            if s in rs.index and rs.index[s] not in psi:
                return False
    return True


def subsystem_base(rs: RootSystem, psi: frozenset[int]) -> list[int]:
    pos = [r for r in psi if rs.is_positive(r)]
    pos_set = {rs.roots[r] for r in pos}
    base = []
    for r in pos:
        x = rs.roots[r]
        if not any(tuple(a - b for a, b in zip(x, rs.roots[q])) in pos_set for q in pos if q != r):
            base.append(r)
    return sorted(base)


def _component_label(rs: RootSystem, comp: list[int]) -> tuple[int, str]:
    """(sort group, text) for one connected component of a base."""
    n = len(comp)
    norms = [rs.norm(r) for r in comp]
    lo, hi = min(norms), max(norms)
    deg = {r: sum(1 for q in comp if q != r and rs.form(rs.roots[r], rs.roots[q]) != 0) for r in comp}
    if lo == hi:
        if n >= 4 and max(deg.values()) == 3:
            return 0, f"D_{n}"
        if lo < rs.long_length():
            ratio = rs.long_length() / lo
            return 1, f"A^{ratio}_{n}"
        return 2, f"A_{n}"
    ratio = hi / lo
    if ratio == 3:
        return 0, "G_2"
    if n == 2:
        return 0, "B_2"
    if n == 4 and norms.count(lo) == 2:
        return 0, "F_4"
    return 0, (f"B_{n}" if norms.count(lo) == 1 else f"C_{n}")


def subsystem_label(rs: RootSystem, psi: frozenset[int]) -> str:
    base = subsystem_base(rs, psi)
    if not base:
        return "0"
    comps, left = [], set(base)
    while left:
        stack = [left.pop()]
        comp = list(stack)
        while stack:
            r = stack.pop()
            for q in list(left):
                if rs.form(rs.roots[r], rs.roots[q]) != 0:
                    left.remove(q)
                    comp.append(q)
                    stack.append(q)
        comps.append(comp)
    items = sorted((_component_label(rs, c) for c in comps), key=lambda t: (t[0], -int(t[1].rsplit("_", 1)[1]), t[1]))
    parts, i = [], 0
    while i < len(items):
        j = i
        while j < len(items) and items[j] == items[i]:
            j += 1
        k = j - i
        parts.append((f"{k}" if k > 1 else "") + items[i][1])
        i = j
    return "+".join(parts)


def canonical(rs: RootSystem, psi: frozenset[int]) -> tuple[int, ...]:
    """Least sorted image of psi over W."""
    return min(tuple(sorted(w[r] for r in psi)) for w in rs.elements)


@lru_cache(maxsize=None)
def enumerate_closed_subsystems(tag: str) -> tuple[RootSubsystem, ...]:
    """Additively closed root subsystems up to W-conjugacy, flagged and
    ordered as in the published tables."""
    rs = root_system(tag)
    pos = rs.positive
    found: dict[frozenset[int], None] = {}
    for k in range(rs.rank + 1):
        for S in combinations(pos, k):
            psi = reflection_closure(rs, S)
            if psi not in found and is_additively_closed(rs, psi):
                found[psi] = None
    classes: dict[tuple[int, ...], frozenset[int]] = {}
    for psi in found:
        classes.setdefault(canonical(rs, psi), psi)
    parab = set()
    for k in range(rs.rank + 1):
        for J in combinations(rs.simple, k):
            parab.add(canonical(rs, reflection_closure(rs, J)))
    ext = rs.simple + [rs.lowest_root()]
    pseudo = set()
    for k in range(len(ext) + 1):
        for J in combinations(ext, k):
            psi = reflection_closure(rs, J)
            pseudo.add(canonical(rs, psi))
    subs = []
    for key, psi in classes.items():
        kind = PARABOLIC if key in parab else PSEUDO if key in pseudo else NEITHER
        subs.append(RootSubsystem(psi, subsystem_label(rs, psi), kind, len(subsystem_base(rs, psi))))
    labels = [s.label for s in subs]
    if len(set(labels)) != len(labels):
        raise LabelError("two subsystem classes share a label")
    order = {"G2": G2_COLUMNS, "F4": F4_COLUMNS}[rs.tag]
    if set(labels) != set(order):
        raise LabelError(f"subsystem labels {sorted(set(labels) ^ set(order))} disagree with the published table")
    return tuple(sorted(subs, key=lambda s: order.index(s.label)))


def all_closed_subsystems(tag: str) -> list[frozenset[int]]:
    """Every additively closed subsystem, conjugates included."""
    rs = root_system(tag)
    out = set()
    for sub in enumerate_closed_subsystems(tag):
        for w in rs.elements:
            out.add(frozenset(w[r] for r in sub.roots))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


# ----------------------------------------------------- sign multiplicities


def reflection_subgroup(rs: RootSystem, psi: Iterable[int]) -> list[int]:
    gens = [rs.reflection(r) for r in psi if rs.is_positive(r)]
    ident = tuple(range(len(rs.roots)))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                y = compose(w, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(rs.element_index[w] for w in seen)


def sign_multiplicity(tag: str, chi: Character, psi: Iterable[int]) -> int:
    """(1/|H|) sum_h det(h) chi(h) over H generated by the reflections of psi."""
    rs = root_system(tag)
    cl = conjugacy_classes(tag)
    H = reflection_subgroup(rs, psi)
    tot = sum(rs.sign(rs.elements[h]) * chi.values[cl.of[h]] for h in H)
    if tot % len(H):
        raise ArithmeticError("sign average is not integral")
    return tot // len(H)


def extended_sign_signature(tag: str, chi: Character) -> dict[str, int]:
    return {s.label: sign_multiplicity(tag, chi, s.roots) for s in enumerate_closed_subsystems(tag)}


def pseudo_sign_signature(tag: str, chi: Character) -> dict[str, int]:
    subs = [s for s in enumerate_closed_subsystems(tag) if s.kind != NEITHER]
    return {s.label: sign_multiplicity(tag, chi, s.roots) for s in subs}


def plain_sign_signature(tag: str, chi: Character) -> dict[str, int]:
    subs = [s for s in enumerate_closed_subsystems(tag) if s.kind == PARABOLIC]
    return {s.label: sign_multiplicity(tag, chi, s.roots) for s in subs}


def extended_table(tag: str) -> tuple[list[str], list[tuple[str, list[int]]]]:
    """Header labels and one row per irreducible."""
    subs = enumerate_closed_subsystems(tag)
    rows = []
    for chi in character_table(tag):
        sig = extended_sign_signature(tag, chi)
        rows.append((chi.label, [sig[s.label] for s in subs]))
    return [s.label for s in subs], rows


def extended_table_tsv(tag: str) -> str:
    header, rows = extended_table(tag)
    lines = ["irrep\t" + "\t".join(header)]
    lines += [label + "\t" + "\t".join(str(v) for v in vals) for label, vals in rows]
    return "\n".join(lines) + "\n"
