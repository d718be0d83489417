"""Brute-force reference: explicit groups, induced modules, sign averages.

Groups are enumerated as arrays of signed permutations (see ``_kernels``).
Modules come in two flavours with a common interface:

* ``CharacterModule``: exact integer characters from the induced-character
  formula, with S_n characters by Murnaghan-Nakayama. Fast enough for D_6.
* ``ExplicitModule``: exact rational matrices (Young seminormal form, then
  block matrices of the induced module). Used at small rank to validate
  relations and to confirm the character formulas.

The multiplicity of the sign of H in a module is
(1/|H|) sum_h det(h) chi(h), asserted integral.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Sequence

import numpy as np

from . import _kernels as K
from .partitions import Partition, hook_dimension, partitions_of
from .type_b import IrrepB, ParabolicB
from .type_d import BAR, MINUS, PLUS, IrrepD, ParabolicD

GROUP_CAP = 10**6
SN_EXPLICIT_CAP = 6
BN_EXPLICIT_CAP = 4
DN_EXPLICIT_CAP = 6
DN_SPLIT_EXPLICIT_CAP = 4


class OracleError(RuntimeError):
    pass


# ------------------------------------------------------------ signed perms


def identity(n: int) -> np.ndarray:
    return np.arange(1, n + 1, dtype=np.int64)


def transposition(n: int, i: int) -> np.ndarray:
    """t_{i+1}: swap coordinates i and i+1 (0-based)."""
    w = identity(n)
    w[i], w[i + 1] = i + 2, i + 1
    return w


def sign_flip(n: int, i: int) -> np.ndarray:
    w = identity(n)
    w[i] = -w[i]
    return w


def d_last(n: int) -> np.ndarray:
    """t_n of D_n: e_{n-1} -> -e_n, e_n -> -e_{n-1}."""
    w = identity(n)
    w[n - 2], w[n - 1] = -n, -(n - 1)
    return w


def simple_reflections(tag: str, n: int) -> list[np.ndarray]:
    gens = [transposition(n, i) for i in range(n - 1)]
    if tag == "A":
        return gens
    if tag == "B":
        return gens + [sign_flip(n, n - 1)]
    if tag == "D":
        if n < 2:
            return gens
        return gens + [d_last(n)]
    raise ValueError(f"unknown type {tag!r}")


def perm_of(w: Sequence[int]) -> list[int]:
    return [abs(int(x)) - 1 for x in w]


def signs_of(w: Sequence[int]) -> list[int]:
    return [1 if x > 0 else -1 for x in w]


def compose1(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return K.compose(a, b)[0]


def inverse1(w: np.ndarray) -> np.ndarray:
    return K.inverse(w)[0]


def cycle_type(perm: Sequence[int]) -> Partition:
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, c = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            c += 1
        out.append(c)
    return tuple(sorted(out, reverse=True))


# ---------------------------------------------------------------- groups


def closure(gens: Sequence[np.ndarray], n: int, cap: int = GROUP_CAP) -> np.ndarray:
    """All products of ``gens``, as rows sorted by key."""
    if not len(gens):
        return identity(n)[None, :]
    G = np.stack([np.asarray(g, dtype=np.int64) for g in gens])
    frontier = identity(n)[None, :]
    keys = K.encode(frontier)
    known = [frontier]
    while frontier.shape[0]:
        cand = np.concatenate([K.compose(frontier, g[None, :]) for g in G])
        ck = K.encode(cand)
        ck, first = np.unique(ck, return_index=True)
        fresh = ~np.isin(ck, keys)
        frontier = cand[first[fresh]]
        keys = np.concatenate([keys, ck[fresh]])
        known.append(frontier)
        if keys.shape[0] > cap:
            raise OracleError(f"group exceeds the enumeration cap {cap}")
    elems = np.concatenate(known)
    order = np.argsort(K.encode(elems))
    return elems[order]


class FiniteGroup:
    """A reflection group as an explicit element array with class labels."""

    def __init__(self, tag: str, n: int, gens: Sequence[np.ndarray]) -> None:
        self.tag = tag
        self.n = n
        self.gens = [np.asarray(g, dtype=np.int64) for g in gens]
        self.elements = closure(self.gens, n)
        self.keys = K.encode(self.elements)
        self.class_of = self._classes()
        ids, first = np.unique(self.class_of, return_index=True)
        self.class_reps = self.elements[first]
        self.class_sizes = np.bincount(self.class_of)

    @property
    def order(self) -> int:
        return int(self.elements.shape[0])

    @property
    def num_classes(self) -> int:
        return int(self.class_reps.shape[0])

    def index(self, w: np.ndarray) -> np.ndarray:
        k = K.encode(w)
        idx = np.searchsorted(self.keys, k)
        if np.any(idx >= len(self.keys)) or np.any(self.keys[np.minimum(idx, len(self.keys) - 1)] != k):
            raise OracleError("element not in group")
        return idx

    def classes_of(self, w: np.ndarray) -> np.ndarray:
        return self.class_of[self.index(w)]

    def _classes(self) -> np.ndarray:
        N = self.order
        perms = [self.index(K.conjugate(self.elements, g[None, :])) for g in self.gens]
        labels = np.arange(N)
        while True:
            new = labels.copy()
            for p in perms:
                np.minimum(new, labels[p], out=new)
                np.minimum.at(new, p, labels)
            new = new[new]
            if np.array_equal(new, labels):
                break
            labels = new
        _, dense = np.unique(labels, return_inverse=True)
        return dense


@lru_cache(maxsize=None)
def enumerate_group(tag: str, n: int) -> FiniteGroup:
    return FiniteGroup(tag, n, simple_reflections(tag, n))


# ----------------------------------------------------- S_n characters


@lru_cache(maxsize=None)
def mn_character(lam: Partition, rho: Partition) -> int:
    """chi_lam at cycle type rho, by removing rim hooks of length rho[0]."""
    lam = tuple(x for x in lam if x)
    if sum(lam) != sum(rho):
        raise ValueError("size mismatch")
    if not rho:
        return 1
    r, rest = rho[0], rho[1:]
    L = len(lam)
    beta = [lam[i] + (L - 1 - i) for i in range(L)]
    bset = set(beta)
    total = 0
    for b in beta:
        nb = b - r
        if nb < 0 or nb in bset:
            continue
        height = sum(1 for x in beta if nb < x < b)
        newbeta = sorted((x if x != b else nb) for x in beta)[::-1]
        mu = tuple(newbeta[i] - (L - 1 - i) for i in range(L))
        total += (-1) ** height * mn_character(tuple(x for x in mu if x), rest)
    return total


def sn_character(lam: Partition, perm: Sequence[int]) -> int:
    return mn_character(tuple(lam), cycle_type(perm))


# ------------------------------------------------------ induced characters


def _block_perm(perm: Sequence[int], lo: int, hi: int) -> list[int]:
    return [perm[j] - lo for j in range(lo, hi)]


def _subset_rep(n: int, S: Sequence[int]) -> np.ndarray:
    """Permutation sending 0..|S|-1 onto S and the rest onto the complement."""
    comp = [j for j in range(n) if j not in S]
    return np.array([x + 1 for x in list(S) + comp], dtype=np.int64)


class CharacterModule:
    """A module known through an exact character function on group rows."""

    def __init__(self, group: FiniteGroup, label, chi: Callable[[np.ndarray], int], dim: int) -> None:
        self.group = group
        self.label = label
        self._chi = chi
        self.dimension = dim
        self._by_class: np.ndarray | None = None

    def class_values(self) -> np.ndarray:
        if self._by_class is None:
            self._by_class = np.array([self._chi(w) for w in self.group.class_reps], dtype=np.int64)
        return self._by_class

    def character(self, w: np.ndarray) -> np.ndarray:
        return self.class_values()[self.group.classes_of(np.atleast_2d(w))]


def _induced_chi(n: int, reps: list[np.ndarray], in_h: Callable, chi_h: Callable) -> Callable:
    rep_arr = np.stack(reps)
    rep_inv = K.inverse(rep_arr)

    def chi(g: np.ndarray) -> int:
        hs = K.compose(K.compose(rep_inv, g[None, :]), rep_arr)
        total = 0
        for h in hs:
            if in_h(h):
                total += chi_h(h)
        return total

    return chi


def sn_module(lam: Partition) -> CharacterModule:
    n = sum(lam)
    G = enumerate_group("A", n)
    return CharacterModule(G, tuple(lam), lambda w: sn_character(lam, perm_of(w)), hook_dimension(lam))


def _pair_chi(lam: Partition, mu: Partition):
    i = sum(lam)

    def in_h(h) -> bool:
        return all(abs(h[j]) <= i for j in range(i))

    def chi_h(h) -> int:
        p = perm_of(h)
        z = 1
        for j in range(i, len(h)):
            if h[j] < 0:
                z = -z
        return z * sn_character(lam, p[:i]) * sn_character(mu, _block_perm(p, i, len(p)))

    return in_h, chi_h


def bn_module(lam: Partition, mu: Partition) -> CharacterModule:
    n = sum(lam) + sum(mu)
    G = enumerate_group("B", n)
    reps = [_subset_rep(n, S) for S in combinations(range(n), sum(lam))]
    in_h, chi_h = _pair_chi(lam, mu)
    return CharacterModule(G, IrrepB(lam, mu), _induced_chi(n, reps, in_h, chi_h), IrrepB(lam, mu).dimension())


def dn_module(v: IrrepD) -> CharacterModule:
    n = v.n
    G = enumerate_group("D", n)
    if not v.sign:
        lam, mu = v.lam, v.mu
        reps = [_subset_rep(n, S) for S in combinations(range(n), sum(lam))]
        in_h, chi_h = _pair_chi(lam, mu)
        return CharacterModule(G, v, _induced_chi(n, reps, in_h, chi_h), IrrepB(lam, mu).dimension())
    q = n // 2
    lam = v.lam
    eps = 1 if v.sign == "+" else -1
    reps = [_subset_rep(n, (0,) + S) for S in combinations(range(1, n), q - 1)]

    def in_h(h) -> bool:
        first = [abs(h[j]) <= q for j in range(q)]
        return all(first) or not any(first)

    def chi_h(h) -> int:
        p = perm_of(h)
        z = 1
        for j in range(q, n):
            if h[j] < 0:
                z = -z
        if p[0] < q:
            return z * sn_character(lam, p[:q]) * sn_character(lam, _block_perm(p, q, n))
        # h = sigma (P1, P2) D with sigma the block swap; trace is chi(P1 P2)
        p1 = [p[j] - q for j in range(q)]
        p2 = [p[j + q] for j in range(q)]
        return eps * z * sn_character(lam, [p1[p2[y]] for y in range(q)])

    return CharacterModule(G, v, _induced_chi(n, reps, in_h, chi_h), v.dimension())


# --------------------------------------------------------- explicit matrices


def _eye(d: int) -> np.ndarray:
    m = np.empty((d, d), dtype=object)
    m.fill(Fraction(0))
    for i in range(d):
        m[i, i] = Fraction(1)
    return m


def _zeros(r: int, c: int) -> np.ndarray:
    m = np.empty((r, c), dtype=object)
    m.fill(Fraction(0))
    return m


def standard_tableaux(lam: Partition) -> list[tuple[tuple[int, int], ...]]:
    """SYT of shape lam as tuples pos[letter] = (row, col)."""
    n = sum(lam)
    out = []

    def rec(filled: list[int], pos: list[tuple[int, int]]) -> None:
        if len(pos) == n:
            out.append(tuple(pos))
            return
        for r in range(len(lam)):
            c = filled[r]
            if c < lam[r] and (r == 0 or filled[r - 1] > c):
                filled[r] += 1
                pos.append((r, c))
                rec(filled, pos)
                pos.pop()
                filled[r] -= 1

    rec([0] * len(lam), [])
    return out


@lru_cache(maxsize=None)
def seminormal_generators(lam: Partition) -> tuple[np.ndarray, ...]:
    """Young seminormal matrices of t_1..t_{n-1}, columns are images."""
    lam = tuple(lam)
    tabs = standard_tableaux(lam)
    index = {t: k for k, t in enumerate(tabs)}
    n = sum(lam)
    d = len(tabs)
    mats = []
    for i in range(n - 1):
        m = _zeros(d, d)
        for k, t in enumerate(tabs):
            (r1, c1), (r2, c2) = t[i], t[i + 1]
            if r1 == r2:
                m[k, k] = Fraction(1)
            elif c1 == c2:
                m[k, k] = Fraction(-1)
            else:
                r = (c2 - r2) - (c1 - r1)
                m[k, k] = Fraction(1, r)
                swapped = list(t)
                swapped[i], swapped[i + 1] = t[i + 1], t[i]
                other = index[tuple(swapped)]
                m[other, k] = Fraction(1) if r2 > r1 else 1 - Fraction(1, r * r)
        mats.append(m)
    return tuple(mats)


def word_of(perm: Sequence[int]) -> list[int]:
    """Indices i with perm = t_{i_1} t_{i_2} ... (0-based adjacent swaps)."""
    p = list(perm)
    word = []
    changed = True
    while changed:
        changed = False
        for i in range(len(p) - 1):
            if p[i] > p[i + 1]:
                # p = p' t_i, so record t_i on the right
                p[i], p[i + 1] = p[i + 1], p[i]
                word.append(i)
                changed = True
    return word[::-1]


def sn_matrix(lam: Partition, perm: Sequence[int]) -> np.ndarray:
    gens = seminormal_generators(tuple(lam))
    m = _eye(hook_dimension(lam))
    for i in word_of(perm):
        m = m.dot(gens[i])
    return m


def _kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(a, b)


def _swap(d: int) -> np.ndarray:
    s = _zeros(d * d, d * d)
    for a in range(d):
        for b in range(d):
            s[b * d + a, a * d + b] = Fraction(1)
    return s


class ExplicitModule:
    """A module given by exact rational matrices for every group element."""

    def __init__(self, tag: str, n: int, label, dim: int, matrix: Callable[[np.ndarray], np.ndarray]) -> None:
        self.tag = tag
        self.n = n
        self.label = label
        self.dimension = dim
        self._matrix = matrix
        self.group = enumerate_group(tag, n)
        self.matrices = {f"t{j + 1}": matrix(g) for j, g in enumerate(self.group.gens)}

    def matrix(self, w: np.ndarray) -> np.ndarray:
        return self._matrix(np.asarray(w, dtype=np.int64))

    def trace(self, w: np.ndarray) -> int:
        t = sum(self.matrix(w).diagonal(), Fraction(0))
        if t.denominator != 1:
            raise OracleError("non-integral trace")
        return int(t)

    def character(self, w: np.ndarray) -> np.ndarray:
        return np.array([self.trace(x) for x in np.atleast_2d(w)], dtype=np.int64)

    def validate(self) -> bool:
        """Check rho(a b) = rho(a) rho(b) over generator pairs and that each
        generator squares to 1."""
        eye = _eye(self.dimension)
        gens = self.group.gens
        for a in gens:
            ma = self.matrix(a)
            if not np.array_equal(ma.dot(ma), eye):
                return False
            for b in gens:
                if not np.array_equal(self.matrix(compose1(a, b)), ma.dot(self.matrix(b))):
                    return False
        return True


def _induced_matrix(n: int, reps: list[np.ndarray], locate: Callable, rho_h: Callable, hdim: int):
    rep_arr = np.stack(reps)
    rep_inv = K.inverse(rep_arr)

    def matrix(g: np.ndarray) -> np.ndarray:
        m = _zeros(hdim * len(reps), hdim * len(reps))
        images = K.compose(g[None, :], rep_arr)
        for j, img in enumerate(images):
            k = locate(img)
            h = compose1(rep_inv[k], img)
            m[k * hdim:(k + 1) * hdim, j * hdim:(j + 1) * hdim] = rho_h(h)
        return m

    return matrix


def build_sn_irrep(lam: Partition) -> ExplicitModule:
    lam = tuple(lam)
    n = sum(lam)
    if n > SN_EXPLICIT_CAP:
        raise OracleError(f"S_n explicit cap is {SN_EXPLICIT_CAP}")
    return ExplicitModule("A", n, lam, hook_dimension(lam), lambda w: sn_matrix(lam, perm_of(w)))


def _pair_rho(lam: Partition, mu: Partition, i: int, n: int):
    def rho_h(h):
        p = perm_of(h)
        z = 1
        for j in range(i, n):
            if h[j] < 0:
                z = -z
        m = _kron(sn_matrix(lam, p[:i]), sn_matrix(mu, _block_perm(p, i, n)))
        return m if z == 1 else -m

    return rho_h


def _subset_locator(n: int, subsets: list[tuple[int, ...]], i: int, complement_ok: bool = False):
    table = {frozenset(S): k for k, S in enumerate(subsets)}

    def locate(img) -> int:
        T = frozenset(abs(int(x)) - 1 for x in img[:i])
        if T in table:
            return table[T]
        if complement_ok:
            return table[frozenset(range(n)) - T]
        raise OracleError("coset lookup failed")

    return locate


def build_bn_irrep(lam: Partition, mu: Partition) -> ExplicitModule:
    lam, mu = tuple(lam), tuple(mu)
    n, i = sum(lam) + sum(mu), sum(lam)
    if n > BN_EXPLICIT_CAP:
        raise OracleError(f"B_n explicit cap is {BN_EXPLICIT_CAP}")
    subsets = list(combinations(range(n), i))
    reps = [_subset_rep(n, S) for S in subsets]
    hdim = hook_dimension(lam) * hook_dimension(mu)
    matrix = _induced_matrix(n, reps, _subset_locator(n, subsets, i), _pair_rho(lam, mu, i, n), hdim)
    return ExplicitModule("B", n, IrrepB(lam, mu), IrrepB(lam, mu).dimension(), matrix)


def build_dn_irrep(v: IrrepD) -> ExplicitModule:
    n = v.n
    if not v.sign:
        if n > DN_EXPLICIT_CAP:
            raise OracleError(f"D_n explicit cap is {DN_EXPLICIT_CAP}")
        lam, mu = v.lam, v.mu
        i = sum(lam)
        subsets = list(combinations(range(n), i))
        reps = [_subset_rep(n, S) for S in subsets]
        hdim = hook_dimension(lam) * hook_dimension(mu)
        matrix = _induced_matrix(n, reps, _subset_locator(n, subsets, i), _pair_rho(lam, mu, i, n), hdim)
        return ExplicitModule("D", n, v, v.dimension(), matrix)
    if n > DN_SPLIT_EXPLICIT_CAP:
        raise OracleError(f"D_n split explicit cap is {DN_SPLIT_EXPLICIT_CAP}")
    q, lam = n // 2, v.lam
    eps = 1 if v.sign == "+" else -1
    subsets = [(0,) + S for S in combinations(range(1, n), q - 1)]
    reps = [_subset_rep(n, S) for S in subsets]
    f = hook_dimension(lam)
    swap = _swap(f)

    def rho_h(h):
        p = perm_of(h)
        z = 1
        for j in range(q, n):
            if h[j] < 0:
                z = -z
        if p[0] < q:
            m = _kron(sn_matrix(lam, p[:q]), sn_matrix(lam, _block_perm(p, q, n)))
        else:
            p1 = [p[j] - q for j in range(q)]
            p2 = [p[j + q] for j in range(q)]
            m = swap.dot(_kron(sn_matrix(lam, p1), sn_matrix(lam, p2)))
            if eps < 0:
                m = -m
        return m if z == 1 else -m

    matrix = _induced_matrix(n, reps, _subset_locator(n, subsets, q, complement_ok=True), rho_h, f * f)
    return ExplicitModule("D", n, v, v.dimension(), matrix)


# ----------------------------------------------------------- sign averages


def parabolic_gens_a(parts: Sequence[int], n: int | None = None) -> list[np.ndarray]:
    n = sum(parts) if n is None else n
    gens, start = [], 0
    for p in parts:
        gens += [transposition(n, start + j) for j in range(p - 1)]
        start += p
    return gens


def parabolic_gens_b(p: ParabolicB) -> list[np.ndarray]:
    n = p.n
    gens = parabolic_gens_a(p.a_parts, n)
    start = sum(p.a_parts)
    for b in p.b_parts:
        gens += [transposition(n, start + j) for j in range(b - 1)]
        gens.append(sign_flip(n, start + b - 1))
        start += b
    return gens


def parabolic_gens_d(p: ParabolicD) -> list[np.ndarray]:
    n = p.n
    if p.kind == BAR:
        gens = parabolic_gens_a(p.a_parts, n)
        start = n - p.d_part
        gens += [transposition(n, start + j) for j in range(p.d_part - 1)]
        gens.append(d_last(n))
        return gens
    gens = parabolic_gens_a(p.a_parts, n)
    if p.kind == MINUS:
        last = transposition(n, n - 2)
        gens = [g for g in gens if not np.array_equal(g, last)] + [d_last(n)]
    return gens


def oracle_sign_mult(module, gens: Sequence[np.ndarray]) -> int:
    """(1/|H|) sum over H = <gens> of det(h) chi(h)."""
    n = module.group.n if hasattr(module, "group") else module.n
    H = closure(list(gens), n)
    chi = module.character(H)
    total = K.signed_sum(K.det(H), chi)
    if total % H.shape[0]:
        raise OracleError(f"non-integral sign average {total}/{H.shape[0]}")
    return total // H.shape[0]


def inner_product(group: FiniteGroup, chi1: np.ndarray, chi2: np.ndarray) -> Fraction:
    """<chi1, chi2> from class values."""
    s = int(np.sum(group.class_sizes * chi1 * chi2))
    return Fraction(s, group.order)


def restrict_values(module, group: FiniteGroup) -> np.ndarray:
    """Class values of ``module`` restricted to a subgroup ``group`` of its group."""
    return module.character(group.class_reps)


def conjugated_character(module, s: np.ndarray) -> np.ndarray:
    """Class values of the module twisted by g -> s g s^{-1}."""
    G = module.group
    reps = G.class_reps
    return module.character(K.conjugate(reps, K.inverse(s[None, :])))


# ------------------------------------------------------- oracle branching


def _block_gens(tag: str, n: int, start: int, size: int) -> list[np.ndarray]:
    gens = [transposition(n, start + j) for j in range(size - 1)]
    if tag == "B" and size:
        gens.append(sign_flip(n, start + size - 1))
    if tag == "D" and size >= 2:
        w = identity(n)
        a, b = start + size - 2, start + size - 1
        w[a], w[b] = -(b + 1), -(a + 1)
        gens.append(w)
    return gens


def _split_rows(H: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    left = H[:, :k]
    right = np.sign(H[:, k:]) * (np.abs(H[:, k:]) - k)
    return left, right


def _factor_values(tag: str, label, rows: np.ndarray) -> np.ndarray:
    if rows.shape[1] == 0:
        return np.ones(rows.shape[0], dtype=np.int64)
    if tag == "B":
        return bn_module(label.lam, label.mu).character(rows)
    if rows.shape[1] == 1:
        return np.ones(rows.shape[0], dtype=np.int64)
    return dn_module(label).character(rows)


def _factor_labels(tag: str, m: int) -> list:
    from .partitions import bipartitions_of
    from .type_d import irreps_d

    if tag == "B":
        return [IrrepB(l, u) for l, u in bipartitions_of(m)]
    if m == 0:
        return [IrrepD((), ())]
    if m == 1:
        return [IrrepD((1,), ())]
    return irreps_d(m)


def oracle_branch(module, k: int) -> dict:
    """Restriction of a B_n or D_n module to the block subgroup of rank
    k x (n-k), by character inner products."""
    tag, n = module.group.tag, module.group.n
    H = closure(_block_gens(tag, n, 0, k) + _block_gens(tag, n, k, n - k), n)
    chi = module.character(H)
    left, right = _split_rows(H, k)
    out = {}
    for x in _factor_labels(tag, k):
        cx = _factor_values(tag, x, left)
        for y in _factor_labels(tag, n - k):
            cy = _factor_values(tag, y, right)
            s = int(np.dot(chi, cx * cy))
            if s % H.shape[0]:
                raise OracleError("non-integral branching multiplicity")
            if s:
                out[(x, y)] = s // H.shape[0]
    return out
