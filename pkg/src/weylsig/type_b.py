"""Type B_n (= C_n): irreducibles V_{lam,mu}, branching, sign signatures.

V_{lam,mu} is induced from B_i x B_{n-i} (i = |lam|) out of
V_lam (x) V_mu twisted by the Z_2^n character that is trivial on the first
i coordinates and the sign on the rest. With this convention V_{[n],()} is
trivial and V_{(),[1^n]} is the determinant.

A generalized parabolic S_{a_1} x ... x S_{a_k} x B_{b_1} x ... x B_{b_l}
is keyed by (a_parts, b_parts), each sorted descending.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb
from typing import Iterable, Mapping, Sequence

from .partitions import (
    Partition,
    bipartitions_of,
    conjugate,
    format_bipartition,
    format_composition,
    hook_dimension,
    lex_key,
    parse_bipartition,
    partitions_of,
    sort_desc,
)
from .tableaux import kostka, lr_coefficient, lr_product, skew_expansion
from .type_a import SignatureError

CAP = 12


@dataclass(frozen=True)
class ParabolicB:
    a_parts: Partition
    b_parts: Partition

    def __post_init__(self) -> None:
        object.__setattr__(self, "a_parts", sort_desc(self.a_parts))
        object.__setattr__(self, "b_parts", sort_desc(self.b_parts))

    @property
    def n(self) -> int:
        return sum(self.a_parts) + sum(self.b_parts)

    @property
    def generalized_only(self) -> bool:
        return len(self.b_parts) >= 2

    def text(self) -> str:
        return format_composition(self.a_parts) + "|" + format_composition(self.b_parts)

    def __str__(self) -> str:
        return self.text()


@dataclass(frozen=True)
class IrrepB:
    lam: Partition
    mu: Partition

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", tuple(x for x in self.lam if x))
        object.__setattr__(self, "mu", tuple(x for x in self.mu if x))

    @property
    def n(self) -> int:
        return sum(self.lam) + sum(self.mu)

    def dimension(self) -> int:
        return comb(self.n, sum(self.lam)) * hook_dimension(self.lam) * hook_dimension(self.mu)

    def text(self) -> str:
        return format_bipartition(self.lam, self.mu)

    def __str__(self) -> str:
        return self.text()


_PARABOLIC_B_RE = re.compile(r"^\s*(\([\d,\s]*\))\s*\|\s*(\([\d,\s]*\))\s*$")


def parse_parabolic_b(text: str) -> ParabolicB:
    from .partitions import parse_composition

    m = _PARABOLIC_B_RE.match(text)
    if not m:
        raise ValueError(f"not a type B parabolic: {text!r}")
    a, b = parse_composition(m.group(1)), parse_composition(m.group(2))
    if any(x <= 0 for x in a + b):
        raise ValueError(f"parabolic parts must be positive: {text!r}")
    return ParabolicB(a, b)


def parse_irrep_b(text: str) -> IrrepB:
    return IrrepB(*parse_bipartition(text))


def _as_irrep(v) -> IrrepB:
    if isinstance(v, IrrepB):
        return v
    lam, mu = v
    return IrrepB(tuple(lam), tuple(mu))


def _succ_key(lam: Sequence[int], mu: Sequence[int], width: int) -> tuple:
    return lex_key(conjugate(mu), width) + lex_key(conjugate(lam), width)


def irreps_b_in_order(n: int) -> list[IrrepB]:
    """All V_{lam,mu} of B_n, largest first in the order
    (lam, mu) > (nu, sigma) iff mu* > sigma*, or mu = sigma and lam* > nu*."""
    pairs = bipartitions_of(n)
    pairs.sort(key=lambda lm: _succ_key(lm[0], lm[1], n + 1), reverse=True)
    return [IrrepB(lam, mu) for lam, mu in pairs]


def enumerate_parabolics_b(n: int, generalized: bool = False, cap: int = CAP) -> list[ParabolicB]:
    """One representative per class, sorted by the same order applied to
    the label (a_parts, b_parts)."""
    if n > cap:
        raise ValueError(f"n={n} exceeds the type B cap {cap}")
    out = []
    for a, b in bipartitions_of(n):
        if not generalized and len(b) > 1:
            continue
        out.append(ParabolicB(a, b))
    out.sort(key=lambda p: _succ_key(p.a_parts, p.b_parts, n + 1), reverse=True)
    return out


def sign_mult_b(v, p: ParabolicB) -> int:
    """Multiplicity of the sign of ``p`` in V_{lam,mu}.

    Sum over alpha + beta = a_parts + b_parts (concatenated) with alpha
    vanishing on the B positions of K_{lam*,alpha} K_{mu*,beta}.
    """
    v = _as_irrep(v)
    if v.n != p.n:
        raise ValueError(f"rank mismatch: irrep of B_{v.n}, parabolic of B_{p.n}")
    lam_c, mu_c = conjugate(v.lam), conjugate(v.mu)
    parts = p.a_parts + p.b_parts
    k = len(p.a_parts)
    target = sum(v.lam)
    total = 0

    def rec(i: int, left: int, alpha: tuple[int, ...]) -> None:
        nonlocal total
        if i == k:
            if left:
                return
            full = alpha + (0,) * (len(parts) - k)
            beta = tuple(x - y for x, y in zip(parts, full))
            ka = kostka(lam_c, alpha)
            if ka:
                total += ka * kostka(mu_c, beta)
            return
        for a in range(min(parts[i], left), -1, -1):
            rec(i + 1, left - a, alpha + (a,))

    rec(0, target, ())
    return total


@dataclass(frozen=True)
class SignSignatureB:
    rank: int
    mult: dict

    def __getitem__(self, p: ParabolicB) -> int:
        return self.mult.get(p, 0)

    def support(self) -> set[ParabolicB]:
        return {p for p, v in self.mult.items() if v > 0}


def sign_signature_b(v, generalized: bool = False) -> SignSignatureB:
    v = _as_irrep(v)
    return SignSignatureB(v.n, {p: sign_mult_b(v, p) for p in enumerate_parabolics_b(v.n, generalized)})


def branch_b_to_bb(v, k: int) -> dict[tuple[IrrepB, IrrepB], int]:
    """Restriction of V_{lam,mu} to B_k x B_{n-k}."""
    v = _as_irrep(v)
    if not 0 <= k <= v.n:
        raise ValueError(f"k={k} out of range for B_{v.n}")
    out: dict[tuple[IrrepB, IrrepB], int] = {}
    for i in range(k + 1):
        left = skew_expansion(v.lam, i)
        right = skew_expansion(v.mu, k - i)
        for (nu, xi), c1 in left.items():
            for (sigma, zeta), c2 in right.items():
                key = (IrrepB(nu, sigma), IrrepB(xi, zeta))
                out[key] = out.get(key, 0) + c1 * c2
    return out


def branch_b_to_sn(v) -> dict[Partition, int]:
    """Restriction of V_{lam,mu} to S_n."""
    v = _as_irrep(v)
    return lr_product(v.lam, v.mu)


def branch_b_generalized(v, p: ParabolicB, target: Sequence) -> int:
    """Multiplicity of an irreducible of ``p`` in V_{lam,mu}.

    ``target`` lists one label per factor in the order a_parts then
    b_parts: a partition for each S factor, a pair (or IrrepB) for each B
    factor. Evaluated by peeling off one factor at a time with the
    B_m x B_{n-m} rule, then S_m-restriction for the S factors.
    """
    v = _as_irrep(v)
    sizes = list(p.a_parts) + list(p.b_parts)
    kinds = ["S"] * len(p.a_parts) + ["B"] * len(p.b_parts)
    if len(target) != len(sizes):
        raise ValueError("one target label per factor is required")
    labels = []
    for kind, m, t in zip(kinds, sizes, target):
        if kind == "S":
            t = tuple(t)
            if sum(t) != m:
                raise ValueError(f"S_{m} factor label {t} has the wrong size")
            labels.append(t)
        else:
            t = _as_irrep(t)
            if t.n != m:
                raise ValueError(f"B_{m} factor label {t} has the wrong size")
            labels.append(t)

    memo: dict = {}

    def rec(i: int, lam: Partition, mu: Partition) -> int:
        if i == len(sizes):
            return 1 if not lam and not mu else 0
        key = (i, lam, mu)
        if key in memo:
            return memo[key]
        m = sizes[i]
        total = 0
        for j in range(m + 1):
            for (nu, xi), c1 in skew_expansion(lam, j).items():
                for (sigma, zeta), c2 in skew_expansion(mu, m - j).items():
                    if kinds[i] == "B":
                        t = labels[i]
                        if (nu, sigma) != (t.lam, t.mu):
                            continue
                        w = 1
                    else:
                        w = lr_coefficient(labels[i], nu, sigma)
                        if not w:
                            continue
                    total += w * c1 * c2 * rec(i + 1, xi, zeta)
        memo[key] = total
        return total

    return rec(0, v.lam, v.mu)


def sign_target(p: ParabolicB) -> list:
    """Factor labels of the sign character of ``p``."""
    return [(1,) * a for a in p.a_parts] + [IrrepB((), (1,) * b) for b in p.b_parts]


def _lookup(sig, p: ParabolicB) -> int:
    if isinstance(sig, SignSignatureB):
        return sig.mult.get(p, 0)
    return sig.get(p, 0)


def _normalize_sig(sig) -> dict[ParabolicB, int]:
    mult = sig.mult if isinstance(sig, SignSignatureB) else sig
    out = {}
    for k, v in mult.items():
        p = k if isinstance(k, ParabolicB) else parse_parabolic_b(k)
        out[p] = v
    return out


def _contains_multiset(big: Sequence[int], small: Sequence[int]) -> bool:
    pool = list(big)
    for x in small:
        if x in pool:
            pool.remove(x)
        else:
            return False
    return True


def recover_b(sig) -> IrrepB:
    """The irreducible V_{lam,mu} whose (non-generalized) signature is ``sig``.

    First the largest a with P_{a,()} in the support gives lam* + mu*.
    Then, one position at a time, holding the earlier a-parts at those
    values, the largest B-part d with P_{(...),(d)} in the support gives
    the next entry of mu*. Missing keys count as zero.
    """
    mult = _normalize_sig(sig)
    support = [p for p, v in mult.items() if v > 0]
    if not support:
        raise SignatureError("empty sign signature")
    n = support[0].n
    pure = [p.a_parts for p in support if not p.b_parts]
    if not pure:
        raise SignatureError("no parabolic of pure S type carries the sign")
    width = n + 1
    omega = max(pure, key=lambda a: lex_key(a, width))
    mixed = [p for p in support if len(p.b_parts) == 1]
    y = []
    for i in range(len(omega)):
        prefix = omega[:i]
        best = 0
        for p in mixed:
            if _contains_multiset(p.a_parts, prefix):
                best = max(best, p.b_parts[0])
        y.append(best)
    mu_c = tuple(x for x in y if x)
    lam_c = tuple(w - x for w, x in zip(omega, y))
    if any(x < 0 for x in lam_c) or list(mu_c) != sorted(mu_c, reverse=True) or list(
        x for x in lam_c if x
    ) != sorted((x for x in lam_c if x), reverse=True):
        raise SignatureError("signature does not come from an irreducible")
    candidate = IrrepB(conjugate(lam_c), conjugate(mu_c))
    expected = sign_signature_b(candidate)
    for p, v in expected.mult.items():
        if mult.get(p, 0) != v:
            raise SignatureError(f"no irreducible matches; closest label {candidate} differs at {p}")
    return candidate


def signature_matrix_b(n: int) -> tuple[list[IrrepB], list[list[int]]]:
    """Rows V_{lam_j,mu_j}, columns P_{lam_i*,mu_i*}, both in irrep order."""
    order = irreps_b_in_order(n)
    cols = [ParabolicB(conjugate(v.lam), conjugate(v.mu)) for v in order]
    return order, [[sign_mult_b(v, p) for p in cols] for v in order]


def decompose_b(vec, n: int | None = None) -> dict[IrrepB, int]:
    """Irreducible multiplicities from a generalized signature vector."""
    mult = _normalize_sig(vec)
    if n is None:
        sizes = {p.n for p in mult}
        if len(sizes) != 1:
            raise SignatureError("cannot infer rank from signature keys")
        n = sizes.pop()
    allp = enumerate_parabolics_b(n, generalized=True)
    residual = {p: mult.get(p, 0) for p in allp}
    extra = set(mult) - set(residual)
    if extra:
        raise SignatureError(f"keys of the wrong rank: {sorted(map(str, extra))}")
    out: dict[IrrepB, int] = {}
    for v in irreps_b_in_order(n):
        m = residual[ParabolicB(conjugate(v.lam), conjugate(v.mu))]
        if m < 0:
            raise SignatureError("signature outside the non-negative cone")
        if m:
            out[v] = m
            for p in allp:
                residual[p] -= m * sign_mult_b(v, p)
    if any(residual.values()):
        raise SignatureError("signature is not a combination of irreducible signatures")
    return out


def wigner_mackey_labels(n: int, cap: int = CAP) -> list[tuple[IrrepB, int]]:
    """Irreducible labels of B_n with dim V_{lam,mu} = C(n,|lam|) f^lam f^mu."""
    if n > cap:
        raise ValueError(f"n={n} exceeds the type B cap {cap}")
    return [(v, v.dimension()) for v in irreps_b_in_order(n)]


def combine(signatures: Iterable[tuple[int, SignSignatureB]]) -> dict[ParabolicB, int]:
    """Non-negative integer combination of signatures."""
    out: dict[ParabolicB, int] = {}
    for coeff, sig in signatures:
        for p, v in sig.mult.items():
            out[p] = out.get(p, 0) + coeff * v
    return out


def table_rows_b(n: int) -> list[IrrepB]:
    """Row order of the printed B_n table: by |lam|, then lam* and mu*
    decreasing."""
    pairs = bipartitions_of(n)
    w = n + 1
    pairs.sort(
        key=lambda lm: (
            sum(lm[0]),
            tuple(-x for x in lex_key(conjugate(lm[0]), w)),
            tuple(-x for x in lex_key(conjugate(lm[1]), w)),
        )
    )
    return [IrrepB(lam, mu) for lam, mu in pairs]
