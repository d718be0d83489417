"""Type D_n: irreducibles V_{{lam,mu}} and V^{+-}_{{lam,lam}}, parabolics,
sign multiplicities, branching and recovery.

D_n sits in B_n as the signed permutations with an even number of sign
changes; simple reflections t_1..t_{n-1} are adjacent transpositions and
t_n swaps the last two coordinates while negating both. V_{{lam,mu}} is the
restriction of V_{lam,mu}; for lam = mu that restriction splits as
V^+ + V^-, where V^+ is induced from the module on which the block swap
acts by +SWAP.

Three parabolic kinds, after t_{n-1}/t_n:
    Plus  S_{p_1} x ... x S_{p_k}              (uses t_{n-1})
    Minus S_{p_1} x ... x S_{p_k}, p_k >= 2    (t_{n-1} replaced by t_n)
    Bar   S_{p_1} x ... x S_{p_{k-1}} x D_d    (d >= 2, last d coordinates)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .partitions import (
    Partition,
    conjugate,
    format_composition,
    format_partition,
    lex_compare,
    lex_key,
    parse_composition,
    parse_partition,
    partitions_of,
    sort_desc,
)
from .tableaux import kostka, skew_expansion, split_square_coefficients
from .type_a import SignatureError
from .type_b import IrrepB

CAP = 12

PLUS, MINUS, BAR = "Plus", "Minus", "Bar"


@dataclass(frozen=True)
class ParabolicD:
    kind: str
    a_parts: Partition
    d_part: int = 0

    def __post_init__(self) -> None:
        parts = sort_desc(self.a_parts)
        kind, d = self.kind, self.d_part
        if kind not in (PLUS, MINUS, BAR):
            raise ValueError(f"unknown parabolic kind {kind!r}")
        if kind == BAR and d <= 1:
            # D_1 and D_0 are trivial groups
            kind, parts, d = PLUS, sort_desc(parts + ((d,) if d else ())), 0
        if kind == MINUS and (not parts or parts[-1] == 1):
            kind = PLUS
        if kind != BAR:
            d = 0
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "a_parts", parts)
        object.__setattr__(self, "d_part", d)

    @property
    def n(self) -> int:
        return sum(self.a_parts) + self.d_part

    def layout(self) -> tuple[Partition, int]:
        return self.a_parts, self.d_part

    def text(self) -> str:
        if self.kind == PLUS:
            return "P+" + format_composition(self.a_parts)
        if self.kind == MINUS:
            return "P-" + format_composition(self.a_parts)
        return "Pbar" + format_composition(self.a_parts) + "|" + format_composition((self.d_part,))

    def __str__(self) -> str:
        return self.text()


_PD_RE = re.compile(r"^\s*(P\+|P-|Pbar)\s*(\([\d,\s]*\))\s*(?:\|\s*(\(\s*\d+\s*\)))?\s*$")


def parse_parabolic_d(text: str) -> ParabolicD:
    m = _PD_RE.match(text)
    if not m:
        raise ValueError(f"not a type D parabolic: {text!r}")
    tag, body, tail = m.groups()
    parts = parse_composition(body)
    if any(x <= 0 for x in parts):
        raise ValueError(f"parabolic parts must be positive: {text!r}")
    if tag == "Pbar":
        if tail is None:
            raise ValueError(f"Pbar needs a D part: {text!r}")
        return ParabolicD(BAR, parts, parse_composition(tail)[0])
    if tail is not None:
        raise ValueError(f"only Pbar takes a D part: {text!r}")
    return ParabolicD(PLUS if tag == "P+" else MINUS, parts)


def parabolic_d_from_generators(n: int, subset: Iterable[int]) -> ParabolicD:
    """Canonical parabolic generated by {t_j : j in subset} (1-based)."""
    J = set(subset)
    if any(j < 1 or j > n for j in J):
        raise ValueError("generator index out of range")
    if n < 2:
        return ParabolicD(PLUS, (1,) * n)

    def blocks(upto: int, gens: set[int]) -> list[int]:
        out, size = [], 1
        for i in range(1, upto):
            if i in gens:
                size += 1
            else:
                out.append(size)
                size = 1
        out.append(size)
        return out

    if n not in J:
        return ParabolicD(PLUS, tuple(blocks(n, J)))
    if n - 1 not in J:
        gens = (J - {n}) | {n - 1}
        return ParabolicD(MINUS, tuple(blocks(n, gens)))
    j = n - 1
    while j - 1 >= 1 and (j - 1) in J:
        j -= 1
    d = n - j + 1
    rest = tuple(blocks(n - d, J)) if n - d else ()
    return ParabolicD(BAR, rest, d)


def enumerate_parabolics_d(n: int, cap: int = CAP) -> list[ParabolicD]:
    if n > cap:
        raise ValueError(f"n={n} exceeds the type D cap {cap}")
    out = [ParabolicD(PLUS, p) for p in partitions_of(n)]
    out += [ParabolicD(MINUS, p) for p in partitions_of(n) if p and p[-1] >= 2]
    for d in range(n, 1, -1):
        out += [ParabolicD(BAR, p, d) for p in partitions_of(n - d)]
    return out


@dataclass(frozen=True)
class IrrepD:
    """``sign`` is None for V_{{lam,mu}} (reducible when lam = mu), '+' or '-'
    for the split halves."""

    lam: Partition
    mu: Partition
    sign: str | None = None

    def __post_init__(self) -> None:
        lam = tuple(x for x in self.lam if x)
        mu = tuple(x for x in self.mu if x)
        if self.sign is not None:
            if self.sign not in ("+", "-"):
                raise ValueError("split sign must be '+' or '-'")
            if lam != mu:
                raise ValueError("split modules need lam = mu")
        # canonical order: smaller dual first
        if lex_compare(conjugate(lam), conjugate(mu)) > 0:
            lam, mu = mu, lam
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)

    @classmethod
    def pair(cls, lam: Sequence[int], mu: Sequence[int]) -> "IrrepD":
        return cls(tuple(lam), tuple(mu))

    @classmethod
    def split(cls, lam: Sequence[int], sign: str) -> "IrrepD":
        return cls(tuple(lam), tuple(lam), sign)

    @property
    def n(self) -> int:
        return sum(self.lam) + sum(self.mu)

    @property
    def is_split(self) -> bool:
        return self.sign is not None

    @property
    def irreducible(self) -> bool:
        return self.sign is not None or self.lam != self.mu or not self.lam

    def dimension(self) -> int:
        d = IrrepB(self.lam, self.mu).dimension()
        return d // 2 if self.sign else d

    def text(self) -> str:
        if self.sign:
            return format_partition(self.lam) + self.sign
        return "{" + format_partition(self.lam) + "," + format_partition(self.mu) + "}"

    def __str__(self) -> str:
        return self.text()


_ID_PAIR = re.compile(r"^\s*\{\s*(\[[\d,\s]*\])\s*,\s*(\[[\d,\s]*\])\s*\}\s*$")
_ID_SPLIT = re.compile(r"^\s*(\[[\d,\s]*\])\s*([+-])\s*$")


def parse_irrep_d(text: str) -> IrrepD:
    m = _ID_PAIR.match(text)
    if m:
        return IrrepD.pair(parse_partition(m.group(1)), parse_partition(m.group(2)))
    m = _ID_SPLIT.match(text)
    if m:
        return IrrepD.split(parse_partition(m.group(1)), m.group(2))
    raise ValueError(f"not a type D irreducible: {text!r}")


def irreps_d(n: int) -> list[IrrepD]:
    """All irreducibles of D_n."""
    seen: list[IrrepD] = []
    keys = set()
    for i in range(n + 1):
        for lam in partitions_of(i):
            for mu in partitions_of(n - i):
                if lam == mu:
                    continue
                v = IrrepD.pair(lam, mu)
                if v not in keys:
                    keys.add(v)
                    seen.append(v)
    if n % 2 == 0 and n:
        for lam in partitions_of(n // 2):
            seen.append(IrrepD.split(lam, "+"))
            seen.append(IrrepD.split(lam, "-"))
    return seen


# ------------------------------------------------------------ multiplicities


def _pair_terms(l1: Partition, l2: Partition, parts: Sequence[int], free_last: bool = True):
    """Yield (alpha, beta, K_{l1,alpha} K_{l2,beta}) over alpha + beta = parts
    with nonzero product; ``free_last=False`` keeps only alpha_k = 0 or
    beta_k = 0."""
    k = len(parts)
    target = sum(l1)

    def rec(i: int, left: int, alpha: tuple[int, ...]):
        if i == k:
            if left:
                return
            if not free_last and alpha[-1] != 0 and alpha[-1] != parts[-1]:
                return
            beta = tuple(p - a for p, a in zip(parts, alpha))
            ka = kostka(l1, alpha)
            if ka:
                kb = kostka(l2, beta)
                if kb:
                    yield alpha, beta, ka * kb
            return
        for a in range(min(parts[i], left), -1, -1):
            yield from rec(i + 1, left - a, alpha + (a,))

    yield from rec(0, target, ())


def _square_weight(lam_c: Partition, parts: Sequence[int], symmetric: bool) -> int:
    """Weight multiplicity of S^2 (or Lambda^2) of V^{lam_c} at ``parts``."""
    off = 0
    diag = 0
    for alpha, beta, kk in _pair_terms(lam_c, lam_c, parts):
        if alpha == beta:
            k = kostka(lam_c, alpha)
            diag += k * (k + 1) // 2 if symmetric else k * (k - 1) // 2
        else:
            off += kk
    return off // 2 + diag


def split_square_side(v: IrrepD, p: ParabolicD) -> bool:
    """True when V^{sign}_{{lam,lam}} over Plus/Minus ``p`` is governed by
    the symmetric square of V^{lam*}."""
    eps = 1 if v.sign == "+" else -1
    if len(v.lam) and sum(v.lam) % 2:
        eps = -eps
    if p.kind == MINUS:
        eps = -eps
    return eps > 0


def sign_mult_d(v: IrrepD, p: ParabolicD, allow_reducible: bool = False) -> int:
    """Multiplicity of the sign of ``p`` in ``v``.

    For lam != mu this is a sum of K_{lam*,alpha} K_{mu*,beta} over
    alpha + beta = parts (Bar: alpha or beta vanishes at the D position).
    For split modules over Plus/Minus it is a weight multiplicity of the
    symmetric or exterior square of V^{lam*}, which of the two set by the
    sign, the parity of |lam| and the kind. The reducible V_{{lam,lam}}
    is rejected unless ``allow_reducible``.
    """
    if not (v.irreducible or allow_reducible):
        raise ValueError(f"{v.text()} is reducible; pass a split half")
    if v.n != p.n:
        raise ValueError(f"rank mismatch: irrep of D_{v.n}, parabolic of D_{p.n}")
    lam_c, mu_c = conjugate(v.lam), conjugate(v.mu)
    if p.kind == BAR:
        parts = p.a_parts + (p.d_part,)
        if v.sign:
            return sum(kk for a, _, kk in _pair_terms(lam_c, lam_c, parts, False) if a[-1] == 0)
        return sum(kk for _, _, kk in _pair_terms(lam_c, mu_c, parts, False))
    parts = p.a_parts
    if v.sign:
        return _square_weight(lam_c, parts, split_square_side(v, p))
    return sum(kk for _, _, kk in _pair_terms(lam_c, mu_c, parts))


@dataclass(frozen=True)
class SignSignatureD:
    rank: int
    mult: dict

    def __getitem__(self, p: ParabolicD) -> int:
        return self.mult.get(p, 0)

    def support(self) -> set[ParabolicD]:
        return {p for p, v in self.mult.items() if v > 0}


def sign_signature_d(v: IrrepD, allow_reducible: bool = False) -> SignSignatureD:
    return SignSignatureD(
        v.n, {p: sign_mult_d(v, p, allow_reducible) for p in enumerate_parabolics_d(v.n)}
    )


# ------------------------------------------------------------------ recovery


def _normalize_sig(sig) -> dict[ParabolicD, int]:
    mult = sig.mult if isinstance(sig, SignSignatureD) else sig
    out: dict[ParabolicD, int] = {}
    for k, v in mult.items():
        p = k if isinstance(k, ParabolicD) else parse_parabolic_d(k)
        out[p] = out.get(p, 0) + v
    return out


def _minus_multiset(big: Sequence[int], small: Sequence[int]) -> list[int] | None:
    pool = list(big)
    for x in small:
        if x in pool:
            pool.remove(x)
        else:
            return None
    return pool


class _Probe:
    """Membership queries against a signature with free trailing parts."""

    def __init__(self, support: list[ParabolicD]) -> None:
        self.support = support

    def max_free(self, kind: str, prefix: Sequence[int]) -> int:
        """max p over kind_{(prefix, p, ...)}; 0 if only the prefix fits."""
        best = -1
        for q in self.support:
            # P-(..., 1) is stored as P+
            if q.kind != kind and not (kind == MINUS and q.kind == PLUS and 1 in q.a_parts):
                continue
            rest = _minus_multiset(q.a_parts, prefix)
            if rest is None:
                continue
            best = max(best, max(rest) if rest else 0)
        return best

    def max_bar_d(self, prefix: Sequence[int]) -> int:
        """max d over Pbar_{(prefix, ...),(d)}, including d <= 1 stored as Plus."""
        best = -1
        for q in self.support:
            if q.kind == BAR:
                if _minus_multiset(q.a_parts, prefix) is not None:
                    best = max(best, q.d_part)
            elif q.kind == PLUS:
                rest = _minus_multiset(q.a_parts, prefix)
                if rest is None:
                    continue
                best = max(best, 1 if 1 in rest else 0)
        return best

    def max_bar_free(self, prefix: Sequence[int], d: int) -> int:
        """max p over Pbar_{(prefix, p, ...),(d)}."""
        best = -1
        for q in self.support:
            if d >= 2:
                if q.kind != BAR or q.d_part != d:
                    continue
                rest = _minus_multiset(q.a_parts, prefix)
            else:
                if q.kind != PLUS:
                    continue
                rest = _minus_multiset(q.a_parts, tuple(prefix) + ((d,) if d else ()))
            if rest is None:
                continue
            best = max(best, max(rest) if rest else 0)
        return best


def _greedy(probe: _Probe, kind: str, n: int) -> tuple[int, ...]:
    out: list[int] = []
    while sum(out) < n:
        x = probe.max_free(kind, out)
        if x <= 0:
            raise SignatureError(f"no {kind} parabolic extends {tuple(out)}")
        out.append(x)
    return tuple(out)


def _check(candidate: IrrepD, mult: dict[ParabolicD, int]) -> IrrepD:
    expected = sign_signature_d(candidate)
    for p, v in expected.mult.items():
        if mult.get(p, 0) != v:
            raise SignatureError(f"no irreducible matches; closest label {candidate} differs at {p}")
    return candidate


def recover_d(sig) -> IrrepD:
    """The irreducible of D_n with sign signature ``sig``.

    alpha and beta are the greedy lexicographic maxima over Plus and Minus
    parabolics. They differ exactly for split modules. Otherwise the Bar
    probes find max(lam*_i, mu*_i) up to the first index where the two
    differ, and the remaining rows of the larger dual follow from one more
    family of Bar probes with that D part held fixed.
    """
    mult = _normalize_sig(sig)
    support = [p for p, v in mult.items() if v > 0]
    if not support:
        raise SignatureError("empty sign signature")
    n = support[0].n
    probe = _Probe(support)
    alpha = _greedy(probe, PLUS, n)
    beta = _greedy(probe, MINUS, n)
    if alpha != beta:
        top = alpha if lex_compare(alpha, beta) > 0 else beta
        if any(x % 2 for x in top):
            raise SignatureError("split signature with an odd part")
        lam = conjugate(tuple(x // 2 for x in top))
        q = sum(lam)
        # larger Plus side means the symmetric square, which fixes the sign
        # only up to the parity of q
        sym_on_plus = top is alpha
        sign = "+" if sym_on_plus == (q % 2 == 0) else "-"
        return _check(IrrepD.split(lam, sign), mult)

    k = len(alpha)
    d: list[int] = []
    s = None
    for i in range(k):
        di = probe.max_bar_d(alpha[:i])
        if di < 0:
            raise SignatureError("Bar probe found nothing")
        d.append(di)
        if 2 * di > alpha[i]:
            s = i
            break
    if s is None:
        raise SignatureError("no index separates the two partitions")
    fixed = list(alpha[:s])
    for i in range(s + 1, k):
        f = probe.max_bar_free(fixed, d[s])
        if f < 0:
            raise SignatureError("Bar probe found nothing")
        fixed.append(f)
        d.append(f + d[i - 1] - alpha[i - 1])
    e = [a - x for a, x in zip(alpha, d)]
    if any(x < 0 for x in d + e):
        raise SignatureError("signature does not come from an irreducible")
    delta = tuple(x for x in d if x)
    eps = tuple(x for x in e if x)
    return _check(IrrepD.pair(conjugate(delta), conjugate(eps)), mult)


# ----------------------------------------------------------------- branching


def _factor(nu: Partition, sigma: Partition) -> list[IrrepD]:
    """D_k irreducibles making up the restriction of V_{nu,sigma}."""
    if nu == sigma and nu:
        return [IrrepD.split(nu, "+"), IrrepD.split(nu, "-")]
    return [IrrepD.pair(nu, sigma)]


def branch_d_nonsplit(v: IrrepD, k: int) -> dict[tuple[IrrepD, IrrepD], int]:
    """Restriction of V_{{lam,mu}} (lam = mu allowed) to D_k x D_{n-k}.

    Factors V_{{nu,nu}} are written out as their two split halves.
    """
    if v.sign:
        raise ValueError("use branch_d_split for split modules")
    n = v.n
    if not 0 <= k <= n:
        raise ValueError(f"k={k} out of range for D_{n}")
    out: dict[tuple[IrrepD, IrrepD], int] = {}
    for i in range(k + 1):
        for (nu, xi), c1 in skew_expansion(v.lam, i).items():
            for (sigma, zeta), c2 in skew_expansion(v.mu, k - i).items():
                for x in _factor(nu, sigma):
                    for y in _factor(xi, zeta):
                        out[(x, y)] = out.get((x, y), 0) + c1 * c2
    return out


def _split_factor(nu: Partition, sign: str) -> IrrepD | None:
    if not nu:
        return IrrepD((), ()) if sign == "+" else None
    return IrrepD.split(nu, sign)


def branch_d_split(v: IrrepD, k: int) -> dict[tuple[IrrepD, IrrepD], int]:
    """Restriction of V^{+-}_{{lam,lam}} to D_k x D_{n-k}.

    Off-diagonal terms are half of the ordered sum for V_{{lam,lam}}. For
    even k the diagonal terms V^a_{{nu,nu}} (x) V^b_{{xi,xi}} carry
    C(c+1, 2) or C(c, 2), c = c^lam_{nu,xi}, by the parity of the number
    of minus signs among the three.
    """
    if not v.sign:
        raise ValueError("branch_d_split expects a split module")
    lam, n = v.lam, v.n
    if not 0 <= k <= n:
        raise ValueError(f"k={k} out of range for D_{n}")
    ordered: dict[tuple, int] = {}
    for i in range(k + 1):
        for (nu, xi), c1 in skew_expansion(lam, i).items():
            for (sigma, zeta), c2 in skew_expansion(lam, k - i).items():
                key = (nu, xi, sigma, zeta)
                ordered[key] = ordered.get(key, 0) + c1 * c2
    out: dict[tuple[IrrepD, IrrepD], int] = {}

    def add(x: IrrepD | None, y: IrrepD | None, m: int) -> None:
        if x is None or y is None or not m:
            return
        out[(x, y)] = out.get((x, y), 0) + m

    for (nu, xi, sigma, zeta), c in ordered.items():
        if (nu, xi) == (sigma, zeta):
            continue
        # each unordered pair {(nu,xi),(sigma,zeta)} appears twice
        if (lex_key((sum(nu),) + nu, n + 2), lex_key(xi, n + 1)) < (
            lex_key((sum(sigma),) + sigma, n + 2),
            lex_key(zeta, n + 1),
        ):
            continue
        for x in _factor(nu, sigma):
            for y in _factor(xi, zeta):
                add(x, y, c)
    if k % 2 == 0:
        for nu in partitions_of(k // 2) if k else [()]:
            for xi in partitions_of((n - k) // 2) if n - k else [()]:
                c = ordered.get((nu, xi, nu, xi), 0)
                if not c:
                    continue
                c = _lr(lam, nu, xi)
                for a in "+-":
                    for b in "+-":
                        minus = [v.sign, a, b].count("-")
                        m = c * (c + 1) // 2 if minus % 2 == 0 else c * (c - 1) // 2
                        add(_split_factor(nu, a), _split_factor(xi, b), m)
    return out


def _lr(lam: Partition, nu: Partition, xi: Partition) -> int:
    from .tableaux import lr_coefficient

    return lr_coefficient(lam, nu, xi)


def branch_d_split_to_sn(v: IrrepD) -> dict[Partition, int]:
    """Restriction of V^{+-}_{{lam,lam}} to S_n: c^{lam,+-}_nu."""
    if not v.sign:
        raise ValueError("branch_d_split_to_sn expects a split module")
    return split_square_coefficients(v.lam, v.sign)


def branch_d_to_sn(v: IrrepD) -> dict[Partition, int]:
    if v.sign:
        return branch_d_split_to_sn(v)
    from .tableaux import lr_product

    return lr_product(v.lam, v.mu)
