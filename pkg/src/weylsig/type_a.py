"""Sign multiplicities and label recovery for the symmetric group S_n.

A parabolic subgroup S_{p_1} x ... x S_{p_k} is keyed by its parts sorted
descending, so keys are partitions of n. The multiplicity of the sign
character of that subgroup in V_lam is the Kostka number K_{lam*, p}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .partitions import Partition, conjugate, lex_compare, partitions_of, sort_desc
from .tableaux import kostka


class SignatureError(ValueError):
    """The input is not (a non-negative combination of) irreducible signatures."""


@dataclass(frozen=True)
class SignSignatureA:
    rank: int
    mult: dict[Partition, int] = field(default_factory=dict)

    def support(self) -> set[Partition]:
        return {p for p, v in self.mult.items() if v > 0}

    def __getitem__(self, key: Sequence[int]) -> int:
        return self.mult.get(sort_desc(key), 0)


def canonical_parabolic_a(parts: Sequence[int]) -> Partition:
    if any(p < 0 for p in parts):
        raise ValueError("parabolic parts must be non-negative")
    return sort_desc(parts)


def sign_mult_a(lam: Sequence[int], p: Sequence[int]) -> int:
    """Multiplicity of the sign of S_{p_1} x ... x S_{p_k} in V_lam."""
    if sum(lam) != sum(p):
        raise ValueError(f"size mismatch: |lam|={sum(lam)}, sum(p)={sum(p)}")
    return kostka(conjugate(lam), p)


def sign_signature_a(lam: Sequence[int]) -> SignSignatureA:
    n = sum(lam)
    return SignSignatureA(n, {p: sign_mult_a(lam, p) for p in partitions_of(n)})


def recover_a(sig: SignSignatureA | Mapping[Sequence[int], int]) -> Partition:
    """The partition whose signature is ``sig``.

    Takes the lexicographically largest parabolic carrying a sign and
    returns its conjugate.
    """
    mult = sig.mult if isinstance(sig, SignSignatureA) else {sort_desc(k): v for k, v in sig.items()}
    best: Partition | None = None
    for p, v in mult.items():
        if v > 0 and (best is None or lex_compare(p, best) > 0):
            best = p
    if best is None:
        raise SignatureError("empty sign signature")
    return conjugate(best)


def irreps_in_order(n: int) -> list[Partition]:
    """Partitions ordered so that their conjugates decrease lexicographically."""
    return [conjugate(p) for p in partitions_of(n)]


def signature_matrix_a(n: int) -> tuple[list[Partition], list[list[int]]]:
    """Rows V_lam_j, columns P_{lam_i*}, both in :func:`irreps_in_order`.

    The matrix is unitriangular (zero below the diagonal).
    """
    order = irreps_in_order(n)
    return order, [[sign_mult_a(lam, conjugate(mu)) for mu in order] for lam in order]


def decompose_a(vec: SignSignatureA | Mapping[Sequence[int], int], n: int | None = None) -> dict[Partition, int]:
    """Irreducible multiplicities of the representation with signature ``vec``."""
    if isinstance(vec, SignSignatureA):
        n, mult = vec.rank, dict(vec.mult)
    else:
        mult = {sort_desc(k): v for k, v in vec.items()}
        if n is None:
            sizes = {sum(k) for k in mult}
            if len(sizes) != 1:
                raise SignatureError("cannot infer rank from signature keys")
            n = sizes.pop()
    order = irreps_in_order(n)
    residual = {p: mult.get(p, 0) for p in partitions_of(n)}
    extra = set(mult) - set(residual)
    if extra:
        raise SignatureError(f"keys not partitions of {n}: {sorted(extra)}")
    out: dict[Partition, int] = {}
    # Row for lam has its first nonzero column at P_{lam*}; go in that order.
    for lam in order:
        m = residual[conjugate(lam)]
        if m < 0:
            raise SignatureError("signature outside the non-negative cone")
        if m:
            out[lam] = m
            for p in residual:
                residual[p] -= m * sign_mult_a(lam, p)
    if any(residual.values()):
        raise SignatureError("signature is not a combination of irreducible signatures")
    return out
