"""Acceptance gate: one PASS/FAIL line per criterion.

Run under pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import random
import sys
import time
from importlib import resources
from pathlib import Path
from typing import Callable

import pytest

from weylsig import _linalg as L
from weylsig import exceptional as E
from weylsig import oracle as O
from weylsig import wgraph as W
from weylsig.partitions import bipartitions_of, conjugate, partitions_of
from weylsig.tableaux import kostka, lr_coefficient, lr_product
from weylsig.type_a import decompose_a, recover_a, sign_mult_a, sign_signature_a, signature_matrix_a
from weylsig.type_b import (
    IrrepB,
    ParabolicB,
    decompose_b,
    enumerate_parabolics_b,
    irreps_b_in_order,
    recover_b,
    sign_mult_b,
    sign_signature_b,
    signature_matrix_b,
)
from weylsig.type_d import (
    IrrepD,
    branch_d_nonsplit,
    branch_d_split,
    enumerate_parabolics_d,
    irreps_d,
    recover_d,
    sign_mult_d,
    sign_signature_d,
)

GOLDEN = Path(__file__).parent / "golden"
Check = Callable[[], tuple[bool, str]]
CRITERIA: dict[int, tuple[str, float, Check]] = {}


def criterion(k: int, title: str, budget: float):
    def wrap(fn: Check) -> Check:
        CRITERIA[k] = (title, budget, fn)
        return fn

    return wrap


def _golden_rows(name: str) -> tuple[list[str], list[tuple[str, list[int]]]]:
    lines = (GOLDEN / name).read_text().splitlines()
    header = lines[0].split("\t")[1:]
    rows = []
    for line in lines[1:]:
        label, *vals = line.split("\t")
        rows.append((label, [int(x) for x in vals]))
    return header, rows


@criterion(1, "B3 sign-signature table", 1.0)
def c1():
    from weylsig.type_b import parse_irrep_b, parse_parabolic_b

    header, rows = _golden_rows("b3.tsv")
    cols = [parse_parabolic_b(h) for h in header]
    bad = 0
    for label, vals in rows:
        v = parse_irrep_b(label)
        bad += sum(sign_mult_b(v, p) != x for p, x in zip(cols, vals))
    v = IrrepB((1, 1), (1,))
    worked = sign_mult_b(v, ParabolicB((2,), (1,))) == 1 and sign_mult_b(v, ParabolicB((2, 1), ())) == 2
    n = len(rows) * len(cols)
    return bad == 0 and worked and n == 70, f"{n - bad}/{n} entries match, worked entries {'ok' if worked else 'wrong'}"


@criterion(2, "G2 extended sign-signature table", 1.0)
def c2():
    header, rows = _golden_rows("g2_extended.tsv")
    ours_header, ours = E.extended_table("G2")
    n = sum(len(v) for _, v in rows)
    bad = sum(a != b for (la, va), (lb, vb) in zip(ours, rows) for a, b in zip(va, vb))
    same_labels = ours_header == header and [r[0] for r in ours] == [r[0] for r in rows]
    a, b = E.character("G2", "phi_{2,1}"), E.character("G2", "phi_{2,2}")
    collide = E.plain_sign_signature("G2", a) == E.plain_sign_signature("G2", b)
    separate = E.extended_sign_signature("G2", a) != E.extended_sign_signature("G2", b)
    ok = bad == 0 and n == 36 and same_labels and collide and separate
    return ok, f"{n - bad}/{n} entries match; phi_2,1/phi_2,2 collide on plain: {collide}, separate on extended: {separate}"


@criterion(3, "round-trip recovery (A n<=8, B n<=6, D4-D6)", 60.0)
def c3():
    total = fails = 0
    for n in range(1, 9):
        for lam in partitions_of(n):
            total += 1
            fails += recover_a(sign_signature_a(lam)) != lam
    for n in range(1, 7):
        for lam, mu in bipartitions_of(n):
            total += 1
            fails += recover_b(sign_signature_b(IrrepB(lam, mu))) != IrrepB(lam, mu)
    for n in (4, 5, 6):
        for v in irreps_d(n):
            total += 1
            fails += recover_d(sign_signature_d(v)) != v
    return fails == 0, f"{total - fails}/{total} labels round-trip"


@criterion(4, "formula vs character-sum oracle (S_n<=6, B_n<=4, D_n<=4)", 300.0)
def c4():
    total = fails = 0
    for n in range(1, 7):
        for lam in partitions_of(n):
            m = O.sn_module(lam)
            for p in partitions_of(n):
                total += 1
                fails += O.oracle_sign_mult(m, O.parabolic_gens_a(p)) != sign_mult_a(lam, p)
    for n in range(1, 5):
        for lam, mu in bipartitions_of(n):
            m = O.bn_module(lam, mu)
            for p in enumerate_parabolics_b(n, generalized=True):
                total += 1
                fails += O.oracle_sign_mult(m, O.parabolic_gens_b(p)) != sign_mult_b(IrrepB(lam, mu), p)
    for n in range(2, 5):
        for v in irreps_d(n):
            m = O.dn_module(v)
            for p in enumerate_parabolics_d(n):
                total += 1
                fails += O.oracle_sign_mult(m, O.parabolic_gens_d(p)) != sign_mult_d(v, p)
    return fails == 0, f"{total - fails}/{total} (irrep, parabolic) pairs agree"


@criterion(5, "tableau identity suites", 120.0)
def c5():
    fails: dict[str, int] = {}
    checks: dict[str, int] = {}

    def tally(name: str, ok: bool) -> None:
        checks[name] = checks.get(name, 0) + 1
        fails[name] = fails.get(name, 0) + (not ok)

    for n in range(9):
        for lam in partitions_of(n):
            for k in range(1, 5):
                for content in itertools.product(range(n + 1), repeat=k):
                    if sum(content) != n:
                        continue
                    base = kostka(lam, content)
                    for perm in set(itertools.permutations(content)):
                        tally("kostka-permutation", kostka(lam, perm) == base)
    for n in range(9):
        for lam in partitions_of(n):
            for k in range(n + 1):
                for mu in partitions_of(k):
                    tally("pieri", lr_coefficient(lam, mu, (1,) * (n - k)) in (0, 1))
                    for nu in partitions_of(n - k):
                        tally("lr-symmetry", lr_coefficient(lam, mu, nu) == lr_coefficient(lam, nu, mu))
    for n in range(1, 8):
        for mu in partitions_of(n):
            for p in range(1, n + 1):
                for head in partitions_of(n - p):
                    lhs = kostka(conjugate(mu), head + (p,))
                    rhs = sum(
                        lr_coefficient(mu, s, (1,) * p) * kostka(conjugate(s), head) for s in partitions_of(n - p)
                    )
                    tally("box-row-column", lhs == rhs)
    for a in range(5):
        for b in range(5):
            for lam in partitions_of(a):
                for mu in partitions_of(b):
                    prod = lr_product(lam, mu)
                    for k in range(1, 4):
                        for gamma in itertools.product(range(a + b + 1), repeat=k):
                            if sum(gamma) != a + b:
                                continue
                            lhs = 0
                            for alpha in itertools.product(*(range(g + 1) for g in gamma)):
                                beta = tuple(g - x for g, x in zip(gamma, alpha))
                                lhs += kostka(lam, alpha) * kostka(mu, beta)
                            tally("schur-product", lhs == sum(c * kostka(nu, gamma) for nu, c in prod.items()))
    bad = sum(fails.values())
    return bad == 0, ", ".join(f"{k} {checks[k] - fails[k]}/{checks[k]}" for k in checks)


@criterion(6, "W-graph suite on the G2 wcell block", 1.0)
def c6():
    text = resources.files("weylsig").joinpath("data/g2_wcell.txt").read_text()
    cox = W.coxeter_data("G2")
    cells = W.parse_wcell(text, cox).ordered_cells()
    sizes = tuple(g.size for _, g in cells)
    valid = all(W.validate(g, cox).ok for _, g in cells)
    sigs = [W.tau_signature(g).text() for _, g in cells]
    sig_ok = sigs == ["{{}}", "{{1},{2}}", "{{1},{2}}", "{{1,2}}"] and len(set(sigs)) == 3
    trace_bad, rank_bad, pairs = [], 0, 0
    for c, g in cells:
        for k in range(3):
            for A in itertools.combinations((1, 2), k):
                pairs += 1
                count = sum(1 for t in g.tau if t == frozenset(A))
                op = W.realization_operator(g, A)
                t = L.trace(op)
                if t != count:
                    trace_bad.append(f"cell {c} A={set(A) or '{}'}: trace {t} vs count {count}")
                rank_bad += L.rank(op) != count
    ok = sizes == (1, 5, 5, 1) and valid and sig_ok and not trace_bad
    detail = (
        f"sizes {sizes}, valid {valid}, signatures {'ok' if sig_ok else sigs}; "
        f"trace = count on {pairs - len(trace_bad)}/{pairs} (cell, A) pairs"
    )
    if trace_bad:
        detail += f" [{'; '.join(trace_bad)}]; rank = count on {pairs - rank_bad}/{pairs}"
    return ok, detail


@criterion(7, "unitriangular signature matrices and decomposition", 60.0)
def c7():
    tri = True
    for n in range(1, 8):
        _, m = signature_matrix_a(n)
        tri &= all(m[i][i] == 1 and all(m[i][j] == 0 for j in range(i)) for i in range(len(m)))
    for n in range(1, 6):
        _, m = signature_matrix_b(n)
        tri &= all(m[i][i] == 1 and all(m[i][j] == 0 for j in range(i)) for i in range(len(m)))
    rng = random.Random(20240611)
    trials = fails = 0
    for _ in range(40):
        n = rng.randint(1, 7)
        coeffs = {lam: rng.randint(0, 4) for lam in rng.sample(partitions_of(n), min(3, len(partitions_of(n))))}
        vec: dict = {}
        for lam, c in coeffs.items():
            for p, x in sign_signature_a(lam).mult.items():
                vec[p] = vec.get(p, 0) + c * x
        trials += 1
        fails += decompose_a(vec, n) != {k: v for k, v in coeffs.items() if v}
    for _ in range(40):
        n = rng.randint(1, 5)
        vs = rng.sample(irreps_b_in_order(n), min(3, len(irreps_b_in_order(n))))
        coeffs = {v: rng.randint(0, 4) for v in vs}
        vec = {}
        for v, c in coeffs.items():
            for p, x in sign_signature_b(v, True).mult.items():
                vec[p] = vec.get(p, 0) + c * x
        trials += 1
        fails += decompose_b(vec, n) != {k: v for k, v in coeffs.items() if v}
    return tri and fails == 0, f"unitriangular: {tri}; decompositions {trials - fails}/{trials} exact"


@criterion(8, "split representations of D4", 60.0)
def c8():
    checks = fails = 0
    for lam in partitions_of(2):
        plus, minus = IrrepD.split(lam, "+"), IrrepD.split(lam, "-")
        full = sign_signature_d(IrrepD.pair(lam, lam), allow_reducible=True)
        a, b = sign_signature_d(plus), sign_signature_d(minus)
        for p in full.mult:
            checks += 1
            fails += full[p] != a[p] + b[p]
        for k in range(5):
            acc: dict = {}
            for v in (plus, minus):
                for key, c in branch_d_split(v, k).items():
                    acc[key] = acc.get(key, 0) + c
            checks += 1
            fails += acc != branch_d_nonsplit(IrrepD.pair(lam, lam), k)
        for v in (plus, minus):
            m = O.build_dn_irrep(v)
            checks += 2
            fails += not m.validate()
            fails += m.dimension != v.dimension() or 2 * v.dimension() != IrrepB(lam, lam).dimension()
            checks += 1
            fails += m.trace(O.identity(4)) != v.dimension()
    return fails == 0, f"{checks - fails}/{checks} checks exact"


@criterion(9, "F4 subsystem classes and pseudo sign signatures", 600.0)
def c9():
    from collections import Counter

    kinds = Counter(s.kind for s in E.enumerate_closed_subsystems("F4"))
    counts = (kinds[E.PARABOLIC], kinds[E.PSEUDO], kinds[E.NEITHER])
    table = E.character_table("F4")
    sigs = {tuple(E.pseudo_sign_signature("F4", c).values()) for c in table}
    ok = counts == (12, 8, 4) and len(table) == 25 and len(sigs) == 25
    return ok, f"classes parabolic/pseudo/neither = {counts}; {len(sigs)}/{len(table)} irreducibles separated"


def evaluate(k: int) -> tuple[bool, str]:
    title, budget, fn = CRITERIA[k]
    t = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t
    if dt > budget:
        ok = False
        detail += f"; over budget ({dt:.1f}s > {budget:.0f}s)"
    status = "PASS" if ok else "FAIL"
    return ok, f"criterion {k} {status}: {title} ({dt:.2f}s) - {detail}"


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, request):
    ok, line = evaluate(k)
    lines = getattr(request.config, "_acceptance_lines", {})
    lines[k] = line
    request.config._acceptance_lines = lines
    print(line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for k in sorted(CRITERIA):
        ok, line = evaluate(k)
        failed += not ok
        print(line, flush=True)
    sys.exit(1 if failed else 0)
