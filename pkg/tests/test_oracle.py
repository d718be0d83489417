import os
import subprocess
import sys
from itertools import chain, combinations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from weylsig import _kernels as K
from weylsig import oracle as O
from weylsig.partitions import bipartitions_of, conjugate, partitions_of
from weylsig.type_a import sign_mult_a
from weylsig.type_b import IrrepB, branch_b_to_bb, enumerate_parabolics_b, sign_mult_b
from weylsig.type_d import (
    IrrepD,
    branch_d_nonsplit,
    branch_d_split,
    enumerate_parabolics_d,
    irreps_d,
    parabolic_d_from_generators,
    sign_mult_d,
)


@pytest.mark.parametrize(
    "tag,n,order,classes",
    [("A", 4, 24, 5), ("A", 5, 120, 7), ("B", 3, 48, 10), ("B", 4, 384, 20), ("D", 4, 192, 13), ("D", 5, 1920, 18)],
)
def test_group_orders(tag, n, order, classes):
    G = O.enumerate_group(tag, n)
    assert G.order == order
    assert G.num_classes == classes
    assert int(G.class_sizes.sum()) == order


def test_mn_character():
    assert O.mn_character((2, 1), (1, 1, 1)) == 2
    assert O.mn_character((2, 1), (3,)) == -1
    assert O.mn_character((1, 1, 1), (2, 1)) == -1


@pytest.mark.parametrize("lam", partitions_of(4))
def test_explicit_sn(lam):
    m = O.build_sn_irrep(lam)
    assert m.validate()
    assert all(m.trace(w) == O.sn_character(lam, O.perm_of(w)) for w in m.group.class_reps)


@pytest.mark.parametrize("lam,mu", bipartitions_of(3))
def test_explicit_bn(lam, mu):
    m = O.build_bn_irrep(lam, mu)
    assert m.validate()
    cm = O.bn_module(lam, mu)
    assert [m.trace(w) for w in cm.group.class_reps] == cm.class_values().tolist()


@pytest.mark.parametrize("v", irreps_d(4), ids=str)
def test_explicit_dn(v):
    m = O.build_dn_irrep(v)
    assert m.validate()
    cm = O.dn_module(v)
    assert [m.trace(w) for w in cm.group.class_reps] == cm.class_values().tolist()


@pytest.mark.parametrize("n", range(2, 7))
def test_dn_modules_irreducible_and_orthogonal(n):
    G = O.enumerate_group("D", n)
    chars = [O.dn_module(v).class_values() for v in irreps_d(n)]
    for i, a in enumerate(chars):
        for j, b in enumerate(chars):
            assert O.inner_product(G, a, b) == (1 if i == j else 0)


@pytest.mark.parametrize("n", range(1, 7))
def test_oracle_type_a(n):
    for lam in partitions_of(n):
        m = O.sn_module(lam)
        for p in partitions_of(n):
            assert O.oracle_sign_mult(m, O.parabolic_gens_a(p)) == sign_mult_a(lam, p)


@pytest.mark.parametrize("n", range(1, 5))
def test_oracle_type_b(n):
    for lam, mu in bipartitions_of(n):
        m = O.bn_module(lam, mu)
        for p in enumerate_parabolics_b(n, generalized=True):
            assert O.oracle_sign_mult(m, O.parabolic_gens_b(p)) == sign_mult_b(IrrepB(lam, mu), p)


@pytest.mark.parametrize("n", [2, 3, 4, pytest.param(5, marks=pytest.mark.slow), pytest.param(6, marks=pytest.mark.slow)])
def test_oracle_type_d(n):
    for v in irreps_d(n):
        m = O.dn_module(v)
        for p in enumerate_parabolics_d(n):
            assert O.oracle_sign_mult(m, O.parabolic_gens_d(p)) == sign_mult_d(v, p), (v, p)


@pytest.mark.parametrize("n", range(1, 5))
def test_oracle_branch_b(n):
    for lam, mu in bipartitions_of(n):
        for k in range(n + 1):
            assert O.oracle_branch(O.bn_module(lam, mu), k) == branch_b_to_bb(IrrepB(lam, mu), k)


@pytest.mark.parametrize("n", [2, 3, 4, pytest.param(5, marks=pytest.mark.slow)])
def test_oracle_branch_d(n):
    for v in irreps_d(n):
        for k in range(n + 1):
            want = branch_d_split(v, k) if v.is_split else branch_d_nonsplit(v, k)
            assert O.oracle_branch(O.dn_module(v), k) == want, (v, k)


def _det_classes(G):
    return K.det(G.class_reps)


@pytest.mark.parametrize("n", range(1, 5))
def test_tensor_sign_b(n):
    G = O.enumerate_group("B", n)
    sgn = _det_classes(G)
    for lam, mu in bipartitions_of(n):
        twisted = O.bn_module(lam, mu).class_values() * sgn
        assert twisted.tolist() == O.bn_module(conjugate(mu), conjugate(lam)).class_values().tolist()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_tensor_sign_d(n):
    G = O.enumerate_group("D", n)
    sgn = _det_classes(G)
    for v in irreps_d(n):
        twisted = O.dn_module(v).class_values() * sgn
        if v.is_split:
            flip = (n // 2) % 2 == 1
            s = v.sign if not flip else ("-" if v.sign == "+" else "+")
            w = IrrepD.split(conjugate(v.lam), s)
        else:
            w = IrrepD.pair(conjugate(v.lam), conjugate(v.mu))
        assert twisted.tolist() == O.dn_module(w).class_values().tolist(), v


@pytest.mark.parametrize("n", [2, 4])
def test_outer_conjugation_swaps_halves(n):
    s = O.sign_flip(n, n - 1)
    for v in irreps_d(n):
        twisted = O.conjugated_character(O.dn_module(v), s)
        if v.is_split:
            w = IrrepD.split(v.lam, "-" if v.sign == "+" else "+")
        else:
            w = v
        assert twisted.tolist() == O.dn_module(w).class_values().tolist()


@pytest.mark.parametrize("n", range(2, 5))
def test_sign_restriction_uniqueness(n):
    D = O.enumerate_group("D", n)
    sgn = _det_classes(D)
    hits = []
    for lam, mu in bipartitions_of(n):
        res = O.restrict_values(O.bn_module(lam, mu), D)
        if O.inner_product(D, res, sgn):
            hits.append((lam, mu))
    assert sorted(hits) == sorted([((), (1,) * n), ((1,) * n, ())])


@pytest.mark.parametrize("n", range(2, 6))
def test_b_to_d_restriction(n):
    D = O.enumerate_group("D", n)
    for lam, mu in bipartitions_of(n):
        res = O.restrict_values(O.bn_module(lam, mu), D)
        if lam == mu:
            want = sum(O.dn_module(IrrepD.split(lam, s)).class_values() for s in "+-")
        else:
            want = O.dn_module(IrrepD.pair(lam, mu)).class_values()
        assert res.tolist() == want.tolist()


def _induced_class_values(G, H, psi_on_h):
    """Class values of Ind_H^G psi by averaging over all of G."""
    hkeys = dict(zip(K.encode(H).tolist(), psi_on_h.tolist()))
    out = []
    for g in G.class_reps:
        conj = K.conjugate(g[None, :], G.elements)
        total = sum(hkeys.get(k, 0) for k in K.encode(conj).tolist())
        assert total % H.shape[0] == 0
        out.append(total // H.shape[0])
    return np.array(out, dtype=np.int64)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_frobenius_reciprocity_b(n):
    G = O.enumerate_group("B", n)
    for p in enumerate_parabolics_b(n, generalized=True):
        H = O.closure(O.parabolic_gens_b(p), n)
        ind = _induced_class_values(G, H, K.det(H))
        for lam, mu in bipartitions_of(n):
            m = O.bn_module(lam, mu)
            assert O.inner_product(G, ind, m.class_values()) == O.oracle_sign_mult(m, O.parabolic_gens_b(p))


def _a_blocks(subset, n=4):
    out, size = [], 1
    for i in range(1, n):
        if i in subset:
            size += 1
        else:
            out.append(size)
            size = 1
    out.append(size)
    return tuple(sorted(out, reverse=True))


def test_d3_is_a3():
    # D_3 diagram t2 - t1 - t3 read as the A_3 chain s1 - s2 - s3
    relabel = {2: 1, 1: 2, 3: 3}
    subsets = list(chain.from_iterable(combinations((1, 2, 3), r) for r in range(4)))
    d_rows = sorted(
        tuple(sign_mult_d(v, parabolic_d_from_generators(3, J)) for J in subsets) for v in irreps_d(3)
    )
    a_rows = sorted(
        tuple(sign_mult_a(lam, _a_blocks({relabel[j] for j in J})) for J in subsets) for lam in partitions_of(4)
    )
    assert d_rows == a_rows


def test_d2_product():
    # D_2 = A_1 x A_1: the four characters are the sign choices on the factors
    sig = {v: tuple(sign_mult_d(v, parabolic_d_from_generators(2, J)) for J in [(), (1,), (2,), (1, 2)]) for v in irreps_d(2)}
    assert sorted(sig.values()) == sorted([(1, a, b, a * b) for a in (0, 1) for b in (0, 1)])


signed_perms = st.integers(1, 6).flatmap(
    lambda n: st.tuples(st.permutations(range(1, n + 1)), st.lists(st.sampled_from([-1, 1]), min_size=n, max_size=n))
).map(lambda t: np.array([s * x for s, x in zip(t[1], t[0])], dtype=np.int64))


@given(st.data())
def test_kernels_agree(data):
    a = data.draw(signed_perms)
    n = a.shape[0]
    b = data.draw(signed_perms.filter(lambda w: w.shape[0] == n))
    A, B = a[None, :], b[None, :]
    assert np.array_equal(K.compose(A, B), K.compose_np(A, B))
    assert np.array_equal(K.inverse(A), K.inverse_np(A))
    assert np.array_equal(K.encode(A), K.encode_np(A))
    assert np.array_equal(K.det(A), K.det_np(A))
    assert np.array_equal(K.conjugate(A, B), K.conjugate_np(A, B))
    assert np.array_equal(K.compose(A, K.inverse(A))[0], np.arange(1, n + 1))


def test_det_matches_matrix():
    G = O.enumerate_group("B", 3)
    for w in G.elements[::5]:
        m = np.zeros((3, 3), dtype=np.int64)
        for i, x in enumerate(w):
            m[abs(x) - 1, i] = 1 if x > 0 else -1
        assert round(np.linalg.det(m)) == K.det(w[None, :])[0]


def test_numpy_fallback_path():
    code = (
        "from weylsig import _kernels as K; from weylsig import oracle as O;"
        "from weylsig.type_d import IrrepD, ParabolicD, PLUS;"
        "m = O.dn_module(IrrepD.split((1, 1), '+'));"
        "print(K.BACKEND, O.oracle_sign_mult(m, O.parabolic_gens_d(ParabolicD(PLUS, (2, 2)))))"
    )
    env = dict(os.environ, WEYLSIG_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    backend, value = out.stdout.split()
    assert backend == "numpy"
    assert int(value) == sign_mult_d(IrrepD.split((1, 1), "+"), parabolic_d_from_generators(4, [1, 3]))
