import pytest
from hypothesis import given

from weylsig.partitions import conjugate, partitions_of
from weylsig.type_a import (
    SignatureError,
    decompose_a,
    irreps_in_order,
    recover_a,
    sign_mult_a,
    sign_signature_a,
    signature_matrix_a,
)

from strategies import partitions


def test_sign_mult_examples():
    for n in range(1, 6):
        assert sign_mult_a((1,) * n, (n,)) == 1
        for p in partitions_of(n):
            assert sign_mult_a((n,), p) == (1 if p == (1,) * n else 0)
    assert sign_mult_a((2, 1), (2, 1)) == 1


def test_size_mismatch():
    with pytest.raises(ValueError):
        sign_mult_a((2, 1), (2,))


def test_signature_examples():
    assert sign_signature_a((1, 1, 1)).mult == {(3,): 1, (2, 1): 1, (1, 1, 1): 1}
    assert sign_signature_a((3,)).mult == {(3,): 0, (2, 1): 0, (1, 1, 1): 1}
    assert sign_signature_a((2, 1)).mult == {(3,): 0, (2, 1): 1, (1, 1, 1): 2}


def test_recover_examples():
    assert recover_a(sign_signature_a((3,))) == (3,)
    assert recover_a(sign_signature_a((2, 1))) == (2, 1)
    assert recover_a({(1, 1, 1): 2, (2, 1): 1}) == (2, 1)
    with pytest.raises(SignatureError):
        recover_a({(2, 1): 0})


@given(partitions(8, 1))
def test_recover_round_trip(lam):
    assert recover_a(sign_signature_a(lam)) == lam


@pytest.mark.parametrize("n", range(1, 9))
def test_signatures_distinct(n):
    sigs = {tuple(sorted(sign_signature_a(lam).mult.items())) for lam in partitions_of(n)}
    assert len(sigs) == len(partitions_of(n))


@pytest.mark.parametrize("n", range(1, 8))
def test_unitriangular(n):
    order, M = signature_matrix_a(n)
    assert order == irreps_in_order(n)
    for i in range(len(order)):
        assert M[i][i] == 1
        for j in range(i):
            assert M[i][j] == 0


def test_decompose_examples():
    assert decompose_a(sign_signature_a((2, 1))) == {(2, 1): 1}
    vec = {p: sign_mult_a((3,), p) + sign_mult_a((1, 1, 1), p) for p in partitions_of(3)}
    assert decompose_a(vec) == {(3,): 1, (1, 1, 1): 1}
    assert decompose_a({p: 2 * v for p, v in sign_signature_a((2, 1)).mult.items()}) == {(2, 1): 2}


def test_decompose_rejects_outside_cone():
    with pytest.raises(SignatureError):
        decompose_a({(3,): 1, (2, 1): 0, (1, 1, 1): 0})


def test_trivial_is_conjugate_of_sign():
    for lam in partitions_of(5):
        assert sign_mult_a(lam, (1,) * 5) == sign_mult_a(conjugate(lam), (1,) * 5)
