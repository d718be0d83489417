import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from weylsig.partitions import (
    PartitionError,
    bipartitions_of,
    concat,
    conjugate,
    effective_length,
    entrywise_sum,
    format_bipartition,
    format_composition,
    format_partition,
    hook_dimension,
    lex_compare,
    parse_bipartition,
    parse_composition,
    parse_partition,
    partition,
    partitions_of,
)

from strategies import partitions


def _count(n, m=None):
    m = n if m is None else m
    if n == 0:
        return 1
    return sum(_count(n - k, k) for k in range(1, min(n, m) + 1))


@pytest.mark.parametrize("p,expected", [((), ()), ((3,), (1, 1, 1)), ((2, 1), (2, 1)), ((4, 2, 1), (3, 2, 1, 1))])
def test_conjugate_examples(p, expected):
    assert conjugate(p) == expected


@pytest.mark.parametrize("a,b,expected", [((2, 1), (2, 1), 0), ((3,), (2, 1), 1), ((2, 1), (2,), 1), ((1, 1), (2,), -1)])
def test_lex_compare_examples(a, b, expected):
    assert lex_compare(a, b) == expected


def test_concat_and_sum():
    assert concat((1, 0), (2,)) == (1, 0, 2)
    assert concat((), (3,)) == (3,)
    assert concat((2, 1), (1, 1)) == (2, 1, 1, 1)
    assert entrywise_sum((1, 1), (2,)) == (3, 1)
    assert entrywise_sum((), ()) == ()
    assert entrywise_sum((0, 2), (1, 0, 1)) == (1, 2, 1)


def test_effective_length():
    assert effective_length((2, 0, 1, 0, 0)) == 3
    assert effective_length((0, 0)) == 0
    assert effective_length((1, 1, 1)) == 3


def test_partitions_of_small():
    assert partitions_of(0) == [()]
    assert partitions_of(3) == [(3,), (2, 1), (1, 1, 1)]
    assert len(partitions_of(8)) == 22


@pytest.mark.parametrize("n", range(13))
def test_partitions_of_counts_and_order(n):
    ps = partitions_of(n)
    assert len(ps) == _count(n)
    assert all(lex_compare(a, b) > 0 for a, b in zip(ps, ps[1:]))


def test_partition_cap():
    with pytest.raises(PartitionError):
        partitions_of(31)


def test_partition_normalizes_zeros():
    assert partition((2, 1, 0, 0)) == (2, 1)
    with pytest.raises(PartitionError):
        partition((1, 2))


@given(partitions(12))
def test_conjugate_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert sum(conjugate(lam)) == sum(lam)


def test_lex_total_order_exhaustive():
    for n in range(9):
        ps = partitions_of(n)
        for a, b in itertools.product(ps, repeat=2):
            assert lex_compare(a, b) == -lex_compare(b, a)
            assert (lex_compare(a, b) == 0) == (a == b)
        for a, b, c in itertools.product(ps[:8], repeat=3):
            if lex_compare(a, b) > 0 and lex_compare(b, c) > 0:
                assert lex_compare(a, c) > 0


@given(partitions(10))
def test_text_round_trip(lam):
    assert parse_partition(format_partition(lam)) == lam


@given(st.lists(st.integers(0, 5), max_size=5).map(tuple))
def test_composition_round_trip(c):
    assert parse_composition(format_composition(c)) == c


def test_bipartition_text():
    assert parse_bipartition("[2,1]|[1]") == ((2, 1), (1,))
    assert format_bipartition((), (3,)) == "[]|[3]"
    assert parse_partition("[]") == ()


@pytest.mark.parametrize("bad", ["[1,2]", "[2,", "(1,1)", "[a]"])
def test_bad_partition_text(bad):
    with pytest.raises(PartitionError):
        parse_partition(bad)


def test_hook_dimension():
    assert hook_dimension((3, 2, 1)) == 16
    assert sum(hook_dimension(p) ** 2 for p in partitions_of(6)) == 720


def test_bipartitions_count():
    # number of irreducibles of B_n
    assert [len(bipartitions_of(n)) for n in range(6)] == [1, 2, 5, 10, 20, 36]
