"""Shared hypothesis strategies."""

from hypothesis import strategies as st

from weylsig.partitions import partitions_of


def partitions(max_size: int = 8, min_size: int = 0):
    return st.integers(min_size, max_size).flatmap(lambda n: st.sampled_from(partitions_of(n)))


def contents(max_len: int = 4, max_part: int = 4):
    return st.lists(st.integers(0, max_part), max_size=max_len).map(tuple)
