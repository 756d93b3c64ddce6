import pytest
from hypothesis import given, strategies as st

from loopcrystal.cartan import ISOTROPIC, REAL, STRICT
from loopcrystal.errors import InputError, LabelError
from loopcrystal.partcomp import (PartLabel, dominance_less, enumerate_labels, partition_count, prepend,
                                  remove_first, remove_part, reverse)


def labels(kind, l):
    return {c.parts for c in enumerate_labels(kind, l)}


def test_enumeration_examples():
    assert labels(STRICT, 3) == {(3,), (2, 1), (1, 2), (1, 1, 1)}
    assert labels(ISOTROPIC, 3) == {(3,), (2, 1), (1, 1, 1)}
    assert labels(REAL, 5) == {(5,)}


def test_surgery_examples():
    assert prepend(2, PartLabel(STRICT, (1, 3))).parts == (2, 1, 3)
    assert prepend(2, PartLabel(ISOTROPIC, (3, 1))).parts == (3, 2, 1)
    assert reverse(PartLabel(STRICT, (2, 1, 3))).parts == (3, 1, 2)


def test_dominance():
    assert dominance_less((1, 1, 1), (3,))
    assert not dominance_less((2, 1), (1, 2))
    assert dominance_less((2, 1), (2, 1))
    with pytest.raises(InputError):
        dominance_less((1,), (2,))


def test_bad_labels():
    with pytest.raises(LabelError):
        PartLabel(STRICT, (0, 1))
    with pytest.raises(LabelError):
        remove_part(PartLabel(ISOTROPIC, (2,)), 1)


@pytest.mark.parametrize("l", range(1, 9))
def test_counts_against_oracles(l):
    assert len(enumerate_labels(STRICT, l)) == 2 ** (l - 1)
    assert len(enumerate_labels(ISOTROPIC, l)) == partition_count(l)


def test_partition_count_values():
    assert [partition_count(n) for n in range(1, 8)] == [1, 2, 3, 5, 7, 11, 15]


comp = st.lists(st.integers(1, 4), max_size=5).map(tuple)


@given(st.integers(1, 4), comp)
def test_prepend_remove_round_trip(l, parts):
    c = PartLabel(STRICT, parts)
    assert remove_first(prepend(l, c)) == (l, c)
    lam = PartLabel(ISOTROPIC, parts)
    assert remove_part(prepend(l, lam), l) == lam


@given(comp)
def test_reverse_involution(parts):
    c = PartLabel(STRICT, parts)
    assert reverse(reverse(c)) == c
