from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from loopcrystal.errors import InputError
from loopcrystal.scalars import (FieldScalar, RationalFunction, parse_scalar, render_scalar,
                                 series_expand, valuation_at_vinv, vpow)
from loopcrystal.partcomp import partition_count

v = vpow(1)
vinv = vpow(-1)


def test_sqrt_squares_to_rational():
    assert FieldScalar.sqrt(2) * FieldScalar.sqrt(2) == FieldScalar.coerce(2)


def test_geometric_minus_one():
    lhs = 1 / (1 - vinv) - 1
    assert lhs == vinv / (1 - vinv)


def test_radicals_stay_independent():
    s = FieldScalar.sqrt(2) + FieldScalar.sqrt(3)
    assert len(s.terms) == 2
    assert not s.is_rational()


@pytest.mark.parametrize("x, order, lead", [
    (1 / (1 - vpow(-2)), 0, 1),
    (vpow(-3) * (1 + vinv), 3, 1),
    (RationalFunction(Fraction(1, 3)) / (1 - vpow(-3)), 0, Fraction(1, 3)),
])
def test_valuation_examples(x, order, lead):
    val = valuation_at_vinv(x)
    assert val.order == order
    assert val.leading == FieldScalar.coerce(lead)


def test_series_examples():
    assert series_expand(1 / (1 - vinv), 4) == [1, 1, 1, 1]
    assert series_expand(RationalFunction(1), 3) == [1, 0, 0]
    two = 1 / ((1 - vinv) * (1 - vpow(-2)))
    assert series_expand(two, 4) == [1, 1, 2, 2]


def test_series_errors():
    with pytest.raises(ValueError):
        series_expand(v, 3)
    with pytest.raises(ValueError):
        series_expand(FieldScalar.sqrt(2), 3)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        RationalFunction(1) / RationalFunction(0)


def test_parse_render_round_trip():
    for text in ["v^2-1", "(1+v^-1)/(1-v^-2)", "sqrt(2)*v", "3/4", "sqrt(1/2)*(v+1)"]:
        x = parse_scalar(text)
        assert parse_scalar(render_scalar(x)) == x


def test_parse_rejects_garbage():
    for bad in ["v^", "(1+v", "sqrt(v)", "2**3", "w"]:
        with pytest.raises(InputError):
            parse_scalar(bad)


def test_bar_is_involution_and_inverts_v():
    x = (1 + 2 * v) / (3 - vpow(-2))
    assert x.bar().bar() == x
    assert v.bar() == vinv


# -- property tests ---------------------------------------------------------

coef = st.integers(-4, 4)
rf = st.builds(lambda a, b, c, d, e: (a + b * v + c * vpow(-2)) / (1 + d * vinv + e * vpow(2)),
               coef, coef, coef, st.integers(-1, 1), st.integers(0, 1))
fs = st.builds(lambda x, y, d: FieldScalar.coerce(x) + FieldScalar.sqrt(d) * y,
               rf, rf, st.sampled_from([2, 3, 6, Fraction(1, 2)]))


@settings(max_examples=60, deadline=None)
@given(fs, fs, fs)
def test_field_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    if a:
        assert a * a.inverse() == FieldScalar.coerce(1)


@settings(max_examples=60, deadline=None)
@given(rf, rf)
def test_valuation_is_multiplicative(a, b):
    if not a or not b:
        return
    va, vb, vab = valuation_at_vinv(a), valuation_at_vinv(b), valuation_at_vinv(a * b)
    assert vab.order == va.order + vb.order
    assert vab.leading == va.leading * vb.leading


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 6))
def test_partition_series_nonnegative(l):
    x = RationalFunction(1)
    for k in range(1, l + 1):
        x = x / (1 - vpow(-k))
    s = series_expand(x, 10)
    assert all(c >= 0 and c.denominator == 1 for c in s)
    # coefficient of v^-n counts partitions of n into parts <= l, i.e. p(n) once n <= l
    assert s[1:l + 1] == [partition_count(n) for n in range(1, l + 1)]
