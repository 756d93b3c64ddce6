import pytest
from hypothesis import given, strategies as st

from loopcrystal.cartan import (BUILTIN_QUIVERS, ISOTROPIC, REAL, STRICT, QuiverDatum, load_quiver,
                                pairing, parse_quiver, render_quiver)
from loopcrystal.errors import InputError, QuiverParseError


def one_vertex(loops):
    return QuiverDatum(("e",), ((loops,),))


def test_diagonal_of_form():
    assert load_quiver("jordan").form(0, 0) == 0
    assert load_quiver("loop2").form(0, 0) == -2
    assert load_quiver("a2").form(0, 1) == -1


def test_classification():
    assert one_vertex(0).classify_vertex(0) == REAL
    assert one_vertex(1).classify_vertex(0) == ISOTROPIC
    assert one_vertex(3).classify_vertex(0) == STRICT
    with pytest.raises(InputError):
        one_vertex(1).classify_vertex(4)


def test_pairing_with_module_weight():
    q = load_quiver("a2")
    assert pairing(q.unit(0), q.unit(1)) == 0
    assert q.module_weight((1, 0), (0, 1))[0] == 2  # 1 - (1,2)
    assert pairing(q.zero(), (3, -2)) == 0


def test_v_powers_and_dominance():
    assert load_quiver("jordan").v_power(0) == 0
    assert load_quiver("loop2").v_power(0) == -1
    assert load_quiver("a2").is_dominant((1, 0))
    assert not load_quiver("a2").is_dominant((1, -1))


def test_alpha_is_column_of_c():
    q = load_quiver("a1loop")
    assert q.alpha(0) == (2, -1)
    assert q.alpha(1) == (-1, 0)


def test_builtins_load_and_round_trip():
    for name in BUILTIN_QUIVERS:
        q = load_quiver(name)
        assert parse_quiver(render_quiver(q)).arrows == q.arrows


@pytest.mark.parametrize("text", [
    "vertex a loops=-1\n",
    "vertex a loops=1\nedge a b mult=1\n",
    "vertex a loops=x\n",
    "vertex a\nvertex a\n",
    "node a\n",
    "",
])
def test_parse_errors(text):
    with pytest.raises(QuiverParseError):
        parse_quiver(text)


def test_missing_file():
    with pytest.raises(InputError):
        load_quiver("/nonexistent/quiver.txt")


weights = st.lists(st.integers(-3, 3), min_size=2, max_size=2).map(tuple)


@given(weights, weights)
def test_euler_form_symmetric(a, b):
    q = load_quiver("a1loop")
    assert q.euler_form(a, b) == q.euler_form(b, a)


@given(st.integers(1, 5), st.integers(0, 1), st.integers(0, 1))
def test_level_scaling(l, i, j):
    q = load_quiver("a1loop")
    assert q.euler_form(q.unit(i, l), q.unit(j)) == l * q.form(i, j)
