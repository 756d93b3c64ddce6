import random

import pytest
from hypothesis import given, settings, strategies as st

from loopcrystal import linalg
from loopcrystal.cartan import parse_quiver
from loopcrystal.errors import InputError
from loopcrystal.freealg import Element, FormParams, FreeAlgebra, parse_param_override, words_of_weight
from loopcrystal.partcomp import enumerate_labels
from loopcrystal.scalars import RationalFunction, valuation_at_vinv, vpow

from conftest import algebra

ONE = RationalFunction(1)


def E(n, *letters):
    return Element.word(n, tuple(letters))


def test_multiplication_basics():
    A = algebra("jordan")
    x = E(1, (0, 2))
    assert Element.one(1) * x == x
    assert E(1, (0, 1)) * E(1, (0, 1)) == E(1, (0, 1), (0, 1))
    y, z = E(1, (0, 1)), E(1, (0, 3))
    assert (x + y * y) * z == x * z + y * y * z
    assert A.n == 1


def test_coproduct_of_generators():
    A = algebra("loop2")
    assert A.coproduct(E(1, (0, 1))) == {(((0, 1),), ()): ONE, ((), ((0, 1),)): ONE}
    d = A.coproduct(E(1, (0, 2)))
    assert d[(((0, 2),), ())] == ONE
    assert d[((), ((0, 2),))] == ONE
    assert d[(((0, 1),), ((0, 1),))] == vpow(A.q.v_power(0))
    assert len(d) == 3


def test_coproduct_cross_term_twist():
    A = algebra("a2")
    d = A.coproduct(E(2, (0, 1), (1, 1)))
    assert len(d) == 4
    assert d[(((0, 1),), ((1, 1),))] == ONE
    assert d[(((1, 1),), ((0, 1),))] == vpow(A.q.form(0, 1))


def test_pairing_examples():
    A = algebra("loop2")
    nu1 = A.params[(0, 1)]
    assert A.pair(E(1, (0, 1)), E(1, (0, 1))) == nu1
    assert A.pair(E(1, (0, 1), (0, 1)), E(1, (0, 2))) == vpow(A.q.v_power(0)) * nu1 * nu1
    assert not A.pair(E(1, (0, 1)), E(1, (0, 2)))
    B = algebra("a2")
    assert not B.pair(E(2, (0, 1)), E(2, (1, 1)))


def test_relations():
    q = parse_quiver("vertex a loops=1\nvertex b loops=0\n")
    A = FreeAlgebra(q)
    s = A.serre_element((0, 1), 1)
    assert s == E(2, (0, 1), (1, 1)) - E(2, (1, 1), (0, 1))
    assert A.in_radical(s)
    with pytest.raises(InputError):
        algebra("sl2").serre_element((0, 1), 0)
    J = algebra("jordan")
    c = J.isotropic_commutator(0, 1, 2)
    assert c == E(1, (0, 1), (0, 2)) - E(1, (0, 2), (0, 1))
    assert J.in_radical(c)


@pytest.mark.parametrize("name, nu, dim", [
    ("sl2", (2,), 1), ("loop2", (3,), 4), ("jordan", (3,), 3), ("a2", (2, 2), 3), ("a1loop", (2, 2), 7),
])
def test_dimensions(name, nu, dim):
    assert algebra(name).dim(nu) == dim


@pytest.mark.parametrize("name", ["a2", "a1loop", "sl2"])
def test_all_relations_are_radical(name):
    A = algebra(name)
    for nu in [(3,), (1, 2), (2, 1), (2, 2)]:
        if len(nu) != A.n:
            continue
        for r in A.relations_of_weight(nu):
            assert A.in_radical(r)


def test_primitive_low_level():
    A = algebra("loop2")
    a, tau = A.primitive(0, 1)
    assert a == E(1, (0, 1))
    assert tau == A.params[(0, 1)]


@pytest.mark.parametrize("l", [1, 2, 3, 4])
def test_tau_values(l):
    tau = algebra("jordan").tau(0, l)
    assert tau == RationalFunction(1) / (l * (1 - vpow(-l)))
    val = valuation_at_vinv(algebra("loop2").tau(0, l))
    assert val.order == 0 and val.leading == 1


@pytest.mark.parametrize("name, i", [("loop2", 0), ("jordan", 0), ("a1loop", 1)])
def test_primitivity(name, i):
    A = algebra(name)
    for l in range(2, 4):
        a, _ = A.primitive(i, l)
        d = A.coproduct(a)
        for k in range(1, l):
            lw = words_of_weight(A.q, A.q.unit(i, k))
            rw = words_of_weight(A.q, A.q.unit(i, l - k))
            for w1 in lw:
                for w2 in rw:
                    s = RationalFunction(0)
                    for (left, right), c in d.items():
                        if sum(h for _, h in left) == k:
                            s = s + c * A.pair_words(left, w1) * A.pair_words(right, w2)
                    assert not s


def test_derivations_on_primitives():
    A = algebra("a1loop")
    for l in (1, 2):
        for k in (1, 2):
            x = A.coords(A.primitive(1, k)[0])
            out = linalg.mat_vec(A.delta_upper(1, l, A.q.unit(1, k)), x)
            if l == k:
                assert out == [RationalFunction(1)]
            else:
                assert out == [] or not any(out)
    # the real vertex generator has no component at the loop vertex
    assert A.delta_upper(1, 1, A.q.unit(0, 1)) == []


def test_a_word_derivation_cumulative_exponent():
    A = algebra("loop2")
    vi = A.q.v_power(0)
    c = (1, 2, 1)
    x = A.coords(A.a_word(0, c))
    out = linalg.mat_vec(A.delta_upper(0, 1, (4,)), x)
    want = [vpow(0) * p + vpow(2 * vi * 3) * q for p, q in
            zip(A.coords(A.a_word(0, (2, 1))), A.coords(A.a_word(0, (1, 2))))]
    assert out == want


@pytest.mark.parametrize("name, i", [("loop2", 0), ("a1loop", 1)])
def test_a_basis_gram(name, i):
    A = algebra(name)
    kind = A.q.classify_vertex(i)
    for l in (2, 3):
        labels = enumerate_labels(kind, l)
        elems = [A.a_word(i, c.parts) for c in labels]
        G = [[A.pair(x, y) for y in elems] for x in elems]
        assert linalg.rank(G) == len(labels)
        if name == "loop2":
            for r, row in enumerate(G):
                for s, g in enumerate(row):
                    val = valuation_at_vinv(g)
                    if r == s:
                        assert val.order == 0 and val.leading == 1
                    else:
                        assert val.order >= 1


def test_star_and_bar():
    A = algebra("a2")
    assert E(2, (0, 1), (1, 1)).star() == E(2, (1, 1), (0, 1))
    x = E(2, (0, 1), (1, 1), (0, 1)) + E(2, (1, 1), (0, 1), (0, 1)).scale(vpow(3))
    assert x.star().star() == x
    J = algebra("loop2")
    for l in (1, 2, 3):
        a = J.coords(J.primitive(0, l)[0])
        assert J.bar_coords((l,), a) == a
    for nu in [(2, 1), (1, 2), (2, 2)]:
        A.check_descends(nu, "star")
        A.check_descends(nu, "bar")


def test_bad_params():
    q = algebra("jordan").q
    with pytest.raises(InputError):
        parse_param_override("0=1", q)
    with pytest.raises(InputError):
        FormParams(q, {(0, 1): "0"})
    assert parse_param_override("a,2=1/(1-v^-2)", q)[0] == (0, 2)


# -- properties --------------------------------------------------------------

_SMALL = [RationalFunction(0), RationalFunction(1), RationalFunction(-2), vpow(1), vpow(-1) + 3]


def _random_element(A, nu, rng):
    words = words_of_weight(A.q, nu)
    terms = {w: rng.choice(_SMALL) for w in rng.sample(words, min(3, len(words)))}
    return Element(nu, {w: c for w, c in terms.items() if c})


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["a2", "a1loop", "loop2", "jordan"]), st.integers(1, 4), st.integers(0, 10 ** 6))
def test_pairing_symmetric(name, h, seed):
    A = algebra(name)
    rng = random.Random(seed)
    from loopcrystal.cartan import weights_of_height
    nu = rng.choice(list(weights_of_height(A.n, h)))
    x, y = _random_element(A, nu, rng), _random_element(A, nu, rng)
    assert A.pair(x, y) == A.pair(y, x)
    other = rng.choice(list(weights_of_height(A.n, h)))
    if other != nu:
        assert not A.pair(x, _random_element(A, other, rng))
