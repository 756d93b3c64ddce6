import pytest
from hypothesis import given, settings, strategies as st

from loopcrystal.cartan import ISOTROPIC, STRICT, load_quiver, parse_quiver
from loopcrystal.crystal import (
    OUT, ElementaryCrystal, GraphCrystal, TensorCrystal, binf_characterization_check,
    check_axioms, check_normal, generate_subcrystal, iso_check, sources,
)
from loopcrystal.errors import InputError
from loopcrystal.extract import psi_embedding
from loopcrystal.partcomp import PartLabel, empty_label

from conftest import binf, module

TWO = parse_quiver("vertex i loops=1\nvertex j loops=2\n", label="iso-strict")


def failed(rep):
    return {e[0] for e in rep.failures()}


@pytest.mark.parametrize("name, i", [("sl2", 0), ("jordan", 0), ("loop2", 0), ("a1loop", 0), ("a1loop", 1)])
def test_elementary_crystal_axioms_and_normality(name, i):
    B = ElementaryCrystal(load_quiver(name), i, 4)
    assert check_axioms(B).passed
    assert check_normal(B).passed


def test_elementary_sizes():
    # partitions (isotropic) against compositions (strict) of 0..3
    assert len(ElementaryCrystal(TWO, 0, 3).elements()) == 1 + 1 + 2 + 3
    assert len(ElementaryCrystal(TWO, 1, 3).elements()) == 1 + 1 + 2 + 4


def test_isotropic_and_strict_elementary_not_isomorphic():
    res = iso_check(ElementaryCrystal(TWO, 0, 3), ElementaryCrystal(TWO, 1, 3))
    assert not res.ok


def test_iso_check_reflexive():
    C = binf("loop2", 3).crystal
    res = iso_check(C, C)
    assert res.ok
    assert all(k == v for k, v in res.mapping.items())


def _clone(C):
    return GraphCrystal(C.q, C.bound, list(C.elements()), dict(C._wt), dict(C._deg),
                        dict(C._eps), dict(C._phi), dict(C._f), dict(C._e), source=C.source,
                        normal_sides=C.normal_sides)


def test_missing_e_inverse_breaks_a4():
    C = _clone(module("sl2", (2,), 3).crystal)
    b1 = C.f(C.source, 0, 1)
    C._e[(b1, (0, 1))] = None
    assert "A4" in failed(check_axioms(C))


def test_wrong_phi_breaks_a7():
    C = _clone(module("sl2", (1,), 2).crystal)
    C._phi[(C.source, 0)] = 7
    assert "A7" in failed(check_axioms(C))


def test_two_zero_weight_elements_fail_characterization():
    ex = binf("loop2", 2)
    C = _clone(ex.crystal)
    psi = psi_embedding(ex)
    extra = "ghost"
    C._elements.append(extra)
    C._wt[extra] = C.wt(C.source)
    C._deg[extra] = C.degree(C.source)
    for i in C.q.vertices:
        C._eps[(extra, i)] = C.eps(C.source, i)
        C._phi[(extra, i)] = C.phi(C.source, i)
        psi[i][extra] = (PartLabel(C.q.classify_vertex(i), (1,)), C.source)
    rep = binf_characterization_check(C, C.source, psi)
    assert "2-unique-zero" in failed(rep)


def test_tensor_routing_on_sources():
    q = load_quiver("jordan")
    Bi = ElementaryCrystal(q, 0, 4)
    T = TensorCrystal(Bi, Bi)
    e = empty_label(ISOTROPIC)
    for l in (1, 2):
        assert T.f((e, e), 0, l) == (PartLabel(ISOTROPIC, (l,)), e)


def test_tensor_weight_additive_and_real_eps():
    q = load_quiver("a1loop")
    A, B = ElementaryCrystal(q, 0, 3), ElementaryCrystal(q, 1, 3)
    T = TensorCrystal(A, B)
    for p in T.elements():
        assert T.wt(p) == tuple(x + y for x, y in zip(A.wt(p[0]), B.wt(p[1])))
        assert T.eps(p, 0) == max(B.eps(p[1], 0), A.eps(p[0], 0) - B.wt(p[1])[0])


def test_tensor_rejects_bad_rule_and_checks_right_factor():
    q = load_quiver("jordan")
    Bi = ElementaryCrystal(q, 0, 2)
    with pytest.raises(InputError):
        TensorCrystal(Bi, Bi, rule="sideways")
    with pytest.raises(InputError):
        TensorCrystal(Bi, Bi, check_right=True)


def test_generate_subcrystal_depth_zero():
    C = binf("jordan", 3).crystal
    assert len(generate_subcrystal(C, C.source, 0).elements()) == 1
    assert len(generate_subcrystal(C, C.source, 2).elements()) == 1 + 1 + 2


def _components(T):
    elems = T.elements()
    parent = {p: p for p in elems}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for p in elems:
        for (i, l) in T.indices():
            y = T.f(p, i, l)
            if y is not None and y is not OUT:
                parent[find(p)] = find(y)
    comps = {}
    for p in elems:
        comps.setdefault(find(p), []).append(p)
    return sorted(len(c) for c in comps.values())


def test_sl2_tensor_square_splits():
    C = module("sl2", (1,), 2).crystal
    T = TensorCrystal(C, C)
    assert _components(T) == [1, 3]
    assert check_axioms(T).passed
    assert len(sources(T)) == 2


@pytest.mark.parametrize("name", ["sl2", "a2", "a1loop", "jordan", "loop2"])
def test_tensor_with_module_on_the_right_is_a_crystal(name):
    q = load_quiver(name)
    lam = tuple(1 for _ in q.vertices)
    M = module(name, lam, 3).crystal
    for i in q.vertices:
        T = TensorCrystal(ElementaryCrystal(q, i, 3), M, check_right=True)
        assert check_axioms(T).passed


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["sl2", "a2", "a1loop"]), st.integers(0, 1), st.integers(0, 2), st.integers(0, 2))
def test_tensor_of_modules_satisfies_axioms(name, a, b, c):
    q = load_quiver(name)
    lam1 = tuple([a, b][: q.n]) if q.n > 1 else (a + 1,)
    lam2 = tuple([c, 1][: q.n]) if q.n > 1 else (c,)
    if not any(lam1):
        lam1 = tuple(1 for _ in q.vertices)
    T = TensorCrystal(module(name, lam1, 2).crystal, module(name, lam2, 2).crystal, check_right=True)
    assert check_axioms(T).passed


def test_check_normal_catches_stored_eps():
    C = _clone(binf("loop2", 3).crystal)
    b = C.f(C.source, 0, 1)
    C._eps[(b, 0)] = empty_label(STRICT)
    assert "eps" in failed(check_normal(C))
