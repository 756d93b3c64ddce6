"""Verification suites behind ``loopcrystal verify``.

Each suite appends ``Entry`` rows to a report.  Status is one of ``pass``,
``fail`` (hard), ``inconclusive`` (truncation) or ``open`` (a probe whose
outcome is recorded but not required).  Rendering is deterministic for a
given configuration and seed: no timings, no hash-ordered iteration.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .cartan import QuiverDatum, add, iter_indices, sub, weights_up_to
from .crystal import (ElementaryCrystal, TensorCrystal, associativity_probe, binf_characterization_check,
                      check_axioms, check_normal, generate_subcrystal, iso_check)
from .errors import LoopCrystalError
from .extract import crystal_binf, crystal_module, psi_embedding, star_map
from .freealg import FormParams, FreeAlgebra
from .lattice import order
from .partcomp import labels_up_to
from .scalars import RationalFunction, series_expand, vpow

SUITES = ("axioms", "normality", "adjointness", "kashiprop", "hypo",
          "closed", "characterization", "associativity")


@dataclass
class Entry:
    suite: str
    quiver: str
    check: str
    status: str
    detail: str = ""


@dataclass
class VerifyReport:
    entries: list[Entry] = field(default_factory=list)

    def add(self, *args) -> None:
        self.entries.append(Entry(*args))

    @property
    def hard_failures(self) -> list[Entry]:
        return [e for e in self.entries if e.status == "fail"]

    def render(self) -> str:
        lines = []
        for e in self.entries:
            if e.status == "inconclusive":
                continue
            tail = f"  {e.detail}" if e.detail else ""
            lines.append(f"[{e.suite}] {e.quiver}: {e.check} ... {e.status.upper()}{tail}")
        incon = [e for e in self.entries if e.status == "inconclusive"]
        if incon:
            lines.append("inconclusive:")
            lines.extend(f"  [{e.suite}] {e.quiver}: {e.check}  {e.detail}" for e in incon)
        n = {s: sum(1 for e in self.entries if e.status == s)
             for s in ("pass", "fail", "inconclusive", "open")}
        lines.append(f"summary: {n['pass']} pass, {n['fail']} fail, "
                     f"{n['inconclusive']} inconclusive, {n['open']} open")
        return "\n".join(lines) + "\n"


@dataclass
class VerifyConfig:
    quivers: list[QuiverDatum]
    bound: int = 4
    seed: int = 0
    suites: tuple[str, ...] = SUITES
    overrides: dict = field(default_factory=dict)
    samples: int = 100


def small_dominant(q: QuiverDatum) -> list[tuple[int, ...]]:
    """Fundamental weights and their pairwise sums."""
    out = []
    for w in weights_up_to(q.n, 2):
        if sum(w) > 0 and w not in out:
            out.append(w)
    return out


class _Context:
    """Per-quiver cache of the algebra and the extracted crystals."""

    def __init__(self, q: QuiverDatum, overrides: dict):
        self.q = q
        self.A = FreeAlgebra(q, FormParams(q, overrides))
        self._binf: dict = {}
        self._mods: dict = {}

    def binf(self, bound):
        if bound not in self._binf:
            self._binf[bound] = crystal_binf(self.A, bound)
        return self._binf[bound]

    def module(self, lam, bound):
        key = (tuple(lam), bound)
        if key not in self._mods:
            self._mods[key] = crystal_module(self.A, lam, bound)
        return self._mods[key]


def _name(q: QuiverDatum) -> str:
    return q.label or q.describe()


# ---------------------------------------------------------------------------
# random lattice elements


_A_COEFFS = None


def _a_coeffs():
    global _A_COEFFS
    if _A_COEFFS is None:
        vi = vpow(-1)
        _A_COEFFS = [RationalFunction(1), RationalFunction(-1), RationalFunction(2),
                     vi, -vi, 1 + vi, vi * vi, RationalFunction(3) * vi, 1 / (1 - vi)]
    return _A_COEFFS


def random_lattice_vector(rng: random.Random, ex, nu) -> list:
    """A random A-combination of the crystal representatives of degree nu."""
    members = [b for b in ex.crystal.elements() if ex.crystal.degree(b) == nu]
    coeffs = _a_coeffs()
    d = ex.dims[nu]
    out = [RationalFunction(0)] * d
    for b in members:
        if rng.random() < 0.3:
            continue
        c = rng.choice(coeffs)
        out = [x + c * y for x, y in zip(out, ex.reps[b])]
    return out


def random_algebra_vector(rng: random.Random, dim: int) -> list:
    pool = [RationalFunction(0), RationalFunction(1), RationalFunction(-2), vpow(1), vpow(-2),
            1 + vpow(3), RationalFunction(Fraction(1, 2))]
    return [rng.choice(pool) for _ in range(dim)]


# ---------------------------------------------------------------------------
# suites


def suite_axioms(ctx: _Context, cfg: VerifyConfig, rep: VerifyReport) -> None:
    q, name = ctx.q, _name(ctx.q)
    B = ctx.binf(cfg.bound).crystal
    r = check_axioms(B)
    _fold(rep, "axioms", name, f"B(inf) h<={cfg.bound}", r)
    for lam in small_dominant(q):
        r = check_axioms(ctx.module(lam, cfg.bound).crystal)
        _fold(rep, "axioms", name, f"B{list(lam)} d<={cfg.bound}", r)
    for lam in small_dominant(q)[:q.n]:
        for mu in small_dominant(q)[:q.n]:
            T = TensorCrystal(ctx.module(lam, 2).crystal, ctx.module(mu, 2).crystal)
            _fold(rep, "axioms", name, f"B{list(lam)}(x)B{list(mu)}", check_axioms(T))


def suite_normality(ctx: _Context, cfg: VerifyConfig, rep: VerifyReport) -> None:
    name = _name(ctx.q)
    _fold(rep, "normality", name, f"B(inf) h<={cfg.bound}", check_normal(ctx.binf(cfg.bound).crystal))
    for lam in small_dominant(ctx.q):
        _fold(rep, "normality", name, f"B{list(lam)} d<={cfg.bound}",
              check_normal(ctx.module(lam, cfg.bound).crystal))


def _fold(rep: VerifyReport, suite: str, name: str, label: str, r) -> None:
    fails = r.failures()
    if fails:
        rep.add(suite, name, label, "fail", "; ".join(f"{a}: {d}" for a, _, d in fails))
    else:
        rep.add(suite, name, label, "pass", "")
    for a, _, d in r.inconclusive():
        rep.add(suite, name, f"{label} {a}", "inconclusive", d)


def adjointness_samples(ex, rng: random.Random, n: int):
    """Yield (kind, order of the difference) for n sampled lattice pairs."""
    q = ex.q
    C, S = ex.crystal, ex.space
    slots = []
    for nu, cnt in sorted(ex.count_by_degree().items()):
        if not cnt:
            continue
        for (i, l) in iter_indices(q, C.bound):
            nu2 = add(nu, q.unit(i, l))
            if sum(nu2) <= C.bound and ex.count_by_degree().get(nu2):
                slots.append((nu, i, l, nu2))
    if not slots:
        return
    for _ in range(n):
        nu, i, l, nu2 = rng.choice(slots)
        u = random_lattice_vector(rng, ex, nu)
        w = random_lattice_vector(rng, ex, nu2)
        lhs = S.pair(nu2, S.kashiwara_f(i, l, nu, u), w)
        rhs = S.pair(nu, u, S.kashiwara_e(i, l, nu2, w))
        yield order(lhs - rhs)


def suite_adjointness(ctx: _Context, cfg: VerifyConfig, rep: VerifyReport) -> None:
    q, name = ctx.q, _name(ctx.q)
    rng = random.Random(f"{cfg.seed}:adjointness:{name}")
    orders = list(adjointness_samples(ctx.binf(cfg.bound), rng, cfg.samples))
    bad = [o for o in orders if o < 1]
    rep.add("adjointness", name, f"{{f~u,w}} = {{u,e~w}} mod v^-1 ({len(orders)} pairs)",
            "fail" if bad else "pass", f"min valuation {min(orders, default='-')}")
    mods = [lam for lam in small_dominant(q)]
    per = max(1, -(-cfg.samples // len(mods)))
    orders = []
    for lam in mods:
        orders += list(adjointness_samples(ctx.module(lam, cfg.bound), rng, per))
    bad = [o for o in orders if o < 1]
    rep.add("adjointness", name, f"(f~u,w) = (u,e~w) mod v^-1 ({len(orders)} pairs)",
            "fail" if bad else "pass", f"min valuation {min(orders, default='-')}")


def leibniz_samples(A: FreeAlgebra, rng: random.Random, bound: int, n: int):
    """Check delta^{i,l}(yz) = delta(y) z + v^{l(i,|y|)} y delta(z) on random y, z.

    Yields True/False per sample.
    """
    q = A.q
    degs = [nu for nu in weights_up_to(q.n, bound) if A.dim(nu)]
    pairs = [(a, b) for a in degs for b in degs if sum(a) + sum(b) <= bound and sum(add(a, b)) > 0]
    for _ in range(n):
        nu1, nu2 = rng.choice(pairs)
        nu = add(nu1, nu2)
        idx = [(i, l) for (i, l) in iter_indices(q, bound) if nu[i] >= l]
        if not idx:
            continue
        i, l = rng.choice(idx)
        y = random_algebra_vector(rng, A.dim(nu1))
        z = random_algebra_vector(rng, A.dim(nu2))
        yz = A.multiply_coords(nu1, y, nu2, z)
        lhs = linalg.mat_vec(A.delta_upper(i, l, nu), yz)
        tgt = sub(nu, q.unit(i, l))
        rhs = [RationalFunction(0)] * A.dim(tgt)
        if nu1[i] >= l:
            dy = linalg.mat_vec(A.delta_upper(i, l, nu1), y)
            rhs = [a + b for a, b in zip(rhs, A.multiply_coords(sub(nu1, q.unit(i, l)), dy, nu2, z))]
        if nu2[i] >= l:
            dz = linalg.mat_vec(A.delta_upper(i, l, nu2), z)
            t = A.multiply_coords(nu1, y, sub(nu2, q.unit(i, l)), dz)
            c = vpow(l * q.form_with_vertex(i, nu1))
            rhs = [a + c * b for a, b in zip(rhs, t)]
        yield lhs == rhs


def a_word_samples(A: FreeAlgebra, rng: random.Random, bound: int, n: int):
    """delta^{i,l} on random combinations of a_{i,c}, against the closed formula
    with exponent 2l (c_1 + ... + c_{k-1}) on v_i."""
    q = A.q
    imag = [i for i in q.vertices if q.is_imaginary(i)]
    if not imag:
        return
    vi = {i: q.v_power(i) for i in imag}
    for _ in range(n):
        i = rng.choice(imag)
        size = rng.randint(1, bound)
        kind = q.classify_vertex(i)
        labels = [c for c in labels_up_to(kind, size) if c.size == size]
        nu = q.unit(i, size)
        l = rng.randint(1, size)
        x = [RationalFunction(0)] * A.dim(nu)
        rhs = [RationalFunction(0)] * A.dim(sub(nu, q.unit(i, l)))
        for c in labels:
            r = rng.choice([RationalFunction(0), RationalFunction(1), vpow(1), RationalFunction(-3)])
            if not r:
                continue
            x = [a + r * b for a, b in zip(x, A.coords(A.a_word(i, c.parts)))]
            for k, ck in enumerate(c.parts):
                if ck != l:
                    continue
                rest = c.parts[:k] + c.parts[k + 1:]
                coef = r * vpow(vi[i] * 2 * l * sum(c.parts[:k]))
                rhs = [a + coef * b for a, b in zip(rhs, A.coords(A.a_word(i, rest)))]
        lhs = linalg.mat_vec(A.delta_upper(i, l, nu), x)
        yield lhs == rhs


def verma_samples(ctx: _Context, rng: random.Random, bound: int):
    """verma_action against the commutation oracle on every piece of height <= bound."""
    from .kashiwara import SimpleModule
    q = ctx.q
    for lam in small_dominant(q)[:q.n]:
        M = SimpleModule(ctx.A, lam)
        for nu in weights_up_to(q.n, bound):
            if not sum(nu) or not ctx.A.dim(nu):
                continue
            for (i, l) in iter_indices(q, bound):
                if nu[i] < l:
                    continue
                D = M.verma_action(i, l, nu)
                x = random_algebra_vector(rng, ctx.A.dim(nu))
                yield linalg.mat_vec(D, x) == M.verma_action_by_commutation(i, l, nu, x)


def suite_kashiprop(ctx: _Context, cfg: VerifyConfig, rep: VerifyReport) -> None:
    name = _name(ctx.q)
    rng = random.Random(f"{cfg.seed}:kashiprop:{name}")
    res = list(leibniz_samples(ctx.A, rng, cfg.bound, cfg.samples))
    rep.add("kashiprop", name, f"identity (1), {len(res)} samples",
            "pass" if all(res) else "fail", f"{res.count(False)} mismatches" if not all(res) else "")
    res = list(a_word_samples(ctx.A, rng, cfg.bound, cfg.samples))
    if res:
        rep.add("kashiprop", name, f"identity (3), {len(res)} samples",
                "pass" if all(res) else "fail", f"{res.count(False)} mismatches" if not all(res) else "")
    else:
        rep.add("kashiprop", name, "identity (3)", "pass", "no imaginary vertex")
    res = list(verma_samples(ctx, rng, min(cfg.bound, 3)))
    rep.add("kashiprop", name, f"identity (2) via Verma oracle, {len(res)} pieces",
            "pass" if all(res) else "fail", f"{res.count(False)} mismatches" if not all(res) else "")


def hypo_check(A: FreeAlgebra, top: int = 4, order_: int = 10) -> list[tuple[tuple[int, int], str]]:
    """Generators whose self-pairing is not 1 + v^-1 N[[v^-1]]; returns (index, reason)."""
    from .freealg import Element
    bad = []
    for (i, l) in iter_indices(A.q, top):
        w = ((i, l),)
        val = A.pair(Element.word(A.n, w), Element.word(A.n, w))
        try:
            s = series_expand(val, order_)
        except ValueError as exc:
            bad.append(((i, l), str(exc)))
            continue
        if s[0] != 1:
            bad.append(((i, l), f"leading coefficient {s[0]}"))
        elif any(c < 0 or c.denominator != 1 for c in s):
            bad.append(((i, l), f"series {s}"))
    return bad


def suite_hypo(ctx: _Context, cfg: VerifyConfig, rep: VerifyReport) -> None:
    name = _name(ctx.q)
    bad = hypo_check(ctx.A)
    rep.add("hypo", name, "{E,E} in 1 + v^-1 N[[v^-1]] up to level 4",
            "fail" if bad else "pass", "; ".join(f"{k}: {r}" for k, r in bad))


def closed_family_check(ctx: _Context, lam, mu, depth: int):
    T = TensorCrystal(ctx.module(lam, depth).crystal, ctx.module(mu, depth).crystal)
    G = generate_subcrystal(T, (0, 0), depth)
    target = ctx.module(add(lam, mu), depth).crystal
    return iso_check(G, target), len(G), len(target)


def suite_closed(ctx: _Context, cfg: VerifyConfig, rep: VerifyReport) -> None:
    q, name = ctx.q, _name(ctx.q)
    depth = min(cfg.bound, 3)
    for i in q.vertices:
        for j in q.vertices:
            lam, mu = q.unit(i), q.unit(j)
            res, n1, n2 = closed_family_check(ctx, lam, mu, depth)
            rep.add("closed", name, f"<B{list(lam)}(x)B{list(mu)}> = B{list(add(lam, mu))} d<={depth}",
                    "pass" if res.ok else "fail", f"{n1} elements" if res.ok else res.reason)


def suite_characterization(ctx: _Context, cfg: VerifyConfig, rep: VerifyReport) -> None:
    name = _name(ctx.q)
    h = min(cfg.bound, 3)
    ex = ctx.binf(h)
    psi = psi_embedding(ex, star_map(ex))
    r = binf_characterization_check(ex.crystal, 0, psi)
    for cond, status, detail in r.entries:
        rep.add("characterization", name, f"condition {cond} h<={h}", status, detail)


def suite_associativity(ctx: _Context, cfg: VerifyConfig, rep: VerifyReport) -> None:
    """Recorded probe: outcomes are 'pass' or 'open', never hard failures."""
    q, name = ctx.q, _name(ctx.q)
    depth = min(cfg.bound, 3)
    for i in q.vertices:
        B = ElementaryCrystal(q, i, depth + 1)
        _probe(rep, name, f"B_{q.names[i]}^(x3)", B, B, B, depth)
    lam = q.unit(0)
    M = ctx.module(lam, depth).crystal
    _probe(rep, name, f"B{list(lam)}^(x3)", M, M, M, depth)


def _probe(rep, name, label, B1, B2, B3, depth):
    left = TensorCrystal(TensorCrystal(B1, B2), B3)
    seeds = [s for s in sources_of_product(left, B1, B2, B3, depth)]
    ok = 0
    for a, b, c in seeds:
        if associativity_probe(B1, B2, B3, (a, b, c), depth).ok:
            ok += 1
    rep.add("associativity", name, f"{label}: {ok}/{len(seeds)} highest seeds agree",
            "pass" if ok == len(seeds) else "open", "")


def sources_of_product(T, B1, B2, B3, depth):
    """Highest-weight triples of total height <= depth (plus a little)."""
    def small(B):
        return [b for b in B.elements() if sum(B.degree(b)) <= 1]
    out = []
    for a in small(B1):
        for b in small(B2):
            for c in small(B3):
                x = ((a, b), c)
                if all(T.e(x, i, l) is None for (i, l) in T.indices()):
                    out.append((a, b, c))
    return out


_RUNNERS = {
    "axioms": suite_axioms,
    "normality": suite_normality,
    "adjointness": suite_adjointness,
    "kashiprop": suite_kashiprop,
    "hypo": suite_hypo,
    "closed": suite_closed,
    "characterization": suite_characterization,
    "associativity": suite_associativity,
}


def run_verify(cfg: VerifyConfig) -> VerifyReport:
    rep = VerifyReport()
    for q in cfg.quivers:
        ctx = _Context(q, cfg.overrides)
        for s in SUITES:
            if s not in cfg.suites:
                continue
            try:
                _RUNNERS[s](ctx, cfg, rep)
            except LoopCrystalError as exc:
                rep.add(s, _name(q), "suite aborted", "fail", f"{type(exc).__name__}: {exc}")
    return rep


__all__ = ["SUITES", "VerifyConfig", "VerifyReport", "run_verify", "hypo_check", "small_dominant",
           "sources"]
