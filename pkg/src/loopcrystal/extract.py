"""Reading off B(infinity) and B(lambda) from the Kashiwara operators.

Starting from 1 (or v_lambda) we apply every f~_{i,l} degree by degree.
In each degree the images span a crystal lattice L over A; the crystal
elements are the distinct nonzero classes in L / v^-1 L.  The e~ edges are
computed with the e~ matrices and reduced in the same way, so (A4) is a
genuine check rather than a definition.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .cartan import REAL, STRICT, QuiverDatum, Weight, height, iter_indices, sub, weights_of_height
from .crystal import OUT, GraphCrystal, eps_by_peeling, phi_from_a7
from .errors import LatticeError, TheoryViolation
from .kashiwara import SimpleModule, UMinus
from .lattice import Lattice, is_zero_reduction, proportional
from .partcomp import PartLabel, empty_label, reverse


@dataclass
class Extraction:
    crystal: GraphCrystal
    space: object
    reps: dict = field(default_factory=dict)
    lattices: dict = field(default_factory=dict)
    reductions: dict = field(default_factory=dict)
    dims: dict = field(default_factory=dict)

    @property
    def q(self) -> QuiverDatum:
        return self.crystal.q

    def lattice_ranks(self) -> dict:
        return {nu: L.rank for nu, L in self.lattices.items()}

    def count_by_degree(self) -> dict:
        return {nu: len(v) for nu, v in self.reductions.items()}

    def classify(self, nu: Weight, vec) -> object:
        """Crystal element represented by ``vec`` mod v^-1 L, None if it reduces to 0."""
        L = self.lattices.get(nu)
        if L is None:
            if any(vec):
                raise TheoryViolation(f"nonzero vector in a degree {nu} outside the truncation")
            return None
        try:
            red = L.reduce(vec)
        except LatticeError as exc:
            raise TheoryViolation(f"degree {nu}: {exc}") from None
        if is_zero_reduction(red):
            return None
        hit = self.reductions[nu].get(red)
        if hit is None:
            raise TheoryViolation(f"degree {nu}: a reduction matches no crystal element")
        return hit


def _name(q: QuiverDatum, path) -> str:
    if not path:
        return "1"
    return "".join(f"f[{q.names[i]},{l}]" for (i, l) in path) + "1"


def extract_crystal(space, bound: int) -> Extraction:
    """Extract the crystal of ``space`` (a UMinus or SimpleModule) up to height ``bound``."""
    q = space.q
    zero = q.zero()
    ex = Extraction(crystal=None, space=space)
    elems, deg, path = [0], {0: zero}, {0: ()}
    ex.reps[0] = space.source_vector()
    ex.lattices[zero] = Lattice([ex.reps[0]], 1)
    ex.reductions[zero] = {ex.lattices[zero].reduce(ex.reps[0]): 0}
    ex.dims[zero] = 1
    by_deg = {zero: [0]}
    fmap, emap = {}, {}
    idx = list(iter_indices(q, max(bound, 1)))

    for h in range(1, bound + 1):
        for nu in weights_of_height(q.n, h):
            d = space.dim(nu)
            ex.dims[nu] = d
            gens = []
            for (i, l) in idx:
                if nu[i] < l:
                    continue
                lower = sub(nu, q.unit(i, l))
                for b in by_deg.get(lower, []):
                    gens.append((b, (i, l), space.kashiwara_f(i, l, lower, ex.reps[b])))
            L = Lattice([g[2] for g in gens], d)
            if L.rank != d:
                raise TheoryViolation(f"degree {nu}: f~ images span rank {L.rank} of {d}")
            ex.lattices[nu] = L
            table: dict = {}
            for b, iota, vec in gens:
                red = L.reduce(vec) if any(vec) else None
                if red is None or is_zero_reduction(red):
                    fmap[(b, iota)] = None
                    continue
                if red not in table:
                    for other in table:
                        if proportional(red, other):
                            raise TheoryViolation(
                                f"degree {nu}: two f~ images agree only up to the scalar, "
                                "the lattice basis is not a crystal basis")
                    new = len(elems)
                    elems.append(new)
                    table[red] = new
                    deg[new] = nu
                    path[new] = (iota,) + path[b]
                    ex.reps[new] = vec
                    by_deg.setdefault(nu, []).append(new)
                fmap[(b, iota)] = table[red]
            if len(table) != d:
                raise TheoryViolation(f"degree {nu}: {len(table)} crystal elements for dimension {d}")
            if table and linalg.rank([list(r) for r in table]) != d:
                raise TheoryViolation(f"degree {nu}: crystal elements are linearly dependent")
            ex.reductions[nu] = table

    # f~ leaving the truncation
    for b in elems:
        for (i, l) in idx:
            if height(deg[b]) + l > bound:
                fmap[(b, (i, l))] = OUT
            else:
                fmap.setdefault((b, (i, l)), None)

    # e~ edges, computed and reduced independently
    for b in elems:
        nu = deg[b]
        for (i, l) in idx:
            if nu[i] < l:
                emap[(b, (i, l))] = None
                continue
            lower = sub(nu, q.unit(i, l))
            vec = space.kashiwara_e(i, l, nu, ex.reps[b])
            emap[(b, (i, l))] = ex.classify(lower, vec) if vec else None

    wt = {b: space.degree_weight(deg[b]) for b in elems}
    names = {b: _name(q, path[b]) for b in elems}
    sides = ("eps", "phi") if isinstance(space, SimpleModule) else ("eps",)
    C = GraphCrystal(q, bound, elems, wt, deg, {}, {}, fmap, emap, source=0,
                     normal_sides=sides, names=names,
                     kind="B(lambda)" if isinstance(space, SimpleModule) else "B(infinity)")
    for b in elems:
        for i in q.vertices:
            val, problem = eps_by_peeling(q, C, b, i)
            if problem:
                raise TheoryViolation(f"epsilon_{i} of {names[b]}: {problem}")
            C._eps[(b, i)] = val
            C._phi[(b, i)] = phi_from_a7(q, val, wt[b][i], i)
    ex.crystal = C
    return ex


# ---------------------------------------------------------------------------
# the star involution and the embeddings Psi_i


def star_map(ex: Extraction) -> dict:
    """b -> b* computed from the anti-involution on U-."""
    if not isinstance(ex.space, UMinus):
        raise TypeError("the star involution lives on U-")
    out = {}
    for b in ex.crystal.elements():
        nu = ex.crystal.degree(b)
        img = ex.classify(nu, ex.space.star(nu, ex.reps[b]))
        if img is None:
            raise TheoryViolation(f"star sends {ex.crystal.names[b]} into v^-1 L")
        out[b] = img
    if sorted(out.values()) != sorted(out):
        raise TheoryViolation("star does not permute the crystal")
    return out


def full_peel(C: GraphCrystal, b, i: int):
    """Apply e~_i along epsilon_i(b) until nothing is left."""
    eps = C.eps(b, i)
    if C.q.classify_vertex(i) == REAL:
        steps = [1] * eps
    else:
        steps = list(eps.parts)
    x = b
    for l in steps:
        x = C.e(x, i, l)
        if x is None or x is OUT:
            raise TheoryViolation(f"peeling {C.names.get(b, b)} at {i} stopped early")
    return x


def psi_embedding(ex: Extraction, star: dict | None = None) -> dict[int, dict]:
    """psi[i][b] = (eps*_i(b), e~*max_i b) for every vertex i."""
    C = ex.crystal
    q = C.q
    star = star_map(ex) if star is None else star
    out: dict[int, dict] = {}
    for i in q.vertices:
        kind = q.classify_vertex(i)
        table = {}
        for b in C.elements():
            bs = star[b]
            e = C.eps(bs, i)
            if kind == REAL:
                label = PartLabel(kind, (e,)) if e else empty_label(kind)
            else:
                label = reverse(e) if kind == STRICT else e
            table[b] = (label, star[full_peel(C, bs, i)])
        out[i] = table
    return out


def crystal_binf(alg, bound: int) -> Extraction:
    return extract_crystal(UMinus(alg), bound)


def crystal_module(alg, lam, bound: int) -> Extraction:
    return extract_crystal(SimpleModule(alg, lam), bound)
