"""The free algebra on the generators E_{i,l}, its twisted coproduct, the
Hopf pairing, and the quotient U+ computed one graded piece at a time.

Everything here reduces to pairing two words.  The pairing of words is
computed by peeling the first letter g of the left word:
``{g.rest, c} = sum {g, c'} {rest, c''}`` over the coproduct of ``c``, where
only terms with ``|c'| = |g|`` contribute.  A piece ``U+[nu]`` is then the
span of the words of weight nu modulo the radical of their Gram matrix; the
chosen basis is the greedy (graded-lex first) independent set of words.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .cartan import QuiverDatum, Weight, add, sub
from .errors import InputError, TheoryViolation
from .scalars import FieldScalar, RationalFunction, parse_scalar, render_scalar, vpow

Letter = tuple[int, int]
Word = tuple[Letter, ...]

ZERO = RationalFunction(0)
ONE = RationalFunction(1)


# ---------------------------------------------------------------------------
# words and elements


def word_weight(n: int, word: Iterable[Letter]) -> Weight:
    w = [0] * n
    for i, l in word:
        w[i] += l
    return tuple(w)


def words_of_weight(q: QuiverDatum, nu: Weight) -> list[Word]:
    """All words of weight nu, sorted lexicographically by letters."""
    out: list[Word] = []

    def rec(rem: list[int], acc: list[Letter]):
        if not any(rem):
            out.append(tuple(acc))
            return
        for i in q.vertices:
            top = 1 if q.is_real(i) else rem[i]
            for l in range(1, min(top, rem[i]) + 1):
                rem[i] -= l
                acc.append((i, l))
                rec(rem, acc)
                acc.pop()
                rem[i] += l

    rec(list(nu), [])
    out.sort()
    return out


class Element:
    """A finite combination of words, homogeneous of one weight."""

    __slots__ = ("weight", "terms")

    def __init__(self, weight: Weight, terms: dict | None = None):
        self.weight = tuple(weight)
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def word(cls, n: int, word: Sequence[Letter], coeff=ONE) -> "Element":
        word = tuple(word)
        return cls(word_weight(n, word), {word: coeff})

    @classmethod
    def one(cls, n: int) -> "Element":
        return cls((0,) * n, {(): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Element") -> "Element":
        if not other.terms:
            return self
        if not self.terms:
            return other
        if other.weight != self.weight:
            raise ValueError("adding elements of different weights")
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return Element(self.weight, out)

    def __neg__(self):
        return Element(self.weight, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Element":
        return Element(self.weight, {w: c * x for w, x in self.terms.items()})

    def __mul__(self, other: "Element") -> "Element":
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                out[w] = out[w] + c if w in out else c
        return Element(add(self.weight, other.weight), out)

    def __eq__(self, other):
        return isinstance(other, Element) and self.weight == other.weight \
            and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms):
            name = "*".join(f"E{i},{l}" for i, l in w) or "1"
            parts.append(f"({render_scalar(self.terms[w])})*{name}")
        return " + ".join(parts)

    def star(self) -> "Element":
        return Element(self.weight, {w[::-1]: c for w, c in self.terms.items()})

    def bar(self) -> "Element":
        return Element(self.weight, {w: c.bar() for w, c in self.terms.items()})


# ---------------------------------------------------------------------------
# form parameters


class FormParams:
    """The values nu_iota = {E_iota, E_iota}.

    Defaults: prod_{k<=l} 1/(1-v^-k) at imaginary vertices and 1/(1-v_i^-2)
    at real ones.  Overrides are textual scalars keyed by (i, l).
    """

    def __init__(self, q: QuiverDatum, overrides: dict[Letter, object] | None = None):
        self.q = q
        self._over: dict[Letter, RationalFunction] = {}
        for (i, l), val in (overrides or {}).items():
            q._check(i)
            if l < 1 or (q.is_real(i) and l != 1):
                raise InputError(f"({i},{l}) is not a generator index")
            s = parse_scalar(val) if isinstance(val, str) else FieldScalar.coerce(val)
            if not s.is_rational() or s.is_zero():
                raise InputError(f"form parameter for ({i},{l}) must be a nonzero element of Q(v)")
            self._over[(i, l)] = s.rational_part()
        self._cache: dict[Letter, RationalFunction] = {}

    def default(self, i: int, l: int) -> RationalFunction:
        if self.q.is_real(i):
            return 1 / (1 - vpow(-2 * 1))
        out = ONE
        for k in range(1, l + 1):
            out = out / (1 - vpow(-k))
        return out

    def __getitem__(self, key: Letter) -> RationalFunction:
        if key not in self._cache:
            self._cache[key] = self._over.get(key) or self.default(*key)
        return self._cache[key]

    @property
    def overrides(self) -> dict[Letter, RationalFunction]:
        return dict(self._over)


def parse_param_override(text: str, q: QuiverDatum) -> tuple[Letter, str]:
    """Parse ``i,l=EXPR`` where i is a vertex name or index."""
    if "=" not in text:
        raise InputError(f"expected i,l=EXPR, got {text!r}")
    key, expr = text.split("=", 1)
    parts = key.split(",")
    if len(parts) != 2:
        raise InputError(f"expected i,l=EXPR, got {text!r}")
    name, lev = parts[0].strip(), parts[1].strip()
    i = int(name) if name.isdigit() and name not in q.names else q.index(name)
    try:
        l = int(lev)
    except ValueError:
        raise InputError(f"bad level in {text!r}") from None
    parse_scalar(expr)  # validate early
    return (i, l), expr


# ---------------------------------------------------------------------------
# graded pieces


@dataclass
class UPlusPiece:
    weight: Weight
    words: list[Word]
    gram: list[list[RationalFunction]]
    basis_idx: list[int]
    gram_basis_inv: list[list[RationalFunction]] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis_idx)

    @property
    def basis(self) -> list[Word]:
        return [self.words[k] for k in self.basis_idx]

    def to_json(self) -> dict:
        return {
            "weight": list(self.weight),
            "words": [[list(x) for x in w] for w in self.words],
            "gram": [[render_scalar(x) for x in row] for row in self.gram],
            "basis": [[list(x) for x in self.words[k]] for k in self.basis_idx],
            "dim": self.dim,
        }


class FreeAlgebra:
    """Pairing engine and U+ piece cache for one quiver and one parameter family."""

    def __init__(self, q: QuiverDatum, params: FormParams | None = None,
                 check_relations: bool = True):
        self.q = q
        self.params = params or FormParams(q)
        self.check_relations = check_relations
        self._pair_cache: dict[tuple[Word, Word], RationalFunction] = {}
        self._lderiv_cache: dict[tuple[Letter, Word], list] = {}
        self._pieces: dict[Weight, UPlusPiece] = {}
        self._prims: dict[Letter, tuple[Element, RationalFunction]] = {}
        self._vexp = [q.v_power(i) for i in q.vertices]

    @property
    def n(self) -> int:
        return self.q.n

    # -- coproduct ----------------------------------------------------
    def _split_coeff_exp(self, word: Word, ts: Sequence[int]) -> int:
        """Exponent of v for the coproduct term splitting letter k as (t_k, L_k - t_k)."""
        f = self.q.form
        e = 0
        for (j, L), t in zip(word, ts):
            e += self._vexp[j] * t * (L - t)
        for a in range(len(word)):
            ja, La = word[a]
            ra = La - ts[a]
            if not ra:
                continue
            for b in range(a + 1, len(word)):
                if ts[b]:
                    e += ra * ts[b] * f(ja, word[b][0])
        return e

    def coproduct(self, x: Element) -> dict[tuple[Word, Word], RationalFunction]:
        """delta(x) as a dict over pairs of words."""
        out: dict = {}
        for word, c in x.terms.items():
            for ts in itertools.product(*[range(L + 1) for _, L in word]):
                left = tuple((j, t) for (j, _), t in zip(word, ts) if t)
                right = tuple((j, L - t) for (j, L), t in zip(word, ts) if L - t)
                coef = c * vpow(self._split_coeff_exp(word, ts))
                key = (left, right)
                out[key] = out[key] + coef if key in out else coef
        return {k: v for k, v in out.items() if v}

    # -- pairing ------------------------------------------------------
    def _pair_letter_word(self, g: Letter, word: Word) -> RationalFunction:
        """{E_{i,l}, E_{i,s1}...E_{i,sm}} by the closed formula."""
        i, l = g
        if any(j != i for j, _ in word) or sum(s for _, s in word) != l:
            return ZERO
        out = ONE
        e = 0
        acc = 0
        for _, s in word:
            out = out * self.params[(i, s)]
            e += acc * s
            acc += s
        return out * vpow(self._vexp[i] * e)

    def _left_derivative(self, g: Letter, word: Word) -> list[tuple[RationalFunction, Word]]:
        """Terms (coef, c'') of sum {g, c'} c'' over the coproduct of word."""
        key = (g, word)
        hit = self._lderiv_cache.get(key)
        if hit is not None:
            return hit
        i, l = g
        ranges = [range(min(L, l) + 1) if j == i else range(1) for j, L in word]
        acc: dict[Word, RationalFunction] = {}
        for ts in itertools.product(*ranges):
            if sum(ts) != l:
                continue
            left = tuple((i, t) for t in ts if t)
            pv = self._pair_letter_word(g, left)
            if not pv:
                continue
            right = tuple((j, L - t) for (j, L), t in zip(word, ts) if L - t)
            coef = pv * vpow(self._split_coeff_exp(word, ts))
            acc[right] = acc[right] + coef if right in acc else coef
        res = [(c, w) for w, c in acc.items() if c]
        self._lderiv_cache[key] = res
        return res

    def pair_words(self, w1: Word, w2: Word) -> RationalFunction:
        if len(w1) > len(w2):
            w1, w2 = w2, w1
        key = (w1, w2) if w1 <= w2 else (w2, w1)
        hit = self._pair_cache.get(key)
        if hit is not None:
            return hit
        if word_weight(self.n, w1) != word_weight(self.n, w2):
            val = ZERO
        elif not w1:
            val = ONE
        else:
            val = ZERO
            for coef, right in self._left_derivative(w1[0], w2):
                p = self.pair_words(w1[1:], right)
                if p:
                    val = val + coef * p
        self._pair_cache[key] = val
        return val

    def pair(self, x: Element, y: Element):
        if x.weight != y.weight:
            return ZERO
        out = ZERO
        for w1, c1 in x.terms.items():
            for w2, c2 in y.terms.items():
                p = self.pair_words(w1, w2)
                if p:
                    out = out + c1 * c2 * p
        return out

    # -- relations ----------------------------------------------------
    def quantum_factorial(self, j: int, n: int) -> RationalFunction:
        vj = vpow(self._vexp[j])
        vji = vpow(-self._vexp[j])
        out = ONE
        for k in range(1, n + 1):
            out = out * ((vj ** k - vji ** k) / (vj - vji))
        return out

    def divided_power(self, j: int, t: int) -> Element:
        return Element.word(self.n, ((j, 1),) * t, self.quantum_factorial(j, t).inverse())

    def serre_element(self, iota: Letter, j: int) -> Element:
        i, l = iota
        if not self.q.is_real(j):
            raise InputError("Serre elements need a real vertex j")
        m = -l * self.q.form(i, j) + 1
        if (i, l) == (j, 1) or m < 1:
            raise InputError(f"({i},{l}) and {j} do not form a Serre pair")
        ei = Element.word(self.n, (iota,))
        out = None
        for t in range(m + 1):
            term = (self.divided_power(j, t) * ei * self.divided_power(j, m - t))
            term = term.scale(RationalFunction((-1) ** t))
            out = term if out is None else out + term
        return out

    def isotropic_commutator(self, i: int, l: int, k: int) -> Element:
        if not self.q.is_isotropic(i):
            raise InputError("commutator relations are for isotropic vertices")
        a = Element.word(self.n, ((i, l),))
        b = Element.word(self.n, ((i, k),))
        return a * b - b * a

    def relations_of_weight(self, nu: Weight) -> list[Element]:
        """Serre elements and isotropic commutators whose weight fits under nu."""
        rels = []
        for i in self.q.vertices:
            top = 1 if self.q.is_real(i) else nu[i]
            for l in range(1, top + 1):
                for j in self.q.vertices:
                    if j == i or not self.q.is_real(j):
                        continue
                    m = -l * self.q.form(i, j) + 1
                    w = add(self.q.unit(i, l), self.q.unit(j, m))
                    if all(a <= b for a, b in zip(w, nu)):
                        rels.append(self.serre_element((i, l), j))
            if self.q.is_isotropic(i):
                for l in range(1, nu[i] + 1):
                    for k in range(l + 1, nu[i] - l + 1):
                        rels.append(self.isotropic_commutator(i, l, k))
        return rels

    def in_radical(self, x: Element) -> bool:
        return all(not self.pair(x, Element.word(self.n, w))
                   for w in words_of_weight(self.q, x.weight))

    # -- pieces -------------------------------------------------------
    def piece(self, nu: Weight) -> UPlusPiece:
        nu = tuple(nu)
        hit = self._pieces.get(nu)
        if hit is not None:
            return hit
        if any(x < 0 for x in nu):
            raise InputError(f"weight {nu} is not in N I")
        words = words_of_weight(self.q, nu)
        gram = [[self.pair_words(a, b) for b in words] for a in words]
        basis_idx = linalg.independent_rows(gram)
        gb = [[gram[r][c] for c in basis_idx] for r in basis_idx]
        inv = linalg.inverse(gb) if gb else []
        piece = UPlusPiece(nu, words, gram, basis_idx, inv)
        self._certify_rank(piece)
        if self.check_relations:
            self._check_relations(nu, words)
        self._pieces[nu] = piece
        return piece

    def _certify_rank(self, p: UPlusPiece) -> None:
        # every word must be reproduced by its projection onto the basis
        bset = set(p.basis_idx)
        for r in range(len(p.words)):
            if r in bset:
                continue
            coords = linalg.mat_vec(p.gram_basis_inv, [p.gram[r][c] for c in p.basis_idx])
            recon = linalg.vec_mat(coords, [p.gram[c] for c in p.basis_idx])
            if recon != p.gram[r]:
                raise TheoryViolation(f"Gram rank certificate failed at weight {p.weight}")

    def _check_relations(self, nu: Weight, words: list[Word]) -> None:
        for rel in self.relations_of_weight(nu):
            pad = sub(nu, rel.weight)
            for pw in words_of_weight(self.q, pad) if any(pad) else [()]:
                for cut in range(len(pw) + 1):
                    left = Element.word(self.n, pw[:cut])
                    right = Element.word(self.n, pw[cut:])
                    x = left * rel * right
                    for w in words:
                        if self.pair(x, Element.word(self.n, w)):
                            raise TheoryViolation(
                                f"relation {rel!r} is not in the radical at weight {nu}")

    def dim(self, nu: Weight) -> int:
        return self.piece(nu).dim

    def coords(self, x: Element) -> list:
        """Coordinates of x in the basis of U+[|x|]."""
        p = self.piece(x.weight)
        pv = [self.pair(x, Element.word(self.n, b)) for b in p.basis]
        return linalg.mat_vec(p.gram_basis_inv, pv)

    def lift(self, nu: Weight, coords: Sequence) -> Element:
        p = self.piece(nu)
        return Element(tuple(nu), {b: c for b, c in zip(p.basis, coords) if c})

    def pairing_vector(self, x: Element) -> list:
        return [self.pair(x, Element.word(self.n, b)) for b in self.piece(x.weight).basis]

    def gram_basis(self, nu: Weight) -> list[list]:
        p = self.piece(nu)
        return [[p.gram[r][c] for c in p.basis_idx] for r in p.basis_idx]

    def pair_coords(self, nu: Weight, x: Sequence, y: Sequence):
        g = self.gram_basis(nu)
        return sum_products(x, linalg.mat_vec(g, y))

    def multiply_coords(self, nu1: Weight, x: Sequence, nu2: Weight, y: Sequence) -> list:
        return self.coords(self.lift(nu1, x) * self.lift(nu2, y))

    # -- primitive generators -----------------------------------------
    def primitive(self, i: int, l: int) -> tuple[Element, RationalFunction]:
        """(a_{i,l} as a combination of words, tau_{i,l})."""
        key = (i, l)
        hit = self._prims.get(key)
        if hit is not None:
            return hit
        E = Element.word(self.n, ((i, l),))
        if self.q.is_real(i):
            if l != 1:
                raise InputError("real vertices only have level 1")
            res = (E, self.params[(i, 1)])
            self._prims[key] = res
            return res
        if l < 1:
            raise InputError("levels start at 1")
        lower = [w for w in words_of_weight(self.q, self.q.unit(i, l)) if w != ((i, l),)]
        if lower:
            g = [[self.pair_words(a, b) for b in lower] for a in lower]
            sel = linalg.independent_rows(g)
            S = [lower[k] for k in sel]
            gs = [[g[r][c] for c in sel] for r in sel]
            rhs = [-self.pair_words(((i, l),), w) for w in S]
            alpha = linalg.solve(gs, rhs)
            a = E + Element(E.weight, dict(zip(S, alpha)))
        else:
            a = E
        tau = self.pair(a, E)
        if not tau:
            raise TheoryViolation(f"tau_{i},{l} vanishes")
        self._prims[key] = (a, tau)
        return a, tau

    def a_word(self, i: int, parts: Sequence[int]) -> Element:
        """a_{i,c} = a_{i,c1} a_{i,c2} ... as an element of F."""
        out = Element.one(self.n)
        for l in parts:
            out = out * self.primitive(i, l)[0]
        return out

    def tau(self, i: int, l: int) -> RationalFunction:
        return self.primitive(i, l)[1]

    # -- derivations --------------------------------------------------
    def derivation_matrix(self, side: str, g: Element, nu: Weight) -> list[list]:
        """Matrix of x -> d_g(x) from U+[nu] to U+[nu - |g|] in basis coordinates.

        ``side='left'`` is sum {g, x'} x''; ``side='right'`` is sum x' {g, x''}.
        Uses {d^L_g x, b} = {x, g b} and {d^R_g x, b} = {x, b g}.
        """
        target = sub(nu, g.weight)
        src = self.piece(nu)
        if any(t < 0 for t in target):
            return []
        tp = self.piece(target)
        rows = []
        for b in tp.basis:
            bw = Element.word(self.n, b)
            probe = g * bw if side == "left" else bw * g
            rows.append([self.pair(probe, Element.word(self.n, s)) for s in src.basis])
        return linalg.mat_mul(tp.gram_basis_inv, rows)

    def delta_upper(self, i: int, l: int, nu: Weight) -> list[list]:
        """delta^{i,l} on U+[nu] (a_{i,l} split off on the left), as a matrix."""
        a, tau = self.primitive(i, l)
        m = self.derivation_matrix("left", a, nu)
        inv = tau.inverse()
        return [[x * inv for x in row] for row in m]

    def delta_lower(self, i: int, l: int, nu: Weight) -> list[list]:
        """delta_{i,l} on U+[nu] (a_{i,l} split off on the right)."""
        a, tau = self.primitive(i, l)
        m = self.derivation_matrix("right", a, nu)
        inv = tau.inverse()
        return [[x * inv for x in row] for row in m]

    def delta_component(self, x: Element, i: int, parts: Sequence[int]) -> tuple[list, list]:
        """(delta_{i,c}(x), delta^{i,c}(x)) in U+ coordinates.

        Read off by pairing against the dual of {a_{i,c'}}: with G the Gram
        matrix of the a_{i,c'} (|c'| = |c|), the coefficient of a_{i,c} on the
        pure side is obtained from the vector of d_{a_{i,c'}}(x) through G^-1.
        """
        kind = self.q.classify_vertex(i)
        from .partcomp import enumerate_labels  # local: partcomp imports cartan only
        size = sum(parts)
        labels = [tuple(c.parts) for c in enumerate_labels(kind, size)]
        if self.q.is_real(i):
            labels = [(1,) * size]
            parts = (1,) * size
        if tuple(parts) not in labels:
            raise InputError(f"{tuple(parts)} is not a label of size {size}")
        aw = [self.a_word(i, c) for c in labels]
        gram = [[self.pair(a, b) for b in aw] for a in aw]
        ginv = linalg.inverse(gram)
        k = labels.index(tuple(parts))
        lowers, uppers = [], []
        for c_idx, a in enumerate(aw):
            lowers.append(self.derivation_matrix("right", a, x.weight))
            uppers.append(self.derivation_matrix("left", a, x.weight))
        xc = self.coords(x)
        lo = [linalg.mat_vec(m, xc) for m in lowers]
        up = [linalg.mat_vec(m, xc) for m in uppers]
        dim = len(lo[0]) if lo else 0
        res_lo = [sum_products([ginv[k][j] for j in range(len(aw))], [lo[j][t] for j in range(len(aw))])
                  for t in range(dim)]
        res_up = [sum_products([ginv[k][j] for j in range(len(aw))], [up[j][t] for j in range(len(aw))])
                  for t in range(dim)]
        return res_lo, res_up

    # -- involutions --------------------------------------------------
    def check_descends(self, nu: Weight, which: str) -> None:
        """Raise if star (or bar) fails to map the radical of U+[nu] into itself."""
        p = self.piece(nu)
        kernel = linalg.nullspace(p.gram)
        for vec in kernel:
            x = Element(nu, {w: c for w, c in zip(p.words, vec) if c})
            y = x.star() if which == "star" else x.bar()
            if not self.in_radical(y):
                raise TheoryViolation(f"{which} does not preserve the radical at weight {nu}")

    def star_coords(self, nu: Weight, coords: Sequence) -> list:
        return self.coords(self.lift(nu, coords).star())

    def bar_coords(self, nu: Weight, coords: Sequence) -> list:
        return self.coords(self.lift(nu, coords).bar())

    def dump_piece(self, nu: Weight) -> str:
        return json.dumps(self.piece(nu).to_json(), sort_keys=True)


def sum_products(xs: Sequence, ys: Sequence):
    out = ZERO
    for a, b in zip(xs, ys):
        if a and b:
            out = out + a * b
    return out


def hypo_series(params: FormParams, i: int, l: int, order: int = 10) -> list[Fraction]:
    from .scalars import series_expand
    return series_expand(params[(i, l)], order)
