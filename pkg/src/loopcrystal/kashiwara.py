"""Kashiwara operators on U- and on the simple modules V(lambda).

Both spaces are handled through the same recipe.  For a vertex i and a
degree nu we build an *adapted basis*: the vectors ``b_{i,c} z`` where ``c``
runs over labels with ``|c| <= nu_i`` and ``z`` over a basis of the kernel
K_i in degree ``nu - |c| i``.  The decomposition theorem says these form a
basis; we assert it.  In that basis the operators are label surgery, so
``f~`` and ``e~`` become the matrices ``T_tgt * P * T_src^-1``.

Elements of U- are stored as coordinate vectors in the basis of U+[nu]
(the minus map is a relabelling F <-> E).  Degrees nu are elements of N I; a
vector of degree nu in U- has weight -nu, and in V(lambda) it has weight
``lambda - C nu``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import linalg
from .cartan import ISOTROPIC, REAL, STRICT, QuiverDatum, Weight, add, sub
from .errors import InputError, TheoryViolation
from .freealg import Element, FreeAlgebra, sum_products
from .partcomp import PartLabel, enumerate_labels, prepend, remove_part
from .scalars import FieldScalar, RationalFunction, vpow

ZERO = RationalFunction(0)
ONE = RationalFunction(1)


def _labels_upto(q: QuiverDatum, i: int, top: int) -> list[PartLabel]:
    kind = q.classify_vertex(i)
    return [c for l in range(top + 1) for c in enumerate_labels(kind, l)]


def f_surgery(kind: str, l: int, c: PartLabel):
    """(target label, coefficient) for f~_{i,l} acting on the c-component."""
    if kind == ISOTROPIC:
        coef = FieldScalar.sqrt(Fraction(l, c.multiplicity(l) + 1))
        return prepend(l, c), coef
    return prepend(l, c), ONE


def e_surgery(kind: str, l: int, c: PartLabel):
    """(target label, coefficient) for e~_{i,l}, or None if the component dies."""
    if kind == STRICT:
        if not c.parts or c.parts[0] != l:
            return None
        return remove_part(c, l), ONE
    if kind == ISOTROPIC:
        m = c.multiplicity(l)
        if not m:
            return None
        return remove_part(c, l), FieldScalar.sqrt(Fraction(m, l))
    if c.size < l:
        return None
    return remove_part(c, l), ONE


class _AdaptedSpace:
    """Shared machinery: kernels, adapted bases, operator matrices.

    Subclasses provide ``dim``, ``raise_matrices`` (the maps whose joint
    kernel is K_i) and ``times_b`` (left multiplication by b_{i,c}).
    """

    def __init__(self, alg: FreeAlgebra):
        self.A = alg
        self.q = alg.q
        self._kernel: dict = {}
        self._adapted: dict = {}
        self._fmat: dict = {}
        self._emat: dict = {}

    # to be provided
    def dim(self, nu: Weight) -> int:
        raise NotImplementedError

    def raise_matrices(self, i: int, nu: Weight) -> list[list[list]]:
        raise NotImplementedError

    def times_b(self, i: int, c: PartLabel, nu: Weight, x: Sequence) -> list:
        raise NotImplementedError

    def b_element(self, i: int, c: PartLabel) -> Element:
        """F_i^(n) at a real vertex, the a-word a_{i,c} otherwise."""
        if self.q.is_real(i):
            return self.A.divided_power(i, c.size)
        return self.A.a_word(i, c.parts)

    def levels(self, i: int, top: int) -> range:
        return range(1, (1 if self.q.is_real(i) else top) + 1) if top >= 1 else range(0)

    def kernel(self, i: int, nu: Weight) -> list[list]:
        key = (i, tuple(nu))
        if key in self._kernel:
            return self._kernel[key]
        d = self.dim(nu)
        stacked = [row for m in self.raise_matrices(i, nu) for row in m]
        if not stacked:
            basis = [[ONE if r == k else ZERO for r in range(d)] for k in range(d)]
        else:
            basis = linalg.nullspace(stacked, d)
        self._kernel[key] = basis
        return basis

    def adapted(self, i: int, nu: Weight):
        """(index list [(label, k)], T, T^-1) for the decomposition at (i, nu)."""
        key = (i, tuple(nu))
        if key in self._adapted:
            return self._adapted[key]
        nu = tuple(nu)
        d = self.dim(nu)
        index, cols = [], []
        for c in _labels_upto(self.q, i, nu[i]):
            lower = sub(nu, self.q.unit(i, c.size))
            ker = self.kernel(i, lower)
            block = [self.times_b(i, c, lower, z) for z in ker]
            if not block:
                continue
            r = linalg.rank(block)
            if r == 0:
                continue  # b_{i,c} K_i vanishes here (only possible in V(lambda))
            if r != len(block):
                raise TheoryViolation(f"b_{{{i},{c}}} K_{i} degenerates partially at {nu}")
            for k, col in enumerate(block):
                index.append((c, k))
                cols.append(col)
        if len(cols) != d:
            raise TheoryViolation(
                f"decomposition at vertex {i}, degree {nu}: {len(cols)} vectors for dimension {d}")
        T = linalg.transpose(cols) if cols else []
        Tinv = linalg.inverse(T) if cols else []
        res = (index, T, Tinv)
        self._adapted[key] = res
        return res

    def decompose(self, i: int, nu: Weight, u: Sequence) -> dict:
        """u = sum_c b_{i,c} z_c; returns {c: z_c} with z_c in kernel coordinates summed."""
        index, T, Tinv = self.adapted(i, nu)
        coef = linalg.mat_vec(Tinv, u) if Tinv else []
        out: dict[PartLabel, list] = {}
        for (c, k), a in zip(index, coef):
            if not a:
                continue
            lower = sub(nu, self.q.unit(i, c.size))
            z = self.kernel(i, lower)[k]
            cur = out.get(c)
            vec = [a * x for x in z]
            out[c] = vec if cur is None else [x + y for x, y in zip(cur, vec)]
        return out

    def recompose(self, i: int, nu: Weight, parts: dict) -> list:
        out = [ZERO] * self.dim(nu)
        for c, z in parts.items():
            lower = sub(nu, self.q.unit(i, c.size))
            out = [x + y for x, y in zip(out, self.times_b(i, c, lower, z))]
        return out

    def _operator(self, i: int, l: int, nu: Weight, raising: bool):
        kind = self.q.classify_vertex(i)
        if kind == REAL and l != 1:
            raise InputError("real vertices have level 1 only")
        tgt = sub(nu, self.q.unit(i, l)) if raising else add(nu, self.q.unit(i, l))
        dsrc = self.dim(nu)
        if any(t < 0 for t in tgt):
            return []
        dtgt = self.dim(tgt)
        mat = [[ZERO] * dsrc for _ in range(dtgt)]
        if not dsrc or not dtgt:
            return mat
        s_index, _, s_inv = self.adapted(i, nu)
        t_index, t_T, _ = self.adapted(i, tgt)
        pos = {key: n for n, key in enumerate(t_index)}
        for s, (c, k) in enumerate(s_index):
            hit = e_surgery(kind, l, c) if raising else f_surgery(kind, l, c)
            if hit is None:
                continue
            c2, coef = hit
            t = pos.get((c2, k))
            if t is None:
                continue  # the target component vanishes in this space
            row = s_inv[s]
            for r in range(dtgt):
                x = t_T[r][t]
                if not x:
                    continue
                x = coef * x
                mrow = mat[r]
                for j in range(dsrc):
                    if row[j]:
                        mrow[j] = mrow[j] + x * row[j]
        return mat

    def f_matrix(self, i: int, l: int, nu: Weight):
        key = (i, l, tuple(nu))
        if key not in self._fmat:
            self._fmat[key] = self._operator(i, l, nu, raising=False)
        return self._fmat[key]

    def e_matrix(self, i: int, l: int, nu: Weight):
        key = (i, l, tuple(nu))
        if key not in self._emat:
            self._emat[key] = self._operator(i, l, nu, raising=True)
        return self._emat[key]

    def kashiwara_f(self, i: int, l: int, nu: Weight, u: Sequence) -> list:
        return linalg.mat_vec(self.f_matrix(i, l, nu), u)

    def kashiwara_e(self, i: int, l: int, nu: Weight, u: Sequence) -> list:
        m = self.e_matrix(i, l, nu)
        return linalg.mat_vec(m, u) if m else []


class UMinus(_AdaptedSpace):
    """U- with the operators e'_{i,l} and the Kashiwara operators."""

    kind = "infinity"

    def dim(self, nu: Weight) -> int:
        return self.A.dim(nu)

    def source_vector(self) -> list:
        return [ONE]

    def eprime_matrix(self, i: int, l: int, nu: Weight):
        return self.A.delta_upper(i, l, nu)

    def eprime(self, i: int, l: int, nu: Weight, u: Sequence) -> list:
        m = self.eprime_matrix(i, l, nu)
        return linalg.mat_vec(m, u) if m else []

    def raise_matrices(self, i: int, nu: Weight):
        return [self.eprime_matrix(i, l, nu) for l in self.levels(i, nu[i])]

    def times_b(self, i: int, c: PartLabel, nu: Weight, x: Sequence) -> list:
        return self.A.coords(self.b_element(i, c) * self.A.lift(nu, x))

    def pair(self, nu: Weight, x: Sequence, y: Sequence):
        return self.A.pair_coords(nu, x, y)

    def star(self, nu: Weight, x: Sequence) -> list:
        return self.A.star_coords(nu, x)

    def degree_weight(self, nu: Weight) -> Weight:
        return tuple(-x for x in self.q.c_times(nu))


class SimpleModule(_AdaptedSpace):
    """V(lambda) presented as U-[nu] v_lambda modulo the contravariant radical."""

    kind = "highest-weight"

    def __init__(self, alg: FreeAlgebra, lam: Sequence[int]):
        super().__init__(alg)
        lam = tuple(lam)
        if not self.q.is_dominant(lam):
            raise InputError(f"{lam} is not a dominant weight")
        self.lam = lam
        self._S: dict = {}
        self._mod: dict = {}
        self._D: dict = {}

    # -- Verma side (coordinates in U+[nu]) ------------------------------
    def verma_action(self, i: int, l: int, nu: Weight) -> list[list]:
        """Matrix of a_{i,l} acting on M(lambda) from degree nu to nu - l i.

        D(y) = v^{-l lambda_i} d^R_a(y) - v^{l mu'_i} d^L_a(y) with mu' the
        weight of the output.
        """
        key = (i, l, tuple(nu))
        if key in self._D:
            return self._D[key]
        tgt = sub(nu, self.q.unit(i, l))
        if any(t < 0 for t in tgt):
            self._D[key] = []
            return []
        a, _ = self.A.primitive(i, l)
        right = self.A.derivation_matrix("right", a, nu)
        left = self.A.derivation_matrix("left", a, nu)
        mu_out = self.q.module_weight(self.lam, tgt)
        cr = vpow(-l * self.lam[i])
        cl = vpow(l * mu_out[i])
        D = [[cr * x - cl * y for x, y in zip(rr, lr)] for rr, lr in zip(right, left)]
        self._D[key] = D
        return D

    def _kappa(self, i: int):
        if self.q.is_real(i):
            v = vpow(1)
            return v / (vpow(-1) - v)
        return RationalFunction(-1)

    def contravariant_gram(self, nu: Weight) -> list[list]:
        """Gram matrix of (-,-) on the basis of U+[nu] (applied to v_lambda)."""
        nu = tuple(nu)
        if nu in self._S:
            return self._S[nu]
        d = self.A.dim(nu)
        if not any(nu):
            S = [[ONE]]
            self._S[nu] = S
            return S
        span_rows, w_rows = [], []
        for i in self.q.vertices:
            top = 1 if self.q.is_real(i) else nu[i]
            for l in range(1, min(top, nu[i]) + 1):
                lower = sub(nu, self.q.unit(i, l))
                a, _ = self.A.primitive(i, l)
                S_low = self.contravariant_gram(lower)
                D = self.verma_action(i, l, nu)
                mu2 = self.q.module_weight(self.lam, lower)
                factor = self._kappa(i) * vpow(-l * mu2[i])
                SD = linalg.mat_mul(S_low, D) if D else []
                for k, bw in enumerate(self.A.piece(lower).basis):
                    span_rows.append(self.A.coords(a * Element.word(self.q.n, bw)))
                    w_rows.append([factor * x for x in SD[k]])
        sel = linalg.independent_rows(span_rows)
        if len(sel) != d:
            raise TheoryViolation(f"the a-products do not span U+[{nu}]")
        T = [span_rows[k] for k in sel]
        W = [w_rows[k] for k in sel]
        S = linalg.solve(T, W)
        for r in range(d):
            for c in range(r + 1, d):
                if S[r][c] != S[c][r]:
                    raise TheoryViolation(f"contravariant form not symmetric at {nu}")
        self._S[nu] = S
        return S

    # -- module pieces ----------------------------------------------------
    def _module(self, nu: Weight):
        nu = tuple(nu)
        hit = self._mod.get(nu)
        if hit is not None:
            return hit
        S = self.contravariant_gram(nu)
        M = linalg.independent_rows(S) if S else []
        SMM = [[S[r][c] for c in M] for r in M]
        proj = linalg.mat_mul(linalg.inverse(SMM), [S[r] for r in M]) if M else []
        res = (M, SMM, proj, len(S))
        self._mod[nu] = res
        return res

    def dim(self, nu: Weight) -> int:
        if any(x < 0 for x in nu):
            return 0
        return len(self._module(nu)[0])

    def basis_positions(self, nu: Weight) -> list[int]:
        return self._module(nu)[0]

    def project(self, nu: Weight, x: Sequence) -> list:
        proj = self._module(nu)[2]
        return linalg.mat_vec(proj, x) if proj else []

    def lift(self, nu: Weight, m: Sequence) -> list:
        M, _, _, d = self._module(nu)
        out = [ZERO] * d
        for k, c in zip(M, m):
            out[k] = c
        return out

    def source_vector(self) -> list:
        return [ONE]

    def action_matrix(self, i: int, l: int, nu: Weight):
        """a_{i,l} on V(lambda) from degree nu to nu - l i, module coordinates."""
        tgt = sub(nu, self.q.unit(i, l))
        if any(t < 0 for t in tgt):
            return []
        D = self.verma_action(i, l, nu)
        M = self.basis_positions(nu)
        proj = self._module(tgt)[2]
        cols = [[row[k] for k in M] for row in D]  # D restricted to module basis columns
        return linalg.mat_mul(proj, cols) if proj else [[] for _ in range(0)]

    def raise_matrices(self, i: int, nu: Weight):
        out = []
        for l in self.levels(i, nu[i]):
            m = self.action_matrix(i, l, nu)
            if m:
                out.append(m)
        return out

    def times_b(self, i: int, c: PartLabel, nu: Weight, x: Sequence) -> list:
        up = self.lift(nu, x)
        b = self.b_element(i, c)
        prod = self.A.coords(b * self.A.lift(nu, up))
        return self.project(add(nu, self.q.unit(i, c.size)), prod)

    def pair(self, nu: Weight, x: Sequence, y: Sequence):
        SMM = self._module(nu)[1]
        return sum_products(x, linalg.mat_vec(SMM, y))

    def degree_weight(self, nu: Weight) -> Weight:
        return self.q.module_weight(self.lam, nu)

    # -- independent check of the commutation identity --------------------
    def verma_action_by_commutation(self, i: int, l: int, nu: Weight, x: Sequence) -> list:
        """a_{i,l} (x^- v_lambda) computed by commuting a_{i,l} through an a-word
        expansion of x, using only [a_{i,l}, b_{j,k}] = delta tau (K_{-li} - K_{li}).

        Returns U+ coordinates in degree nu - l i.
        """
        words, coeffs = self.a_word_expansion(nu, x)
        tgt = sub(nu, self.q.unit(i, l))
        out = [ZERO] * self.A.dim(tgt)
        tau = self.A.tau(i, l)
        for w, c in zip(words, coeffs):
            if not c:
                continue
            for k, letter in enumerate(w):
                if letter != (i, l):
                    continue
                tail = w[k + 1:]
                tail_deg = [0] * self.q.n
                for j, h in tail:
                    tail_deg[j] += h
                mu = self.q.module_weight(self.lam, tail_deg)
                scal = tau * (vpow(-l * mu[i]) - vpow(l * mu[i]))
                rest = w[:k] + tail
                elem = self._a_product(rest)
                vec = self.A.coords(elem)
                out = [o + c * scal * y for o, y in zip(out, vec)]
        return out

    def _a_product(self, letters) -> Element:
        out = Element.one(self.q.n)
        for j, h in letters:
            out = out * self.A.primitive(j, h)[0]
        return out

    def a_word_expansion(self, nu: Weight, x: Sequence):
        """Write x in a basis of products of primitive generators."""
        from .freealg import words_of_weight
        key = ("aw", tuple(nu))
        if key not in self._mod:
            words = words_of_weight(self.q, nu)
            rows = [self.A.coords(self._a_product(w)) for w in words]
            sel = linalg.independent_rows(rows)
            chosen = [words[k] for k in sel]
            mat = linalg.transpose([rows[k] for k in sel])
            self._mod[key] = (chosen, linalg.inverse(mat))
        chosen, inv = self._mod[key]
        return chosen, linalg.mat_vec(inv, x)
