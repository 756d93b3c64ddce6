"""Free A-lattices in Q(v)^n, where A is the ring of functions regular at v = infinity.

A lattice is kept in echelon form: each basis row has a pivot column, and
later rows vanish on earlier pivot columns.  Row operations only ever use
multipliers with non-negative valuation, so the row span over A never
changes.  The same works for vectors with radical coefficients because the
valuation extends unramified.
"""
from __future__ import annotations

import math
from typing import Sequence

from .errors import LatticeError
from .scalars import FieldScalar, RationalFunction, valuation_at_vinv


def order(x) -> float:
    """Valuation at v^-1 (math.inf for zero)."""
    if isinstance(x, RationalFunction):
        return x.order_at_vinv()
    return valuation_at_vinv(x).order


def leading(x) -> FieldScalar:
    return valuation_at_vinv(x).leading


class Lattice:
    """The A-span of a list of vectors of length ``dim``."""

    def __init__(self, vectors: Sequence[Sequence], dim: int):
        self.dim = dim
        rows = [list(v) for v in vectors if any(v)]
        for v in rows:
            if len(v) != dim:
                raise LatticeError(f"vector of length {len(v)} in a lattice of rank {dim}")
        basis, pivots = [], []
        for c in range(dim):
            best, best_ord = None, math.inf
            for k, r in enumerate(rows):
                if r[c]:
                    o = order(r[c])
                    if o < best_ord:
                        best, best_ord = k, o
            if best is None:
                continue
            p = rows.pop(best)
            inv = p[c].inverse()
            for k, r in enumerate(rows):
                if r[c]:
                    m = r[c] * inv
                    rows[k] = [x - m * y if y else x for x, y in zip(r, p)]
            rows = [r for r in rows if any(r)]
            basis.append(p)
            pivots.append(c)
        self.basis = basis
        self.pivots = pivots

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coefficients(self, w: Sequence) -> list:
        """Coordinates of ``w`` in the lattice basis (over Q(v))."""
        w = list(w)
        out = []
        for p, c in zip(self.basis, self.pivots):
            a = w[c] * p[c].inverse() if w[c] else w[c]
            out.append(a)
            if a:
                w = [x - a * y if y else x for x, y in zip(w, p)]
        if any(w):
            raise LatticeError("vector is outside the Q(v)-span of the lattice")
        return out

    def contains(self, w: Sequence) -> bool:
        try:
            return all(order(a) >= 0 for a in self.coefficients(w) if a)
        except LatticeError:
            return False

    def reduce(self, w: Sequence) -> tuple:
        """Image of ``w`` in L / v^-1 L, as constants in the lattice basis.

        Raises LatticeError when ``w`` is not in the lattice.
        """
        out = []
        for a in self.coefficients(w):
            if not a:
                out.append(FieldScalar())
                continue
            o = order(a)
            if o < 0:
                raise LatticeError("vector is not in the lattice (negative valuation)")
            out.append(leading(a) if o == 0 else FieldScalar())
        return tuple(out)


def is_zero_reduction(r: Sequence) -> bool:
    return not any(r)


def proportional(r1: Sequence, r2: Sequence) -> bool:
    """True if r1 = c * r2 for a nonzero constant c."""
    ratio = None
    for a, b in zip(r1, r2):
        if bool(a) != bool(b):
            return False
        if not a:
            continue
        c = a / b
        if ratio is None:
            ratio = c
        elif c != ratio:
            return False
    return ratio is not None
