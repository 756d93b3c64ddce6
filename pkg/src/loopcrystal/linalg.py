"""Dense exact linear algebra over Q(v) and its radical extension.

Matrices are lists of rows.  Entries may be :class:`RationalFunction` or
:class:`FieldScalar`; both implement the field operators, and zero-ness is
``not entry``.  Pivots are chosen with the smallest total degree to keep the
intermediate rational functions small.
"""
from __future__ import annotations

from typing import Sequence

from .errors import TheoryViolation
from .scalars import FieldScalar, RationalFunction

ZERO = RationalFunction(0)
ONE = RationalFunction(1)


def _weight(x) -> int:
    if isinstance(x, RationalFunction):
        return x.num.degree() + x.den.degree()
    if isinstance(x, FieldScalar):
        return sum(q.num.degree() + q.den.degree() + 1 for q in x.terms.values())
    return 0


def copy_matrix(m):
    return [list(r) for r in m]


def transpose(m):
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def mat_vec(m, x):
    out = []
    for row in m:
        acc = ZERO
        for a, b in zip(row, x):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def vec_mat(x, m):
    """Row vector times matrix."""
    if not m:
        return []
    out = [ZERO] * len(m[0])
    for a, row in zip(x, m):
        if not a:
            continue
        for j, b in enumerate(row):
            if b:
                out[j] = out[j] + a * b
    return out


def mat_mul(a, b):
    return [vec_mat(row, b) for row in a]


def row_reduce(m, ncols: int | None = None):
    """Reduced row echelon form.  Returns ``(rref_rows, pivot_columns)``."""
    rows = copy_matrix(m)
    if not rows:
        return [], []
    ncols = len(rows[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        best, best_w = None, None
        for k in range(r, len(rows)):
            x = rows[k][c]
            if x:
                w = _weight(x)
                if best is None or w < best_w:
                    best, best_w = k, w
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        piv = rows[r][c]
        inv = piv.inverse()
        rows[r] = [x * inv if x else x for x in rows[r]]
        for k in range(len(rows)):
            if k != r:
                f = rows[k][c]
                if f:
                    pr = rows[r]
                    rows[k] = [x - f * y if y else x for x, y in zip(rows[k], pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(m) -> int:
    return len(row_reduce(m)[1])


def nullspace(m, ncols: int | None = None):
    """Basis of {x : m x = 0}, as a list of column vectors."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    if not m:
        return [[ONE if j == k else ZERO for j in range(ncols)] for k in range(ncols)]
    rref, piv = row_reduce(m, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for r, p in enumerate(piv):
            x[p] = -rref[r][f]
        basis.append(x)
    return basis


def solve(a, b):
    """Solve a x = b for square invertible a (b a vector or a matrix of columns)."""
    n = len(a)
    if n == 0:
        return []
    single = not isinstance(b[0], list)
    cols = [b] if single else transpose(b)
    aug = [list(a[i]) + [c[i] for c in cols] for i in range(n)]
    rref, piv = row_reduce(aug, n)
    if piv != list(range(n)):
        raise TheoryViolation("singular system where an invertible one was expected")
    sol = [[rref[i][n + k] for i in range(n)] for k in range(len(cols))]
    return sol[0] if single else transpose(sol)


def inverse(a):
    n = len(a)
    ident = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    return solve(a, ident)


def independent_rows(m) -> list[int]:
    """Greedy: indices of the first maximal set of linearly independent rows."""
    piv = row_reduce(transpose(m), len(m))[1] if m else []
    return piv


def is_zero_vector(x: Sequence) -> bool:
    return not any(x)
