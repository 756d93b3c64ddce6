"""Quiver data, the symmetric Euler form and the weight lattice.

Weights are plain tuples of ints indexed by vertex position.  A vertex is
addressed by its index (declaration order in the quiver file); names are
kept only for display and parsing.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import InputError, QuiverParseError

Weight = tuple[int, ...]

REAL = "real"
ISOTROPIC = "isotropic"
STRICT = "strictly-imaginary"

BUILTIN_QUIVERS = ("sl2", "a2", "jordan", "loop2", "a1loop")


@dataclass(frozen=True)
class QuiverDatum:
    names: tuple[str, ...]
    # arrows[i][j] = number of arrows i -> j; arrows[i][i] = loops at i
    arrows: tuple[tuple[int, ...], ...]
    label: str = ""
    _form: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.names)
        if len(set(self.names)) != n:
            raise InputError("duplicate vertex names")
        if len(self.arrows) != n or any(len(r) != n for r in self.arrows):
            raise InputError("arrow matrix has the wrong shape")
        if any(a < 0 for r in self.arrows for a in r):
            raise InputError("negative arrow count")
        form = tuple(
            tuple(2 - 2 * self.arrows[i][i] if i == j
                  else -(self.arrows[i][j] + self.arrows[j][i]) for j in range(n))
            for i in range(n))
        object.__setattr__(self, "_form", form)

    # -- basic data ---------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def loops(self, i: int) -> int:
        self._check(i)
        return self.arrows[i][i]

    def _check(self, i) -> None:
        if not isinstance(i, int) or not 0 <= i < self.n:
            raise InputError(f"unknown vertex {i!r}")

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InputError(f"unknown vertex {name!r}") from None

    def form(self, i: int, j: int) -> int:
        """Entry (i,j) of the symmetric Euler form (the Cartan matrix)."""
        return self._form[i][j]

    @property
    def cartan_matrix(self) -> tuple[tuple[int, ...], ...]:
        return self._form

    def classify_vertex(self, i: int) -> str:
        w = self.loops(i)
        if w == 0:
            return REAL
        return ISOTROPIC if w == 1 else STRICT

    def is_real(self, i: int) -> bool:
        return self.loops(i) == 0

    def is_imaginary(self, i: int) -> bool:
        return self.loops(i) >= 1

    def is_isotropic(self, i: int) -> bool:
        return self.loops(i) == 1

    def v_power(self, i: int) -> int:
        """Exponent of v in v_i = v^{(i,i)/2}."""
        return self.form(i, i) // 2

    # -- weights ------------------------------------------------------
    def euler_form(self, nu: Sequence[int], beta: Sequence[int]) -> int:
        f = self._form
        return sum(nu[i] * beta[j] * f[i][j]
                   for i in range(self.n) if nu[i] for j in range(self.n) if beta[j])

    def form_with_vertex(self, i: int, nu: Sequence[int]) -> int:
        """(i, nu) for a vertex i."""
        row = self._form[i]
        return sum(row[j] * nu[j] for j in range(self.n))

    def unit(self, i: int, k: int = 1) -> Weight:
        return tuple(k if j == i else 0 for j in range(self.n))

    def zero(self) -> Weight:
        return (0,) * self.n

    def alpha(self, i: int) -> Weight:
        """alpha_i = C e_i in Lambda-coordinates."""
        return tuple(self._form[j][i] for j in range(self.n))

    def c_times(self, nu: Sequence[int]) -> Weight:
        return tuple(self.form_with_vertex(j, nu) for j in range(self.n))

    def module_weight(self, lam: Sequence[int], nu: Sequence[int]) -> Weight:
        """lambda - C nu: the weight of a vector of degree nu below v_lambda."""
        cn = self.c_times(nu)
        return tuple(lam[j] - cn[j] for j in range(self.n))

    def is_dominant(self, lam: Sequence[int]) -> bool:
        return len(lam) == self.n and all(x >= 0 for x in lam)

    def fundamental(self, i: int) -> Weight:
        return self.unit(i)

    def describe(self) -> str:
        parts = [f"{nm}(loops={self.arrows[i][i]})" for i, nm in enumerate(self.names)]
        return ", ".join(parts)


# ---------------------------------------------------------------------------
# weight helpers


def pairing(nu: Sequence[int], beta: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(nu, beta))


def wt_i(nu: Sequence[int], i: int) -> int:
    return nu[i]


def add(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def scale(k: int, a: Sequence[int]) -> Weight:
    return tuple(k * x for x in a)


def height(nu: Sequence[int]) -> int:
    return sum(nu)


def is_nonneg(nu: Sequence[int]) -> bool:
    return all(x >= 0 for x in nu)


def weights_of_height(n: int, h: int) -> Iterator[Weight]:
    """All nu in N^n with |nu| = h, in lexicographically decreasing order."""
    if n == 0:
        if h == 0:
            yield ()
        return
    for first in range(h, -1, -1):
        for rest in weights_of_height(n - 1, h - first):
            yield (first,) + rest


def weights_up_to(n: int, bound: int) -> list[Weight]:
    return [w for h in range(bound + 1) for w in weights_of_height(n, h)]


# ---------------------------------------------------------------------------
# text format


def parse_quiver(text: str, label: str = "") -> QuiverDatum:
    """Parse ``vertex <name> loops=<k>`` / ``edge <src> <dst> mult=<m>`` lines."""
    names: list[str] = []
    loops: dict[str, int] = {}
    edges: list[tuple[str, str, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        kw = toks[0]
        try:
            if kw == "vertex":
                if len(toks) not in (2, 3):
                    raise QuiverParseError(f"line {lineno}: expected 'vertex <name> loops=<k>'")
                name = toks[1]
                k = _kv(toks[2], "loops") if len(toks) == 3 else 0
                if name in loops:
                    raise QuiverParseError(f"line {lineno}: vertex {name!r} declared twice")
                names.append(name)
                loops[name] = k
            elif kw == "edge":
                if len(toks) not in (3, 4):
                    raise QuiverParseError(f"line {lineno}: expected 'edge <src> <dst> mult=<m>'")
                m = _kv(toks[3], "mult") if len(toks) == 4 else 1
                edges.append((toks[1], toks[2], m, lineno))
            else:
                raise QuiverParseError(f"line {lineno}: unknown keyword {kw!r}")
        except ValueError as exc:
            if isinstance(exc, QuiverParseError):
                raise
            raise QuiverParseError(f"line {lineno}: {exc}") from None
    if not names:
        raise QuiverParseError("quiver has no vertices")
    idx = {nm: k for k, nm in enumerate(names)}
    arrows = [[0] * len(names) for _ in names]
    for nm, k in loops.items():
        arrows[idx[nm]][idx[nm]] = k
    for s, t, m, lineno in edges:
        if s not in idx or t not in idx:
            raise QuiverParseError(f"line {lineno}: edge endpoint not declared")
        arrows[idx[s]][idx[t]] += m
    return QuiverDatum(tuple(names), tuple(tuple(r) for r in arrows), label=label)


def _kv(tok: str, key: str) -> int:
    if not tok.startswith(key + "="):
        raise QuiverParseError(f"expected {key}=<int>, got {tok!r}")
    try:
        val = int(tok[len(key) + 1:])
    except ValueError:
        raise QuiverParseError(f"bad integer in {tok!r}") from None
    if val < 0:
        raise QuiverParseError(f"negative count in {tok!r}")
    return val


def render_quiver(q: QuiverDatum) -> str:
    lines = [f"vertex {nm} loops={q.arrows[i][i]}" for i, nm in enumerate(q.names)]
    for i in q.vertices:
        for j in q.vertices:
            if i != j and q.arrows[i][j]:
                lines.append(f"edge {q.names[i]} {q.names[j]} mult={q.arrows[i][j]}")
    return "\n".join(lines) + "\n"


def load_quiver(spec: str | Path) -> QuiverDatum:
    """Load a builtin quiver by name, or a quiver file by path."""
    s = str(spec)
    if s in BUILTIN_QUIVERS:
        text = resources.files("loopcrystal").joinpath(f"data/{s}.quiver").read_text()
        return parse_quiver(text, label=s)
    p = Path(s)
    if not p.exists():
        raise InputError(f"no such quiver file or builtin: {s!r}")
    return parse_quiver(p.read_text(), label=p.stem)


def builtin_quivers() -> dict[str, QuiverDatum]:
    return {nm: load_quiver(nm) for nm in BUILTIN_QUIVERS}


def operator_indices(q: QuiverDatum, nu: Sequence[int]) -> list[tuple[int, int]]:
    """Indices (i,l) of I_infinity whose weight l*e_i fits under nu."""
    out = []
    for i in q.vertices:
        top = 1 if q.is_real(i) else nu[i]
        out.extend((i, l) for l in range(1, min(top, nu[i]) + 1))
    return out


def iter_indices(q: QuiverDatum, bound: int) -> Iterable[tuple[int, int]]:
    for i in q.vertices:
        top = 1 if q.is_real(i) else bound
        for l in range(1, top + 1):
            yield (i, l)
