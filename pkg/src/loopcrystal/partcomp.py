"""Compositions, partitions and the label sets used by crystal operators.

A label at a strictly imaginary vertex is an ordered composition, at an
isotropic vertex a partition (stored sorted descending), at a real vertex a
single part.  The empty label plays the role of ``(0)_i``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .cartan import ISOTROPIC, REAL, STRICT
from .errors import InputError, LabelError


class _NegInf:
    """The sentinel value of epsilon_j on elements unrelated to vertex j."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "-inf"

    def __reduce__(self):
        return (_NegInf, ())

    @property
    def size(self):
        return -math.inf


NEG_INF = _NegInf()


@dataclass(frozen=True, order=False)
class PartLabel:
    kind: str
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in (REAL, ISOTROPIC, STRICT):
            raise InputError(f"unknown vertex class {self.kind!r}")
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise LabelError(f"non-positive part in {parts}")
        if self.kind == ISOTROPIC:
            parts = tuple(sorted(parts, reverse=True))
        elif self.kind == REAL and len(parts) > 1:
            raise LabelError("a real label has at most one part")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __bool__(self):
        return bool(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, k):
        return self.parts[k]

    def multiplicity(self, l: int) -> int:
        return self.parts.count(l)

    def first(self) -> int:
        if not self.parts:
            raise LabelError("empty label has no first part")
        return self.parts[0]

    def __repr__(self):
        return "(" + ",".join(map(str, self.parts or (0,))) + ")"

    def to_json(self) -> list[int]:
        return list(self.parts)


def empty_label(kind: str) -> PartLabel:
    return PartLabel(kind, ())


def label_size(eps) -> float:
    """|eps| with |-inf| = -inf; real epsilons are plain integers."""
    if eps is NEG_INF:
        return -math.inf
    if isinstance(eps, PartLabel):
        return eps.size
    return eps


# ---------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=None)
def compositions(l: int) -> tuple[tuple[int, ...], ...]:
    """All compositions of l, in lexicographically decreasing order."""
    if l == 0:
        return ((),)
    out = []
    for first in range(l, 0, -1):
        out.extend((first,) + rest for rest in compositions(l - first))
    return tuple(out)


@lru_cache(maxsize=None)
def partitions(l: int, largest: int | None = None) -> tuple[tuple[int, ...], ...]:
    """All partitions of l (parts descending), in lexicographically decreasing order."""
    if largest is None:
        largest = l
    if l == 0:
        return ((),)
    out = []
    for first in range(min(l, largest), 0, -1):
        out.extend((first,) + rest for rest in partitions(l - first, first))
    return tuple(out)


def enumerate_labels(kind: str, l: int) -> list[PartLabel]:
    if l < 0:
        raise InputError("negative label size")
    if l == 0:
        return [empty_label(kind)]
    if kind == STRICT:
        return [PartLabel(kind, c) for c in compositions(l)]
    if kind == ISOTROPIC:
        return [PartLabel(kind, c) for c in partitions(l)]
    if kind == REAL:
        return [PartLabel(kind, (l,))]
    raise InputError(f"unknown vertex class {kind!r}")


def labels_up_to(kind: str, bound: int) -> list[PartLabel]:
    return [c for l in range(bound + 1) for c in enumerate_labels(kind, l)]


# ---------------------------------------------------------------------------
# surgery


def remove_first(c: PartLabel) -> tuple[int, PartLabel]:
    if not c.parts:
        raise LabelError("cannot remove a part from the empty label")
    return c.parts[0], PartLabel(c.kind, c.parts[1:])


def remove_part(c: PartLabel, l: int) -> PartLabel:
    """c minus one part equal to l.

    For compositions the part must be the first one; for partitions any
    occurrence will do; a real label loses l from its single part.
    """
    if c.kind == STRICT:
        if not c.parts or c.parts[0] != l:
            raise LabelError(f"{c} does not start with {l}")
        return PartLabel(c.kind, c.parts[1:])
    if c.kind == ISOTROPIC:
        if l not in c.parts:
            raise LabelError(f"{c} has no part {l}")
        parts = list(c.parts)
        parts.remove(l)
        return PartLabel(c.kind, tuple(parts))
    n = c.size - l
    if n < 0:
        raise LabelError(f"{c} is smaller than {l}")
    return PartLabel(c.kind, (n,) if n else ())


def remove_at(c: PartLabel, k: int) -> PartLabel:
    """Composition with its k-th part (0-based) deleted."""
    if not 0 <= k < len(c.parts):
        raise LabelError(f"no part at position {k} in {c}")
    return PartLabel(c.kind, c.parts[:k] + c.parts[k + 1:])


def prepend(l: int, c: PartLabel) -> PartLabel:
    if l <= 0:
        raise LabelError("parts must be positive")
    if c.kind == REAL:
        return PartLabel(c.kind, (c.size + l,))
    return PartLabel(c.kind, (l,) + c.parts)


def reverse(c: PartLabel) -> PartLabel:
    if c.kind == STRICT:
        return PartLabel(c.kind, c.parts[::-1])
    return c


def dominance_less(c: Sequence[int], d: Sequence[int]) -> bool:
    """Prefix-sum dominance c <= d (both of the same total)."""
    c, d = tuple(c), tuple(d)
    if sum(c) != sum(d):
        raise InputError("dominance compares labels of equal size only")
    sc = sd = 0
    for k in range(max(len(c), len(d))):
        sc += c[k] if k < len(c) else 0
        sd += d[k] if k < len(d) else 0
        if sc > sd:
            return False
    return True


def label_order_key(c: PartLabel):
    """Sort key: size first, then lexicographic parts."""
    return (c.size, c.parts)


def partition_count(n: int) -> int:
    """p(n) from the generating function prod 1/(1-x^k), independent of enumeration."""
    coeffs = [1] + [0] * n
    for k in range(1, n + 1):
        for m in range(k, n + 1):
            coeffs[m] += coeffs[m - k]
    return coeffs[n]
