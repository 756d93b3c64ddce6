"""Exact scalars: Q(v), its extension by square roots of positive rationals,
and the valuation at v^-1 = 0.

Polynomials are python-flint ``fmpq_poly`` objects in the variable ``v``.
A :class:`RationalFunction` is kept reduced with a monic denominator, so
equality and hashing are structural.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from flint import fmpq, fmpq_poly

from .errors import InputError

__all__ = [
    "RationalFunction",
    "FieldScalar",
    "ValuationData",
    "valuation_at_vinv",
    "series_expand",
    "parse_scalar",
    "render_scalar",
    "vpow",
    "squarefree_decomposition",
]

_ONE_POLY = fmpq_poly([1])
_ZERO_POLY = fmpq_poly([])


def _to_fmpq(x) -> fmpq:
    if isinstance(x, fmpq):
        return x
    if isinstance(x, Fraction):
        return fmpq(x.numerator, x.denominator)
    if isinstance(x, int):
        return fmpq(x)
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def _fmpq_to_fraction(x: fmpq) -> Fraction:
    return Fraction(int(x.p), int(x.q))


class RationalFunction:
    """Element of Q(v) as a reduced quotient of polynomials in v."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=None, *, _reduced: bool = False):
        if not isinstance(num, fmpq_poly):
            num = fmpq_poly([_to_fmpq(num)])
        if den is None:
            den = _ONE_POLY
        elif not isinstance(den, fmpq_poly):
            den = fmpq_poly([_to_fmpq(den)])
        if not _reduced:
            if den.is_zero():
                raise ZeroDivisionError("zero denominator")
            if num.is_zero():
                num, den = _ZERO_POLY, _ONE_POLY
            else:
                if den.degree() > 0:
                    g = num.gcd(den)
                    if g.degree() > 0:
                        num = num // g
                        den = den // g
                lc = den.leading_coefficient()
                if lc != 1:
                    num = num / lc
                    den = den / lc
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def v_power(cls, k: int) -> "RationalFunction":
        if k >= 0:
            return cls(fmpq_poly([0] * k + [1]), _ONE_POLY, _reduced=True)
        return cls(_ONE_POLY, fmpq_poly([0] * (-k) + [1]), _reduced=True)

    @classmethod
    def coerce(cls, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, (int, Fraction, fmpq)):
            return cls(_to_fmpq(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to RationalFunction")

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return _fmpq_to_fraction(self.num[0]) if not self.is_zero() else Fraction(0)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            if isinstance(other, (int, Fraction, fmpq)):
                other = RationalFunction.coerce(other)
            else:
                return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        if not isinstance(other, RationalFunction):
            if isinstance(other, (int, Fraction, fmpq)):
                other = RationalFunction.coerce(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            if isinstance(other, (int, Fraction, fmpq)):
                c = _to_fmpq(other)
                if c == 0:
                    return RationalFunction()
                return RationalFunction(self.num * c, self.den, _reduced=True)
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return RationalFunction()
        if self.den.degree() == 0 and other.den.degree() == 0:
            return RationalFunction(self.num * other.num, _ONE_POLY, _reduced=True)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, RationalFunction):
            if isinstance(other, (int, Fraction, fmpq)):
                other = RationalFunction.coerce(other)
            else:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.num ** k, self.den ** k, _reduced=True)

    # -- structure ----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction, fmpq)):
            other = RationalFunction.coerce(other)
        if isinstance(other, FieldScalar):
            return FieldScalar.coerce(self) == other
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(self.num.coeffs()), tuple(self.den.coeffs())))
        return self._hash

    def bar(self) -> "RationalFunction":
        """Apply v -> v^-1."""
        if self.num.is_zero():
            return self
        dn, dd = self.num.degree(), self.den.degree()
        rn = fmpq_poly(list(reversed(self.num.coeffs())))
        rd = fmpq_poly(list(reversed(self.den.coeffs())))
        return RationalFunction(rn, rd) * RationalFunction.v_power(dd - dn)

    def order_at_vinv(self) -> float:
        """Order of vanishing at v^-1 = 0 (``math.inf`` for zero)."""
        if self.num.is_zero():
            return math.inf
        return self.den.degree() - self.num.degree()

    def leading_at_vinv(self) -> Fraction:
        return _fmpq_to_fraction(self.num.leading_coefficient()
                                 / self.den.leading_coefficient())

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def __repr__(self):
        return f"RationalFunction({render_rational_function(self)!r})"

    def __str__(self):
        return render_rational_function(self)


def vpow(k: int) -> RationalFunction:
    return _vpow_cached(k)


@lru_cache(maxsize=None)
def _vpow_cached(k: int) -> RationalFunction:
    return RationalFunction.v_power(k)


# ---------------------------------------------------------------------------
# square-root extension


@lru_cache(maxsize=None)
def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return ``(s, d)`` with ``n = s*s*d`` and ``d`` squarefree."""
    if n <= 0:
        raise ValueError("positive integer required")
    s, d = 1, 1
    m = n
    p = 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1
    d *= m
    return s, d


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


ScalarLike = Union["FieldScalar", RationalFunction, int, Fraction]


class FieldScalar:
    """Finite sum ``sum_d q_d * sqrt(d)`` with ``q_d`` in Q(v), ``d`` squarefree."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: dict[int, RationalFunction] | None = None):
        self.terms = {d: q for d, q in (terms or {}).items() if q}
        self._hash = None

    @classmethod
    def coerce(cls, x) -> "FieldScalar":
        if isinstance(x, FieldScalar):
            return x
        rf = RationalFunction.coerce(x)
        return cls({1: rf}) if rf else cls()

    @classmethod
    def sqrt(cls, q) -> "FieldScalar":
        """Square root of a positive rational."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("square root of a negative rational")
        if q == 0:
            return cls()
        s, d = squarefree_decomposition(q.numerator * q.denominator)
        return cls({d: RationalFunction(fmpq(s, q.denominator))})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_rational(self) -> bool:
        return all(d == 1 for d in self.terms)

    def rational_part(self) -> RationalFunction:
        if not self.is_rational():
            raise ValueError("scalar carries a radical summand")
        return self.terms.get(1, RationalFunction())

    def __add__(self, other):
        try:
            other = FieldScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for d, q in other.terms.items():
            out[d] = out[d] + q if d in out else q
        return FieldScalar(out)

    __radd__ = __add__

    def __neg__(self):
        return FieldScalar({d: -q for d, q in self.terms.items()})

    def __sub__(self, other):
        try:
            other = FieldScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return FieldScalar.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, FieldScalar):
            out: dict[int, RationalFunction] = {}
            for d1, q1 in self.terms.items():
                for d2, q2 in other.terms.items():
                    if d1 == 1:
                        d, q = d2, q1 * q2
                    elif d2 == 1:
                        d, q = d1, q1 * q2
                    else:
                        g = math.gcd(d1, d2)
                        d = (d1 // g) * (d2 // g)
                        q = q1 * q2 * g
                    out[d] = out[d] + q if d in out else q
            return FieldScalar(out)
        try:
            rf = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        if not rf:
            return FieldScalar()
        return FieldScalar({d: q * rf for d, q in self.terms.items()})

    __rmul__ = __mul__

    def _conjugate(self, p: int) -> "FieldScalar":
        return FieldScalar({d: (-q if d % p == 0 else q) for d, q in self.terms.items()})

    def inverse(self) -> "FieldScalar":
        if not self.terms:
            raise ZeroDivisionError("inverse of zero")
        primes = sorted({p for d in self.terms for p in _prime_factors(d)})
        numer = FieldScalar.coerce(1)
        cur = self
        for p in primes:
            c = cur._conjugate(p)
            numer = numer * c
            cur = cur * c
        return numer * cur.rational_part().inverse()

    def __truediv__(self, other):
        try:
            other = FieldScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return FieldScalar.coerce(other) * self.inverse()

    def __eq__(self, other):
        try:
            other = FieldScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def bar(self) -> "FieldScalar":
        return FieldScalar({d: q.bar() for d, q in self.terms.items()})

    def __repr__(self):
        return f"FieldScalar({render_scalar(self)!r})"

    def __str__(self):
        return render_scalar(self)


# ---------------------------------------------------------------------------
# valuation


@dataclass(frozen=True)
class ValuationData:
    order: float  # int, or math.inf for zero
    leading: "FieldScalar | None"

    @property
    def in_valuation_ring(self) -> bool:
        return self.order >= 0


def valuation_at_vinv(a) -> ValuationData:
    """Write ``a = v^-k (c + O(v^-1))`` and return ``(k, c)``."""
    a = FieldScalar.coerce(a)
    if not a.terms:
        return ValuationData(math.inf, None)
    k = min(q.order_at_vinv() for q in a.terms.values())
    lead = {d: RationalFunction(_to_fmpq(q.leading_at_vinv()))
            for d, q in a.terms.items() if q.order_at_vinv() == k}
    return ValuationData(int(k), FieldScalar(lead))


def series_expand(a, order: int) -> list[Fraction]:
    """First ``order`` coefficients of ``a`` as a power series in v^-1."""
    if isinstance(a, FieldScalar):
        if not a.is_rational():
            raise ValueError("series expansion needs a scalar without radicals")
        a = a.rational_part()
    a = RationalFunction.coerce(a)
    if a.is_zero():
        return [Fraction(0)] * order
    shift = a.order_at_vinv()
    if shift < 0:
        raise ValueError("pole at v^-1 = 0")
    num = [_fmpq_to_fraction(c) for c in reversed(a.num.coeffs())]
    den = [_fmpq_to_fraction(c) for c in reversed(a.den.coeffs())]
    out = [Fraction(0)] * order
    # num/den as series in w=v^-1, then shift by w^shift
    quot: list[Fraction] = []
    rem = num + [Fraction(0)] * order
    for n in range(order):
        c = rem[n] / den[0] if n < len(rem) else Fraction(0)
        quot.append(c)
        if c:
            for k, dk in enumerate(den):
                if n + k < len(rem):
                    rem[n + k] -= c * dk
    for n in range(order):
        if n - shift >= 0:
            out[n] = quot[n - int(shift)]
    return out


# ---------------------------------------------------------------------------
# text form


def _render_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _render_poly(p: fmpq_poly) -> str:
    coeffs = [_fmpq_to_fraction(c) for c in p.coeffs()]
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if k == 0:
            body = _render_rational(c)
        else:
            mon = "v" if k == 1 else f"v^{k}"
            body = mon if c == 1 else f"{_render_rational(c)}*{mon}"
        parts.append((sign, body))
    if not parts:
        return "0"
    head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return head + "".join(f"{s}{b}" for s, b in parts[1:])


def render_rational_function(r: RationalFunction) -> str:
    n = _render_poly(r.num)
    if r.den.degree() == 0:
        return n
    return f"({n})/({_render_poly(r.den)})"


def render_scalar(a) -> str:
    a = FieldScalar.coerce(a)
    if not a.terms:
        return "0"
    parts = []
    for d in sorted(a.terms):
        body = render_rational_function(a.terms[d])
        if d != 1:
            body = f"sqrt({d})*({body})"
        parts.append(body)
    return " + ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt)|(v)|(.))")


class _Parser:
    def __init__(self, text: str):
        self.toks: list[tuple[str, str]] = []
        for m in _TOKEN.finditer(text):
            if m.group(1):
                self.toks.append(("num", m.group(1)))
            elif m.group(2):
                self.toks.append(("sqrt", "sqrt"))
            elif m.group(3):
                self.toks.append(("v", "v"))
            elif m.group(4) and not m.group(4).isspace():
                self.toks.append(("op", m.group(4)))
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self, val=None):
        tok = self.peek()
        if tok[0] is None or (val is not None and tok[1] != val):
            raise InputError(f"unexpected token {tok[1]!r}, wanted {val!r}")
        self.pos += 1
        return tok

    def expr(self):
        x = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            y = self.term()
            x = x + y if op == "+" else x - y
        return x

    def term(self):
        x = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            y = self.unary()
            x = x * y if op == "*" else x / y
        return x

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        x = self.atom()
        if self.peek()[1] == "^":
            self.take()
            neg = False
            if self.peek()[1] == "-":
                self.take()
                neg = True
            k = int(self.take()[1])
            k = -k if neg else k
            if x.is_rational():
                x = FieldScalar.coerce(x.rational_part() ** k)
            else:
                if k < 0:
                    x = x.inverse()
                    k = -k
                out = FieldScalar.coerce(1)
                for _ in range(k):
                    out = out * x
                x = out
        return x

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return FieldScalar.coerce(int(val))
        if kind == "v":
            self.take()
            return FieldScalar.coerce(vpow(1))
        if kind == "sqrt":
            self.take()
            self.take("(")
            inner = self.expr()
            self.take(")")
            if not inner.is_rational() or not inner.rational_part().is_constant():
                raise InputError("sqrt() accepts a rational constant only")
            return FieldScalar.sqrt(inner.rational_part().constant_value())
        if val == "(":
            self.take()
            x = self.expr()
            self.take(")")
            return x
        raise InputError(f"unexpected token {val!r}")


def parse_scalar(text: str) -> FieldScalar:
    """Parse the textual form produced by :func:`render_scalar` (and more)."""
    p = _Parser(text)
    if not p.toks:
        raise InputError("empty scalar expression")
    try:
        x = p.expr()
    except ZeroDivisionError as exc:
        raise InputError(f"division by zero in {text!r}") from exc
    if p.pos != len(p.toks):
        raise InputError(f"trailing input in {text!r}")
    return x
