"""Exact scalar and polynomial arithmetic over the rationals.

Scalars are :class:`fractions.Fraction`.  Two polynomial types live here:
``LaurentPoly`` (sparse, integer exponents of a formal variable) and
``UniPoly`` (dense, nonnegative exponents).
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping

Rational = Fraction


def Q(x) -> Fraction:
    """Coerce ints, strings like ``"-3/7"`` and Fractions to a Fraction.

    Floats are rejected: nothing in this package is allowed to round.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def fmt(q: Fraction) -> str:
    return str(q)


def binomial(n: int, k: int) -> Fraction:
    if n < 0 or k < 0:
        raise ValueError("binomial needs nonnegative arguments")
    return Fraction(math.comb(n, k))


def factorial(n: int) -> Fraction:
    return Fraction(math.factorial(n))


class LaurentPoly:
    """Sparse Laurent polynomial ``sum c_k t^k`` with no stored zeros."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        c = {}
        for k, v in (coeffs or {}).items():
            v = Q(v)
            if v:
                c[int(k)] = v
        self._c = c

    @classmethod
    def monomial(cls, k: int, c=1) -> "LaurentPoly":
        return cls({k: c})

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def __getitem__(self, k: int) -> Fraction:
        return self._c.get(k, Fraction(0))

    def support(self) -> list[int]:
        return sorted(self._c)

    def is_constant(self) -> bool:
        return all(k == 0 for k in self._c)

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other):
        other = _as_laurent(other)
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-_as_laurent(other))

    def __rsub__(self, other):
        return _as_laurent(other) - self

    def __mul__(self, other):
        return laurent_mul(self, _as_laurent(other))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        out = LaurentPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __repr__(self):
        if not self._c:
            return "LaurentPoly(0)"
        return "LaurentPoly(" + " + ".join(f"{v}*t^{k}" for k, v in self.items()) + ")"


def _as_laurent(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    return LaurentPoly.const(x)


def laurent_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    out: dict[int, Fraction] = {}
    for i, u in a._c.items():
        for j, v in b._c.items():
            out[i + j] = out.get(i + j, 0) + u * v
    return LaurentPoly(out)


class UniPoly:
    """Dense univariate polynomial, ``coeffs[i]`` is the coefficient of x**i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[object] = ()):
        c = [Q(v) for v in coeffs]
        while c and not c[-1]:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, k: int, c=1) -> "UniPoly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly([other])
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __add__(self, other):
        other = _as_uni(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_uni(other))

    def __rsub__(self, other):
        return _as_uni(other) - self

    def __mul__(self, other):
        other = _as_uni(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return f"UniPoly({[str(c) for c in self.coeffs]})"


def _as_uni(x) -> UniPoly:
    if isinstance(x, UniPoly):
        return x
    return UniPoly([x])


def poly_shift(f: UniPoly, c) -> UniPoly:
    """Return g with g(x) = f(x - c), by binomial expansion."""
    c = Q(c)
    if not c:
        return f
    n = len(f.coeffs)
    out = [Fraction(0)] * n
    for k, a in enumerate(f.coeffs):
        if not a:
            continue
        # (x - c)^k = sum_j C(k, j) x^j (-c)^(k-j)
        p = Fraction(1)
        for j in range(k, -1, -1):
            out[j] += a * math.comb(k, j) * p
            p *= -c
    return UniPoly(out)
