"""Truncated algebras a_r and concrete simple modules over them.

Every module here exposes the same small surface (``rank``, ``act``,
``degree``, ``basis``, ``random_vector``) so that any object providing it
can be fed to :mod:`virmod.action`.  Vectors are :class:`AVector`, a sparse
map from basis keys to rationals; the meaning of a key is owned by the
module:

* ``OneDim``: the single key ``()``
* ``Gamma``: an int ``k`` standing for ``x**k``
* ``QLambda``: a nondecreasing tuple of generator indices outside ``S``,
  the PBW monomial applied to the cyclic vector
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Hashable, Iterable, Mapping

from .kernel import Q, UniPoly, poly_shift


class AVector:
    """Immutable sparse vector; zero coefficients are never stored."""

    __slots__ = ("_t", "_h")

    def __init__(self, terms: Mapping[Hashable, object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        t = {}
        for k, v in items:
            v = Q(v)
            if v:
                t[k] = t.get(k, 0) + v
                if not t[k]:
                    del t[k]
        self._t = t
        self._h = None

    @classmethod
    def _raw(cls, t: dict) -> "AVector":
        """Wrap a dict of nonzero Fractions without re-checking it."""
        self = object.__new__(cls)
        self._t = t
        self._h = None
        return self

    @classmethod
    def basis(cls, key) -> "AVector":
        return cls({key: 1})

    @property
    def terms(self) -> dict:
        return dict(self._t)

    def items(self):
        return self._t.items()

    def keys(self):
        return self._t.keys()

    def __getitem__(self, key) -> Fraction:
        return self._t.get(key, Fraction(0))

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def __eq__(self, other):
        if not isinstance(other, AVector):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self._t.items()))
        return self._h

    def __add__(self, other: "AVector") -> "AVector":
        out = dict(self._t)
        for k, v in other._t.items():
            x = out.get(k, 0) + v
            if x:
                out[k] = x
            else:
                del out[k]
        return AVector._raw(out)

    def __neg__(self):
        return AVector._raw({k: -v for k, v in self._t.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "AVector":
        c = Q(c)
        if not c:
            return AVector()
        return AVector._raw({k: c * v for k, v in self._t.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __repr__(self):
        return f"AVector({ {k: str(v) for k, v in sorted(self._t.items(), key=_sort_key)} })"


def _sort_key(item):
    k = item[0]
    return (len(k), k) if isinstance(k, tuple) else (0, k)


def vsum(vectors: Iterable[AVector]) -> AVector:
    out: dict = {}
    for v in vectors:
        for k, c in v.items():
            out[k] = out.get(k, 0) + c
    return AVector._raw({k: c for k, c in out.items() if c})


def combine(pairs) -> AVector:
    """sum c * v over (c, v) pairs, accumulated in one dict."""
    out: dict = {}
    for c, v in pairs:
        if c:
            for k, x in v._t.items():
                out[k] = out.get(k, 0) + c * x
    return AVector._raw({k: x for k, x in out.items() if x})


# -- the algebra a_r ---------------------------------------------------------

def ar_bracket(i: int, j: int, r: int):
    """Structure constants of a_r: ``[d_i, d_j] = (j - i) d_{i+j}`` truncated above r.

    Returns ``(coefficient, index)`` or ``None`` when the bracket vanishes.
    """
    if not (0 <= i <= r and 0 <= j <= r):
        raise IndexError(f"generator index out of range 0..{r}: ({i}, {j})")
    if i + j > r or i == j:
        return None
    return Fraction(j - i), i + j


@dataclass(frozen=True)
class ArDescriptor:
    r: int

    def bracket(self, i, j):
        return ar_bracket(i, j, self.r)

    def structure_constants(self):
        """Full table as {(i, j): {k: c}}."""
        out = {}
        for i in range(self.r + 1):
            for j in range(self.r + 1):
                b = ar_bracket(i, j, self.r)
                out[i, j] = {b[1]: b[0]} if b else {}
        return out


def _rand_q(rng: random.Random, span=9, den=5) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


# -- Example 1 ---------------------------------------------------------------

@dataclass(frozen=True)
class OneDim:
    """The one-dimensional a_0-module with ``d_0 v = b v``."""

    b: Fraction
    family = "onedim"

    def __post_init__(self):
        object.__setattr__(self, "b", Q(self.b))

    @property
    def rank(self) -> int:
        return 0

    @property
    def max_index(self) -> int:
        return 0

    def act(self, i: int, v: AVector) -> AVector:
        if i != 0:
            raise IndexError(f"OneDim has only d_0, got index {i}")
        return v.scale(self.b)

    def degree(self, key) -> int:
        return 0

    def basis(self, degree_cap: int):
        return [()]

    def random_vector(self, rng: random.Random, degree: int = 0) -> AVector:
        c = _rand_q(rng)
        while not c:
            c = _rand_q(rng)
        return AVector({(): c})

    def format_key(self, key) -> str:
        return "v"

    def dr_injective(self) -> bool:
        return bool(self.b)

    def violations(self) -> list[str]:
        return []

    def params(self) -> dict:
        return {"b": self.b}


# -- Example 2 ---------------------------------------------------------------

@dataclass(frozen=True)
class Gamma:
    """C[x] with d_0 f = (x + alpha1) f and d_i f = lambda_i f(x - i), i = 1, 2.

    With ``lambda2 == 0`` the module is treated as rank 1 so that d_r is the
    injective generator; ``act(2, .)`` then returns zero.
    """

    alpha1: Fraction
    lambda1: Fraction
    lambda2: Fraction
    family = "gamma"

    def __post_init__(self):
        for name in ("alpha1", "lambda1", "lambda2"):
            object.__setattr__(self, name, Q(getattr(self, name)))

    @property
    def effective_rank(self) -> int:
        return 2 if self.lambda2 else 1

    @property
    def rank(self) -> int:
        return self.effective_rank

    @property
    def max_index(self) -> int:
        return 2

    def lam(self, i: int) -> Fraction:
        return (None, self.lambda1, self.lambda2)[i]

    def act(self, i: int, v: AVector) -> AVector:
        if not 0 <= i <= 2:
            raise IndexError(f"Gamma generators are d_0, d_1, d_2; got {i}")
        f = to_poly(v)
        if i == 0:
            return from_poly(UniPoly([self.alpha1, 1]) * f)
        if i > self.effective_rank:
            return AVector()
        return from_poly(poly_shift(f, i) * self.lam(i))

    def degree(self, key) -> int:
        return key

    def basis(self, degree_cap: int):
        return list(range(degree_cap + 1))

    def random_vector(self, rng: random.Random, degree: int = 4) -> AVector:
        while True:
            d = rng.randint(0, degree)
            v = AVector({k: _rand_q(rng) for k in range(d + 1)})
            if v:
                return v

    def format_key(self, key) -> str:
        return "1" if key == 0 else ("x" if key == 1 else f"x^{key}")

    def dr_injective(self) -> bool:
        return bool(self.lam(self.effective_rank))

    def violations(self) -> list[str]:
        if not self.lambda1 and not self.lambda2:
            return ["nonzero: lambda1 or lambda2 must be nonzero"]
        return []

    def params(self) -> dict:
        return {"alpha1": self.alpha1, "lambda1": self.lambda1, "lambda2": self.lambda2}


def to_poly(v: AVector) -> UniPoly:
    if not v:
        return UniPoly()
    n = max(v.keys())
    return UniPoly(v[k] for k in range(n + 1))


def from_poly(f: UniPoly) -> AVector:
    return AVector({k: c for k, c in enumerate(f.coeffs)})


# -- Example 3 ---------------------------------------------------------------

@dataclass(frozen=True)
class QLambda:
    """U(a_r)/I with I the left ideal generated by d_i - lambda_i, i in S.

    Basis: ordered monomials d_{a1} ... d_{ak} vac with a1 <= ... <= ak taken
    from {0..r} minus S.
    """

    r: int
    S: frozenset
    lam: tuple  # sorted ((i, lambda_i), ...) over i in S
    family = "qlambda"

    def __init__(self, r: int, S: Iterable[int], lam: Mapping[int, object] | None = None):
        lam = dict(lam or {})
        S = frozenset(int(i) for i in S)
        object.__setattr__(self, "r", int(r))
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "lam", tuple(sorted((int(i), Q(lam.get(i, 0))) for i in S)))
        extra = set(lam) - S
        if extra:
            raise ValueError(f"lambda given for indices outside S: {sorted(extra)}")

    @property
    def rank(self) -> int:
        return self.r

    @property
    def max_index(self) -> int:
        return self.r

    @property
    def free(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.r + 1) if i not in self.S)

    def lam_of(self, i: int) -> Fraction:
        return dict(self.lam)[i]

    def act(self, i: int, v: AVector) -> AVector:
        if not 0 <= i <= self.r:
            raise IndexError(f"generator index out of range 0..{self.r}: {i}")
        return combine((c, _q_act(self, i, mono)) for mono, c in v.items())

    def degree(self, key) -> int:
        return len(key)

    def basis(self, degree_cap: int):
        out = []
        for d in range(degree_cap + 1):
            out.extend(itertools.combinations_with_replacement(self.free, d))
        return out

    def random_vector(self, rng: random.Random, degree: int = 2) -> AVector:
        keys = self.basis(degree)
        while True:
            picks = rng.sample(keys, min(len(keys), rng.randint(1, 3)))
            v = AVector({k: _rand_q(rng) for k in picks})
            if v:
                return v

    def format_key(self, key) -> str:
        if not key:
            return "vac"
        parts = []
        for i, grp in itertools.groupby(key):
            n = len(list(grp))
            parts.append(f"d{i}" if n == 1 else f"d{i}^{n}")
        return "*".join(parts)

    def dr_injective(self) -> bool:
        # d_r acts by lambda_r on vac; injectivity on Q_lambda is the imported result
        return bool(self.lam_of(self.r)) if self.r in self.S else False

    def violations(self) -> list[str]:
        return validate_qlambda(self)

    def params(self) -> dict:
        return {"r": self.r, "S": sorted(self.S), "lambda": dict(self.lam)}


def validate_qlambda(desc: QLambda) -> list[str]:
    r, S = desc.r, desc.S
    lam = dict(desc.lam)
    out = []
    if r < 3:
        out.append(f"rank: r must be at least 3, got {r}")
    if any(not 1 <= i <= r for i in S):
        out.append("range: S must be a subset of {1..r}")
    if r not in S or not lam.get(r):
        out.append("(I): r must lie in S with lambda_r nonzero")
    for i in S:
        for j in S:
            if i < j and i + j in S and lam[i + j]:
                out.append(f"(II): {i}+{j}={i + j} in S but lambda_{i + j} != 0")
    for j in range(1, r + 1):
        if j not in S and r - j not in S:
            out.append(f"(III): {j} not in S and r-{j}={r - j} not in S")
    # the ordered-monomial basis needs span{d_i : i in S} to close under the bracket
    for i in sorted(S):
        for j in sorted(S):
            if i < j and i + j <= r and i + j not in S:
                out.append(f"closure: [d_{i}, d_{j}] lands on d_{i + j} outside S")
    return out


def validate_descriptor(desc) -> list[str]:
    return list(desc.violations())


@lru_cache(maxsize=None)
def _q_act(desc: QLambda, g: int, mono: tuple) -> AVector:
    """d_g applied to the monomial ``mono`` (on vac), in normal form."""
    if not mono:
        if g in desc.S:
            return AVector({(): desc.lam_of(g)})
        return AVector.basis((g,))
    a, rest = mono[0], mono[1:]
    if g not in desc.S and g <= a:
        return AVector.basis((g,) + mono)
    # d_g d_a = d_a d_g + (a - g) d_{g+a}
    out = _apply(desc, a, _q_act(desc, g, rest))
    if g != a and g + a <= desc.r:
        out = out + _q_act(desc, g + a, rest).scale(a - g)
    return out


def _apply(desc: QLambda, g: int, v: AVector) -> AVector:
    return combine((c, _q_act(desc, g, m)) for m, c in v.items())


def q_lambda_straighten(desc: QLambda, word: Iterable[int]) -> AVector:
    """Normal form of ``d_{w0} d_{w1} ... d_{wk} vac`` (rightmost letter acts first)."""
    word = list(word)
    for i in word:
        if not 0 <= i <= desc.r:
            raise IndexError(f"generator index out of range 0..{desc.r}: {i}")
    v = AVector.basis(())
    for g in reversed(word):
        v = _apply(desc, g, v)
    return v


def a_act(desc, i: int, v: AVector) -> AVector:
    return desc.act(i, v)
