"""Virasoro actions on N(M, alpha) = M (x) C[t, 1/t] and its beta-twisted form."""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .coeff import AVector, combine, vsum
from .kernel import LaurentPoly, Q, binomial, factorial


class FamilyMismatch(TypeError):
    pass


class WeightVector:
    """Finite sum of components v_n (x) t^n, stored as {n: AVector}."""

    __slots__ = ("_c",)

    def __init__(self, components: Mapping[int, AVector] | Iterable = ()):
        items = components.items() if isinstance(components, Mapping) else components
        c: dict[int, AVector] = {}
        for n, v in items:
            n = int(n)
            v = c[n] + v if n in c else v
            if v:
                c[n] = v
            else:
                c.pop(n, None)
        self._c = c

    @classmethod
    def single(cls, v: AVector, n: int = 0) -> "WeightVector":
        return cls({n: v})

    @property
    def components(self) -> dict[int, AVector]:
        return dict(self._c)

    def grades(self) -> list[int]:
        return sorted(self._c)

    def items(self):
        return sorted(self._c.items())

    def __getitem__(self, n: int) -> AVector:
        return self._c.get(n, AVector())

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if not isinstance(other, WeightVector):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other: "WeightVector") -> "WeightVector":
        return WeightVector(list(self._c.items()) + list(other._c.items()))

    def __neg__(self):
        return WeightVector({n: -v for n, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "WeightVector":
        c = Q(c)
        if not c:
            return WeightVector()
        return WeightVector({n: v.scale(c) for n, v in self._c.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def coords(self) -> dict:
        """Flat {(grade, key): coefficient} view used by the linear algebra."""
        return {(n, k): c for n, v in self._c.items() for k, c in v.items()}

    def __repr__(self):
        return f"WeightVector({self.items()})"


def wsum(vectors: Iterable[WeightVector]) -> WeightVector:
    acc: dict[int, list[AVector]] = {}
    for w in vectors:
        for n, v in w._c.items():
            acc.setdefault(n, []).append(v)
    return WeightVector({n: vsum(vs) for n, vs in acc.items()})


@lru_cache(maxsize=1024)
def weights(m: int, r: int) -> tuple[Fraction, ...]:
    """Coefficients m^(i+1)/(i+1)! of d_i, i = 0..r."""
    return tuple(Fraction(m) ** (i + 1) / factorial(i + 1) for i in range(r + 1))


@lru_cache(maxsize=8192)
def _images(coeff, v: AVector) -> tuple:
    """(d_0 v, ..., d_top v); shared by every d_m applied to the same v."""
    return tuple(coeff.act(i, v) for i in range(coeff.max_index + 1))


def module_part(coeff, m: int, v: AVector, r: int | None = None) -> AVector:
    r = coeff.rank if r is None else r
    imgs = _images(coeff, v)
    return combine((c, imgs[i]) for i, c in enumerate(weights(m, r)))


@dataclass(frozen=True)
class ModuleInstance:
    coeff: object
    alpha: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "alpha", Q(self.alpha))

    @property
    def rank(self) -> int:
        return self.coeff.rank

    def act(self, m: int, w: WeightVector) -> WeightVector:
        return d_act(self, m, w)


@dataclass(frozen=True)
class TwistedInstance:
    coeff: object
    beta: LaurentPoly

    @property
    def rank(self) -> int:
        return self.coeff.rank

    @property
    def base(self) -> ModuleInstance:
        return ModuleInstance(self.coeff, 0)

    def act(self, n: int, w: WeightVector) -> WeightVector:
        return twisted_d_act(self, n, w)


def d_act(inst: ModuleInstance, m: int, w: WeightVector) -> WeightVector:
    """d_m (v (x) t^n) = ((alpha + n) v + sum_i m^(i+1)/(i+1)! d_i v) (x) t^(n+m)."""
    if not isinstance(w, WeightVector):
        raise FamilyMismatch(f"expected a WeightVector, got {type(w).__name__}")
    coeff, alpha = inst.coeff, inst.alpha
    out = {}
    for n, v in w._c.items():
        out[n + m] = v.scale(alpha + n) + module_part(coeff, m, v)
    return WeightVector(out)


def c_act(w: WeightVector) -> WeightVector:
    return WeightVector()


def t_act(k: int, w: WeightVector) -> WeightVector:
    return WeightVector({n + k: v for n, v in w._c.items()})


def twisted_d_act(inst: TwistedInstance, n: int, w: WeightVector) -> WeightVector:
    """d_n o w = d_n w + beta t^n w, with d_n the untwisted action at alpha = 0."""
    out = d_act(inst.base, n, w)
    for k, b in inst.beta.items():
        out = out + t_act(n + k, w).scale(b)
    return out


@dataclass(frozen=True)
class OmegaSpec:
    l: int
    m: int
    s: int

    def __post_init__(self):
        if self.s < 0:
            raise ValueError("omega order s must be nonnegative")

    def terms(self) -> list[tuple[Fraction, int, int]]:
        """[(C(s,i)(-1)^(s-i), l-m-i, m+i)] for i = 0..s."""
        l, m, s = self.l, self.m, self.s
        return [(binomial(s, i) * (-1) ** (s - i), l - m - i, m + i) for i in range(s + 1)]


def omega_apply(spec: OmegaSpec, w: WeightVector, inst,
                act: Callable | None = None) -> WeightVector:
    """sum_i C(s,i)(-1)^(s-i) d_{l-m-i} d_{m+i} w, by literal repeated action."""
    act = act or inst.act
    return wsum(act(a, act(b, w)).scale(c) for c, a, b in spec.terms())


def omega_table(inst, l: int, m: int, w: WeightVector, s_max: int) -> list[WeightVector]:
    """[omega^(s)_{l,m} w for s = 0..s_max], sharing the products d_{l-m-i} d_{m+i} w."""
    prods = [inst.act(l - m - i, inst.act(m + i, w)) for i in range(s_max + 1)]
    out = []
    for s in range(s_max + 1):
        out.append(wsum(prods[i].scale(binomial(s, i) * (-1) ** (s - i)) for i in range(s + 1)))
    return out


def dr_squared_shift(inst, l: int, w: WeightVector) -> WeightVector:
    """sum_i d_r^2 v_i (x) t^(i+l)."""
    coeff, r = inst.coeff, inst.coeff.rank
    return WeightVector({n + l: coeff.act(r, coeff.act(r, v)) for n, v in w._c.items()})


def random_weight_vector(coeff, rng: random.Random, grades=(-3, 3), max_terms: int = 3,
                         degree: int | None = None) -> WeightVector:
    while True:
        k = rng.randint(1, max_terms)
        ns = rng.sample(range(grades[0], grades[1] + 1), k)
        if degree is None:
            w = WeightVector({n: coeff.random_vector(rng) for n in ns})
        else:
            w = WeightVector({n: coeff.random_vector(rng, degree) for n in ns})
        if w:
            return w
