"""Verification suites: bracket checks, omega annihilation profiles, the omega
constant oracle, reachability, intertwiners and the comparison identities.

Every suite is deterministic in its ``seed`` and returns a
:class:`VerificationReport`; a failing identity is a result, never an
exception.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .action import (ModuleInstance, OmegaSpec, TwistedInstance, WeightVector,
                     dr_squared_shift, module_part, omega_apply, omega_table,
                     random_weight_vector, t_act)
from .coeff import AVector, OneDim, vsum
from .kernel import LaurentPoly, Q, UniPoly, binomial, factorial, poly_shift
from .linalg import Echelon


class ConfigError(ValueError):
    """Inputs violate a suite's preconditions (maps to CLI exit code 2)."""


class SliceOverflow(ConfigError):
    pass


@dataclass
class VerificationReport:
    suite: str
    parameters: dict = field(default_factory=dict)
    checks: int = 0
    failures: list = field(default_factory=list)
    derived: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    skipped: bool = False

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, inputs, expected, actual) -> bool:
        self.checks += 1
        if not ok:
            self.failures.append({"inputs": inputs, "expected": expected, "actual": actual})
        return ok

    def summary(self) -> str:
        if self.skipped:
            return f"{self.suite}: SKIPPED ({'; '.join(self.notes)})"
        verdict = "PASS" if self.passed else f"FAIL ({len(self.failures)} failures)"
        return f"{self.suite}: {verdict} [{self.checks} checks]"


def _rand_q(rng, span=9, den=5, nonzero=False):
    while True:
        q = Fraction(rng.randint(-span, span), rng.randint(1, den))
        if q or not nonzero:
            return q


def _vector_params(inst) -> dict:
    out = {"family": inst.coeff.family, "rank": inst.coeff.rank}
    out.update(inst.coeff.params())
    if isinstance(inst, TwistedInstance):
        out["beta"] = inst.beta
    else:
        out["alpha"] = inst.alpha
    return out


# -- bracket suites ----------------------------------------------------------

MUTATIONS = ("drop-factorial", "drop-grade")


def mutated_action(inst, kind: str = "drop-factorial") -> Callable[[int, WeightVector], WeightVector]:
    """Negative controls for the bracket suite.

    ``drop-factorial`` uses m^(i+1) in place of m^(i+1)/(i+1)!.  On Gamma this only
    rescales lambda1, lambda2 (another Gamma module), so it is caught from rank 3 on.
    ``drop-grade`` forgets the grade n in the scalar alpha + n and breaks every family.
    """
    if kind not in MUTATIONS:
        raise ConfigError(f"unknown mutation {kind!r}; choose from {MUTATIONS}")
    coeff = inst.coeff
    alpha = getattr(inst, "alpha", Fraction(0))

    def act(m, w):
        out = {}
        for n, v in w.components.items():
            if kind == "drop-factorial":
                part = vsum(coeff.act(i, v).scale(Fraction(m) ** (i + 1))
                            for i in range(coeff.rank + 1))
                out[n + m] = v.scale(alpha + n) + part
            else:
                out[n + m] = v.scale(alpha) + module_part(coeff, m, v)
        res = WeightVector(out)
        if isinstance(inst, TwistedInstance):
            for k, b in inst.beta.items():
                res = res + t_act(m + k, w).scale(b)
        return res

    return act


def check_bracket(inst, window: int = 5, samples: int = 20, seed: int = 0, degree: int = 4,
                  act: Callable | None = None) -> VerificationReport:
    """[d_a, d_b] w == (b - a) d_{a+b} w for |a|, |b| <= window (central part acts as 0)."""
    if window < 1:
        raise ConfigError("window must be at least 1")
    act = act or inst.act
    rep = VerificationReport("bracket", {**_vector_params(inst), "window": window,
                                         "samples": samples, "seed": seed, "degree": degree})
    rng = random.Random(seed)
    idx = range(-window, window + 1)
    for k in range(samples):
        w = random_weight_vector(inst.coeff, rng, degree=degree)
        once = {b: act(b, w) for b in idx}
        summed = {c: act(c, w) for c in range(-2 * window, 2 * window + 1)}
        for a in idx:
            for b in idx:
                lhs = act(a, once[b]) - act(b, once[a])
                rhs = summed[a + b].scale(b - a)
                rep.record(lhs == rhs, {"sample": k, "a": a, "b": b, "w": w}, rhs, lhs)
    return rep


def check_module_axiom(coeff, samples: int = 20, seed: int = 0, degree: int | None = None
                       ) -> VerificationReport:
    """d_i d_j v - d_j d_i v == (j - i) d_{i+j} v (zero above the top index), all i, j."""
    rep = VerificationReport("module-axiom", {"family": coeff.family, **coeff.params(),
                                              "samples": samples, "seed": seed})
    rng = random.Random(seed)
    top = coeff.max_index
    for k in range(samples):
        v = coeff.random_vector(rng) if degree is None else coeff.random_vector(rng, degree)
        acts = {i: coeff.act(i, v) for i in range(top + 1)}
        for i in range(top + 1):
            for j in range(top + 1):
                lhs = coeff.act(i, acts[j]) - coeff.act(j, acts[i])
                rhs = acts[i + j].scale(j - i) if i + j <= top else AVector()
                rep.record(lhs == rhs, {"sample": k, "i": i, "j": j, "v": v}, rhs, lhs)
    return rep


def check_hv_relations(inst: ModuleInstance, window: int = 5, samples: int = 20, seed: int = 0,
                       degree: int = 4) -> VerificationReport:
    """[d_n, t^m] = m t^(m+n) and [t^n, t^m] = 0 on N(M, 0); centre acts as zero."""
    if not isinstance(inst, ModuleInstance) or inst.alpha != 0:
        raise ConfigError("Heisenberg-Virasoro relations are checked on a plain instance at alpha = 0")
    rep = VerificationReport("hv", {**_vector_params(inst), "window": window,
                                    "samples": samples, "seed": seed})
    rng = random.Random(seed)
    idx = range(-window, window + 1)
    zero = WeightVector()
    for k in range(samples):
        w = random_weight_vector(inst.coeff, rng, degree=degree)
        for n in idx:
            dn = inst.act(n, w)
            for m in idx:
                lhs = inst.act(n, t_act(m, w)) - t_act(m, dn)
                rhs = t_act(m + n, w).scale(m)
                rep.record(lhs == rhs, {"sample": k, "rel": "[d_n,t^m]", "n": n, "m": m, "w": w},
                           rhs, lhs)
                tt = t_act(n, t_act(m, w)) - t_act(m, t_act(n, w))
                rep.record(tt == zero, {"sample": k, "rel": "[t^n,t^m]", "n": n, "m": m, "w": w},
                           zero, tt)
    return rep


# -- omega annihilation ------------------------------------------------------

@dataclass
class Verdict:
    vanishes: bool
    nonzero: int
    total: int
    witness: dict | None = None


@dataclass
class AnnihilationProfile:
    rank: int
    verdicts: dict  # s -> Verdict

    def vanishing_orders(self) -> list[int]:
        return [s for s, v in sorted(self.verdicts.items()) if v.vanishes]

    def first_vanishing(self) -> int | None:
        """Smallest s from which every larger profiled order vanishes."""
        first = None
        for s in sorted(self.verdicts, reverse=True):
            if not self.verdicts[s].vanishes:
                break
            first = s
        return first


def top_order(rank: int) -> int:
    return 2 * rank + 2


def lemma3_profile(inst, s_max: int | None = None, samples: int = 10, seed: int = 0,
                   window: int = 4, degree: int = 3) -> AnnihilationProfile:
    r = inst.coeff.rank
    s_max = top_order(r) + 4 if s_max is None else s_max
    if s_max < top_order(r) + 1:
        raise ConfigError(f"s_max must be at least 2r+3 = {top_order(r) + 1}")
    rng = random.Random(seed)
    verdicts = {s: Verdict(True, 0, 0) for s in range(s_max + 1)}
    for k in range(samples):
        w = random_weight_vector(inst.coeff, rng, degree=degree)
        l, m = rng.randint(-window, window), rng.randint(-window, window)
        for s, val in enumerate(omega_table(inst, l, m, w, s_max)):
            v = verdicts[s]
            v.total += 1
            if val:
                v.nonzero += 1
                if v.vanishes:
                    v.vanishes = False
                    v.witness = {"sample": k, "l": l, "m": m, "w": w, "value": val}
    return AnnihilationProfile(r, verdicts)


def lemma3_suite(inst, s_max: int | None = None, samples: int = 10, seed: int = 0,
                 window: int = 4, degree: int = 3) -> VerificationReport:
    """Expected profile: nonzero on every nonzero sample at 2r+2 (d_r injective), zero above.

    For r = 0 the top coefficient is b(1 - b), so order 2 may vanish at b in {0, 1}.
    On a twisted instance, additionally omega^(s) o w == omega^(s) w for s >= r + 3.
    """
    coeff = inst.coeff
    r = coeff.rank
    top = top_order(r)
    s_max = top + 4 if s_max is None else s_max
    rep = VerificationReport("lemma3", {**_vector_params(inst), "s_max": s_max,
                                        "samples": samples, "seed": seed, "window": window})
    prof = lemma3_profile(inst, s_max, samples, seed, window, degree)
    expect_top = coeff.dr_injective()
    if r == 0:
        b = coeff.b
        expect_top = b * (1 - b) != 0
        rep.notes.append("rank 0: top coefficient at order 2 is b(1-b)")
    if not coeff.dr_injective() and r > 0:
        rep.notes.append("d_r not injective: outside the simplicity theorem's hypotheses")
    for s, v in sorted(prof.verdicts.items()):
        if s > top:
            rep.record(v.vanishes, {"s": s}, "vanishes", v.witness)
        elif s == top:
            want = v.total if expect_top else 0
            rep.record(v.nonzero == want, {"s": s, "samples": v.total},
                       f"nonzero on {want} samples", f"nonzero on {v.nonzero} samples")
    rep.derived["profile"] = {s: ("vanishes" if v.vanishes else f"nonzero {v.nonzero}/{v.total}")
                              for s, v in sorted(prof.verdicts.items())}
    rep.derived["first_vanishing_order"] = prof.first_vanishing()
    if isinstance(inst, TwistedInstance):
        _twist_agreement(inst, rep, s_max, samples, seed, window, degree)
    return rep


def _twist_agreement(inst: TwistedInstance, rep: VerificationReport, s_max, samples, seed,
                     window, degree):
    rng = random.Random(seed + 1)
    r = inst.coeff.rank
    base = inst.base
    for k in range(samples):
        w = random_weight_vector(inst.coeff, rng, degree=degree)
        l, m = rng.randint(-window, window), rng.randint(-window, window)
        tw = omega_table(inst, l, m, w, s_max)
        pl = omega_table(base, l, m, w, s_max)
        for s in range(r + 3, s_max + 1):
            rep.record(tw[s] == pl[s], {"twist": True, "s": s, "l": l, "m": m, "w": w},
                       pl[s], tw[s])


@dataclass
class OmegaConstant:
    constant: Fraction | None
    independent: bool
    samples: int
    witnesses: list = field(default_factory=list)

    def __iter__(self):
        return iter((self.constant, self.independent))


def printed_constant(r: int) -> Fraction:
    """The value (2r+2)!(-1)^(r+1) as printed alongside the vanishing statement."""
    return factorial(2 * r + 2) * (-1) ** (r + 1)


def determine_omega_constant(inst, samples: int = 60, seed: int = 0, window: int = 6,
                             degree: int = 3) -> OmegaConstant:
    """Measure c with omega^(2r+2)_{l,m} w == c * sum_i d_r^2 v_i (x) t^(i+l).

    Nothing about c is assumed: each sample yields a ratio, and proportionality
    is checked on every coordinate.
    """
    r = inst.coeff.rank
    if r < 1:
        raise ConfigError("the omega constant oracle needs r >= 1")
    rng = random.Random(seed)
    ratios = set()
    witnesses = []
    used = 0
    for k in range(samples):
        w = random_weight_vector(inst.coeff, rng, degree=degree)
        l, m = rng.randint(-window, window), rng.randint(-window, window)
        om = omega_apply(OmegaSpec(l, m, top_order(r)), w, inst)
        sq = dr_squared_shift(inst, l, w)
        if not sq:
            witnesses.append({"sample": k, "reason": "d_r^2 w vanished", "w": w})
            continue
        used += 1
        col, val = next(iter(sorted(sq.coords().items(), key=repr)))
        c = om.coords().get(col, Fraction(0)) / val
        if om != sq.scale(c):
            witnesses.append({"sample": k, "reason": "not proportional", "l": l, "m": m,
                              "w": w, "omega": om, "dr2": sq})
            continue
        ratios.add(c)
    independent = len(ratios) == 1 and not witnesses
    const = next(iter(ratios)) if len(ratios) == 1 else None
    if len(ratios) > 1:
        witnesses.append({"reason": "inconsistent ratios", "ratios": sorted(ratios)})
    return OmegaConstant(const, independent, used, witnesses)


def constant_suite(inst, samples: int = 60, seed: int = 0, window: int = 6,
                   degree: int = 3) -> VerificationReport:
    r = inst.coeff.rank
    rep = VerificationReport("constant", {**_vector_params(inst), "samples": samples,
                                          "seed": seed, "window": window})
    res = determine_omega_constant(inst, samples, seed, window, degree)
    rep.checks = res.samples
    for wit in res.witnesses:
        rep.failures.append({"inputs": wit, "expected": "proportional with one ratio",
                             "actual": wit.get("reason")})
    printed = printed_constant(r)
    rep.derived.update({
        "rank": r,
        "measured_constant": res.constant,
        "independent": res.independent,
        "samples_used": res.samples,
        "printed_constant": printed,
        "discrepancy": res.constant is not None and res.constant != printed,
    })
    return rep


# -- reachability ------------------------------------------------------------

@dataclass
class ReachReport:
    rank: int
    slice_dim: int
    span_dim: int
    level_ranks: list
    parameters: dict
    note: str = ("finite evidence only: bounded words applied to one seed, "
                 "intersected with a finite slice")

    @property
    def full(self) -> bool:
        return self.rank == self.slice_dim

    @property
    def deficit(self) -> int:
        return self.slice_dim - self.rank


def reachability_probe(inst, seed_vector: WeightVector, degree_cap: int = 3,
                       grade_window: tuple[int, int] = (-2, 2), operator_window: int = 6,
                       max_length: int = 4, slice_cap: int = 5000,
                       span_cap: int = 20000) -> ReachReport:
    """Rank of span{d_{m1}...d_{mk} seed : |mi| <= operator_window, k <= max_length}
    intersected with {grade in window, internal degree <= degree_cap}."""
    coeff = inst.coeff
    lo, hi = grade_window
    basis = coeff.basis(degree_cap)
    slice_dim = (hi - lo + 1) * len(basis)
    if slice_dim > slice_cap:
        raise SliceOverflow(f"slice dimension {slice_dim} exceeds cap {slice_cap}")

    def inside(col):
        n, key = col
        return lo <= n <= hi and coeff.degree(key) <= degree_cap

    # outside columns first, so rows pivoting inside lie entirely in the slice
    ech = Echelon(order=lambda col: (inside(col), col[0], coeff.degree(col[1]), repr(col[1])))
    ops = range(-operator_window, operator_window + 1)
    frontier = []
    if seed_vector:
        ech.add(seed_vector.coords())
        frontier = [seed_vector]
    inside_rank = lambda: sum(1 for p in ech.pivots() if inside(p))
    levels = [inside_rank()]
    for _ in range(max_length):
        new = []
        for w in frontier:
            for m in ops:
                img = inst.act(m, w)
                if img and ech.add(img.coords()) is not None:
                    new.append(img)
                    if ech.rank > span_cap:
                        raise SliceOverflow(f"span dimension exceeded cap {span_cap}")
        frontier = new
        levels.append(inside_rank())
        if not new:
            levels.extend([levels[-1]] * (max_length + 1 - len(levels)))
            break
    params = {"degree_cap": degree_cap, "grade_window": list(grade_window),
              "operator_window": operator_window, "max_length": max_length}
    return ReachReport(inside_rank(), slice_dim, ech.rank, levels, params)


def reach_suite(inst, seed_vector: WeightVector | None = None, **kw) -> VerificationReport:
    coeff = inst.coeff
    if seed_vector is None:
        first = coeff.basis(0)[0]
        seed_vector = WeightVector.single(AVector.basis(first), 0)
    res = reachability_probe(inst, seed_vector, **kw)
    rep = VerificationReport("reach", {**_vector_params(inst), **res.parameters,
                                       "seed_vector": seed_vector})
    expect_full = coeff.rank >= 1 and coeff.dr_injective()
    if not expect_full:
        rep.notes.append("outside the simplicity theorem's hypotheses; fullness not expected")
    elif not res.full:
        rep.notes.append("inconclusive: slice not filled within the word-length bound")
    rep.record(res.rank <= res.slice_dim, {"check": "rank <= slice dimension"},
               res.slice_dim, res.rank)
    mono = all(a <= b for a, b in zip(res.level_ranks, res.level_ranks[1:]))
    rep.record(mono, {"check": "rank nondecreasing in word length"}, "nondecreasing",
               res.level_ranks)
    rep.notes.append(res.note)
    rep.derived.update({"rank": res.rank, "slice_dim": res.slice_dim, "span_dim": res.span_dim,
                        "level_ranks": res.level_ranks, "full": res.full})
    return rep


# -- isomorphism: shift intertwiner --------------------------------------------

def intertwiner_check(coeff, alpha, n0: int, window: int = 5, samples: int = 20, seed: int = 0,
                      shift: int | None = None, degree: int = 3) -> VerificationReport:
    """phi: v(l) -> v(l + n0) must intertwine N(M, alpha) and N(M, alpha - n0).

    ``shift`` overrides the grade shift of phi (negative controls).
    """
    alpha = Q(alpha)
    src, dst = ModuleInstance(coeff, alpha), ModuleInstance(coeff, alpha - n0)
    k = n0 if shift is None else shift
    rep = VerificationReport("intertwiner", {"family": coeff.family, **coeff.params(),
                                             "alpha": alpha, "n0": n0, "shift": k,
                                             "window": window, "samples": samples, "seed": seed})
    rng = random.Random(seed)
    for j in range(samples):
        w = random_weight_vector(coeff, rng, degree=degree)
        pw = t_act(k, w)
        for m in range(-window, window + 1):
            lhs = t_act(k, src.act(m, w))
            rhs = dst.act(m, pw)
            rep.record(lhs == rhs, {"sample": j, "m": m, "w": w}, rhs, lhs)
    return rep


# -- comparison with tensor modules and E_h ------------------------------------

def tensor_contrast_check(a, b, inst, samples: int = 10, seed: int = 0, window: int = 4,
                          degree: int = 3) -> VerificationReport:
    """omega^(3) kills N(OneDim(b), a); omega^(2r+2) never kills a nonzero sample of inst."""
    a, b = Q(a), Q(b)
    r = inst.coeff.rank
    if r < 1:
        raise ConfigError("tensor contrast needs an instance with r >= 1")
    rep = VerificationReport("tensor", {"a": a, "b": b, **_vector_params(inst),
                                        "samples": samples, "seed": seed, "window": window})
    inter = ModuleInstance(OneDim(b), a)
    rng = random.Random(seed)
    idx = range(-window, window + 1)
    for k in range(samples):
        w = random_weight_vector(inter.coeff, rng)
        for l in idx:
            for m in idx:
                val = omega_apply(OmegaSpec(l, m, 3), w, inter)
                rep.record(not val, {"part": "intermediate", "sample": k, "l": l, "m": m, "w": w},
                           WeightVector(), val)
    for k in range(samples):
        w = random_weight_vector(inst.coeff, rng, degree=degree)
        l, m = rng.randint(-window, window), rng.randint(-window, window)
        val = omega_apply(OmegaSpec(l, m, top_order(r)), w, inst)
        rep.record(bool(val), {"part": "N(M)", "sample": k, "l": l, "m": m, "w": w},
                   "nonzero", val)
    return rep


def eh_sides(s: int, m: int) -> tuple[LaurentPoly, LaurentPoly]:
    """Both sides of the E_h scalar identity, with q standing for e^h."""
    q = LaurentPoly.monomial(1)
    qi = LaurentPoly.monomial(-1)
    one = LaurentPoly.const(1)
    lhs = LaurentPoly()
    for i in range(s + 1):
        c = binomial(s, i) * (-1) ** (s - i)
        lhs = lhs + (one - LaurentPoly.monomial(-m - i)) * (one - LaurentPoly.monomial(m + i)) * c
    rhs = -(LaurentPoly.monomial(m) * (q - 1) ** s + LaurentPoly.monomial(-m) * (qi - 1) ** s)
    return lhs, rhs


def eh_identity_check(s_max: int = 12, m_window: int = 5, s_min: int = 1) -> VerificationReport:
    if s_min < 1:
        raise ConfigError("the E_h identity needs s >= 1")
    rep = VerificationReport("eh", {"s_min": s_min, "s_max": s_max, "m_window": m_window})
    for s in range(s_min, s_max + 1):
        for m in range(-m_window, m_window + 1):
            lhs, rhs = eh_sides(s, m)
            rep.record(lhs == rhs, {"s": s, "m": m}, rhs, lhs)
            # q^0 picks up -2 C(s, -m)(-1)^(s+m) from the i = -m term, when that term exists
            c0 = -2 * binomial(s, -m) * (-1) ** (s + m) if 0 <= -m <= s else 0
            rep.record(lhs[0] == c0, {"s": s, "m": m, "check": "q^0 coefficient"}, c0, lhs[0])
    lhs0, rhs0 = eh_sides(0, 1)
    rep.derived["s0_identity_holds"] = lhs0 == rhs0
    return rep


# -- A_b realization ------------------------------------------------------------

@dataclass(frozen=True)
class AbOracleConfig:
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "b", Q(self.b))
        if self.b == 1:
            raise ConfigError("A_b needs b != 1")


class AbRealization:
    """C[D] (D = t d/dt) with t^k f(D) = f(D - k) and d_n = t^n D + n b t^n."""

    def __init__(self, b):
        self.b = Q(b)

    def t(self, k: int, f: UniPoly) -> UniPoly:
        return poly_shift(f, k)

    def d(self, n: int, f: UniPoly) -> UniPoly:
        return UniPoly([n * (self.b - 1), 1]) * poly_shift(f, n)

    def omega(self, l: int, m: int, s: int, f: UniPoly) -> UniPoly:
        out = UniPoly()
        for c, a, bb in OmegaSpec(l, m, s).terms():
            out = out + self.d(a, self.d(bb, f)) * c
        return out

    def omega0_quadratic(self, l: int, m: int) -> UniPoly:
        """D^2 + (m + l b) D + (m(1-b) + l b) m b, the operator multiplying t^l."""
        b = self.b
        return UniPoly([(m * (1 - b) + l * b) * m * b, m + l * b, 1])


def _rand_poly(rng, degree):
    while True:
        f = UniPoly(_rand_q(rng) for _ in range(rng.randint(0, degree) + 1))
        if f:
            return f


def ab_omega_check(config: AbOracleConfig, s_range: Iterable[int] = range(3, 7),
                   window: int = 4, degree: int = 5, samples: int = 20,
                   seed: int = 0) -> VerificationReport:
    rep = VerificationReport("ab", {"b": config.b, "s_range": list(s_range), "window": window,
                                    "degree": degree, "samples": samples, "seed": seed})
    rng = random.Random(seed)
    A = AbRealization(config.b)
    idx = range(-window, window + 1)
    for k in range(samples):
        f = _rand_poly(rng, degree)
        for a in idx:
            for b in idx:
                lhs = A.d(a, A.d(b, f)) - A.d(b, A.d(a, f))
                rhs = A.d(a + b, f) * (b - a)
                rep.record(lhs == rhs, {"part": "bracket", "a": a, "b": b, "f": f}, rhs, lhs)
    # omega^(0) against the displayed quadratic, coefficient by coefficient
    for k in range(samples):
        bb = _rand_q(rng)
        while bb == 1:
            bb = _rand_q(rng)
        l, m = rng.randint(-6, 6), rng.randint(-6, 6)
        B = AbRealization(bb)
        op = poly_shift(B.omega(l, m, 0, UniPoly([1])), -l)  # strip t^l
        want = B.omega0_quadratic(l, m)
        rep.record(op == want, {"part": "omega0", "b": bb, "l": l, "m": m}, want, op)
        f = _rand_poly(rng, degree)
        got = B.omega(l, m, 0, f)
        exp = B.t(l, want * f)
        rep.record(got == exp, {"part": "omega0-on-f", "b": bb, "l": l, "m": m, "f": f}, exp, got)
    for k in range(samples):
        f = _rand_poly(rng, degree)
        l, m = rng.randint(-window, window), rng.randint(-window, window)
        for s in s_range:
            val = A.omega(l, m, s, f)
            rep.record(not val, {"part": "vanishing", "s": s, "l": l, "m": m, "f": f},
                       UniPoly(), val)
    # order 2 survives for generic parameters
    val2 = A.omega(2, 1, 2, UniPoly([1]))
    rep.derived["omega2_witness"] = val2
    rep.derived["omega2_nonzero"] = bool(val2)
    return rep


# -- MW cancellation --------------------------------------------------------------

@dataclass(frozen=True)
class MWOracleConfig:
    z: Fraction
    m2: Fraction
    m3: Fraction
    m4: Fraction

    def __post_init__(self):
        for name in ("z", "m2", "m3", "m4"):
            object.__setattr__(self, name, Q(getattr(self, name)))
        bad = mw_violations(self.z, self.m2, self.m3, self.m4)
        if bad:
            raise ConfigError("MW genericity violated: " + "; ".join(bad))


def mw_violations(z, m2, m3, m4) -> list[str]:
    out = []
    if z == 0:
        out.append("z must be nonzero")
    if z * m3 == m4:
        out.append("z*m3 == m4")
    if 2 * z * m2 == m3:
        out.append("2*z*m2 == m3")
    if 3 * z * m3 == 2 * m4:
        out.append("3*z*m3 == 2*m4")
    if z * z * m2 + m4 == 2 * z * m3:
        out.append("z^2*m2 + m4 == 2*z*m3")
    return out


def random_mw_config(rng: random.Random) -> MWOracleConfig:
    while True:
        z, m2, m3, m4 = (_rand_q(rng, nonzero=True) for _ in range(4))
        if not mw_violations(z, m2, m3, m4):
            return MWOracleConfig(z, m2, m3, m4)


def mw_scalars(config: MWOracleConfig, upto: int, c4=None) -> dict[int, Fraction]:
    """c_i with (d_i - z^(i-1) d_1) v = c_i v."""
    z, m3, m4 = config.z, config.m3, config.m4
    c = {2: config.m2, 3: m3, 4: m4 if c4 is None else Q(c4)}
    for i in range(5, upto + 1):
        c[i] = -(i - 4) * m3 * z ** (i - 3) + (i - 3) * m4 * z ** (i - 4)
    return c


def mw_cancellation_check(config: MWOracleConfig, i_range: Iterable[int] = range(4, 21),
                          c4=None) -> VerificationReport:
    i_range = list(i_range)
    if min(i_range) < 4:
        raise ConfigError("i_range must lie in {4, 5, ...}")
    rep = VerificationReport("mw", {"z": config.z, "m2": config.m2, "m3": config.m3,
                                    "m4": config.m4, "i_range": [min(i_range), max(i_range)],
                                    "c4": config.m4 if c4 is None else Q(c4)})
    c = mw_scalars(config, max(i_range) + 1, c4)
    z = config.z
    for i in i_range:
        val = c[i + 1] - 2 * z * c[i] + z * z * c[i - 1]
        rep.record(val == 0, {"i": i}, 0, val)
    return rep


def mw_suite(config: MWOracleConfig, i_range: Iterable[int] = range(4, 21)) -> VerificationReport:
    """Cancellation with c_4 = m_4, plus the witness that the printed c_4 = m_3 breaks it."""
    rep = mw_cancellation_check(config, i_range)
    printed = mw_cancellation_check(config, i_range, c4=config.m3)
    rep.derived["printed_c4_fails"] = not printed.passed
    rep.derived["printed_c4_witness"] = printed.failures[0] if printed.failures else None
    return rep
