import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from virmod.action import (ModuleInstance, OmegaSpec, TwistedInstance, WeightVector, c_act,
                           d_act, dr_squared_shift, omega_apply, random_weight_vector, t_act,
                           twisted_d_act)
from virmod.coeff import AVector, Gamma, OneDim, QLambda, from_poly, to_poly
from virmod.kernel import LaurentPoly, UniPoly, poly_shift

from conftest import rationals

V = AVector.basis(())


def gamma_display(a1, a2, l1, l2, m, n, f):
    """Oracle: Gamma action written out as a polynomial formula, independent of a_act."""
    x = UniPoly.x()
    return (a2 + n + m * (x + a1)) * f + poly_shift(f, 1) * (Fraction(m * m, 2) * l1) \
        + poly_shift(f, 2) * (Fraction(m ** 3, 6) * l2)


def test_d0_scales_by_weight():
    inst = ModuleInstance(Gamma(1, 2, 3), Fraction(1, 3))
    w = WeightVector({-2: from_poly(UniPoly([1, 5])), 4: from_poly(UniPoly([0, 0, 7]))})
    out = d_act(inst, 0, w)
    assert out == WeightVector({n: v.scale(Fraction(1, 3) + n) for n, v in w.items()})


def test_d1_on_gamma_example():
    inst = ModuleInstance(Gamma(0, 0, 6), 0)
    out = d_act(inst, 1, WeightVector.single(from_poly(UniPoly([1])), 0))
    assert out == WeightVector.single(from_poly(UniPoly([1, 1])), 1)


def test_intermediate_series_example():
    inst = ModuleInstance(OneDim(2), Fraction(1, 2))
    assert d_act(inst, 3, WeightVector.single(V, 1)) == WeightVector.single(V.scale(Fraction(15, 2)), 4)


@settings(max_examples=40, deadline=None)
@given(rationals, rationals, rationals, rationals, st.integers(-6, 6), st.integers(-6, 6),
       st.lists(rationals, min_size=1, max_size=5))
def test_gamma_matches_displayed_formula(a1, a2, l1, l2, m, n, cs):
    if not l1 and not l2:
        l1 = 1
    f = UniPoly(cs)
    inst = ModuleInstance(Gamma(a1, l1, l2), a2)
    got = d_act(inst, m, WeightVector.single(from_poly(f), n))
    assert to_poly(got[n + m]) == gamma_display(a1, a2, l1, l2, m, n, f)


def test_c_and_t():
    w = WeightVector({-1: V, 3: V.scale(2)})
    assert c_act(w) == WeightVector() and c_act(WeightVector()) == WeightVector()
    assert t_act(0, w) == w
    assert t_act(3, WeightVector.single(V, -1)) == WeightVector.single(V, 2)
    assert t_act(2, t_act(-5, w)) == t_act(-3, w)


def test_twisted_examples():
    b = Fraction(7, 3)
    t = LaurentPoly.monomial(1)
    out = twisted_d_act(TwistedInstance(OneDim(b), t), 1, WeightVector.single(V, 0))
    assert out == WeightVector({1: V.scale(b), 2: V})
    g = Gamma(0, 1, 1)
    w = WeightVector({0: from_poly(UniPoly([1, 2])), 2: from_poly(UniPoly([0, 3]))})
    for n in range(-3, 4):
        assert twisted_d_act(TwistedInstance(g, LaurentPoly()), n, w) == d_act(ModuleInstance(g, 0), n, w)
        c = Fraction(-5, 4)
        assert twisted_d_act(TwistedInstance(g, LaurentPoly.const(c)), n, w) == \
            d_act(ModuleInstance(g, c), n, w)


def test_omega_spec_terms():
    spec = OmegaSpec(3, 1, 4)
    terms = spec.terms()
    assert len(terms) == 5
    assert [c for c, _, _ in terms] == [1, -4, 6, -4, 1]
    with pytest.raises(ValueError):
        OmegaSpec(0, 0, -1)


def test_omega_order_zero_is_product():
    inst = ModuleInstance(Gamma(1, 2, 3), 0)
    w = WeightVector.single(from_poly(UniPoly([1, 1])), 2)
    assert omega_apply(OmegaSpec(5, 2, 0), w, inst) == inst.act(3, inst.act(2, w))


@settings(max_examples=40, deadline=None)
@given(rationals, rationals, st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5))
def test_omega_rank_zero_closed_form(b, a, l, m, n):
    # brute force: the three terms (a+n+(m+i)b)(a+n+m+i+(l-m-i)b), second difference in i
    def term(i):
        return (a + n + (m + i) * b) * (a + n + m + i + (l - m - i) * b)
    want2 = term(2) - 2 * term(1) + term(0)
    assert want2 == 2 * b * (1 - b)
    inst = ModuleInstance(OneDim(b), a)
    w = WeightVector.single(V, n)
    assert omega_apply(OmegaSpec(l, m, 2), w, inst) == WeightVector.single(V.scale(want2), n + l)
    assert not omega_apply(OmegaSpec(l, m, 3), w, inst)


def test_dr_squared_shift_examples():
    g = ModuleInstance(Gamma(0, 1, 5), 0)
    f = UniPoly([2, -1, 3])
    out = dr_squared_shift(g, 2, WeightVector.single(from_poly(f), 0))
    assert out == WeightVector.single(from_poly(poly_shift(f, 4) * 25), 2)
    one = ModuleInstance(OneDim(3), 0)
    assert dr_squared_shift(one, -1, WeightVector.single(V, 4)) == WeightVector.single(V.scale(9), 3)
    assert dr_squared_shift(g, 1, WeightVector()) == WeightVector()


INSTANCES = [
    ModuleInstance(OneDim(Fraction(-2, 3)), Fraction(1, 5)),
    ModuleInstance(Gamma(Fraction(1, 2), 2, 3), Fraction(1, 4)),
    ModuleInstance(Gamma(0, 1, 0), 0),
    ModuleInstance(QLambda(5, {2, 4, 5}, {5: 1}), Fraction(-1, 2)),
    TwistedInstance(Gamma(0, 1, 1), LaurentPoly({0: 1, 1: 2, -3: -1})),
    TwistedInstance(OneDim(3), LaurentPoly({2: Fraction(1, 3)})),
]


@pytest.mark.parametrize("inst", INSTANCES, ids=lambda i: type(i).__name__ + "-" + i.coeff.family)
@pytest.mark.parametrize("seed", [1, 2])
def test_virasoro_bracket_property(inst, seed):
    rng = random.Random(seed)
    for _ in range(5):
        w = random_weight_vector(inst.coeff, rng, degree=3)
        a, b = rng.randint(-6, 6), rng.randint(-6, 6)
        lhs = inst.act(a, inst.act(b, w)) - inst.act(b, inst.act(a, w))
        assert lhs == inst.act(a + b, w).scale(b - a)


@pytest.mark.parametrize("inst", INSTANCES[:4], ids=lambda i: i.coeff.family)
def test_grading(inst):
    rng = random.Random(5)
    w = random_weight_vector(inst.coeff, rng)
    for m in (-3, 0, 2):
        out = inst.act(m, w)
        assert set(out.grades()) <= {n + m for n in w.grades()}


def test_heisenberg_virasoro_relations():
    inst = ModuleInstance(Gamma(1, 1, 1), 0)
    rng = random.Random(9)
    w = random_weight_vector(inst.coeff, rng)
    for n in range(-3, 4):
        for m in range(-3, 4):
            comm = inst.act(n, t_act(m, w)) - t_act(m, inst.act(n, w))
            assert comm == t_act(m + n, w).scale(m)


@pytest.mark.parametrize("inst", [INSTANCES[1], INSTANCES[2], INSTANCES[4]],
                         ids=lambda i: type(i).__name__)
def test_lemma3_vanishing_and_proportionality(inst):
    r = inst.coeff.rank
    rng = random.Random(4)
    base = ModuleInstance(inst.coeff, 0) if isinstance(inst, TwistedInstance) else inst
    ratios = set()
    for _ in range(4):
        w = random_weight_vector(inst.coeff, rng, degree=2)
        l, m = rng.randint(-4, 4), rng.randint(-4, 4)
        for s in range(2 * r + 3, 2 * r + 5):
            assert not omega_apply(OmegaSpec(l, m, s), w, inst)
        top = omega_apply(OmegaSpec(l, m, 2 * r + 2), w, base)
        sq = dr_squared_shift(base, l, w)
        (col, val), = list(sq.coords().items())[:1]
        c = top.coords()[col] / val
        assert top == sq.scale(c)
        ratios.add(c)
    assert len(ratios) == 1
