import random
from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from virmod.action import ModuleInstance, TwistedInstance, WeightVector
from virmod.coeff import AVector, Gamma, OneDim, QLambda, from_poly, to_poly
from virmod.kernel import LaurentPoly, UniPoly, poly_shift
from virmod.oracles import (AbOracleConfig, AbRealization, ConfigError, MWOracleConfig,
                            SliceOverflow, ab_omega_check, check_bracket, check_hv_relations,
                            check_module_axiom, constant_suite, determine_omega_constant,
                            eh_identity_check, eh_sides, intertwiner_check, lemma3_profile,
                            lemma3_suite, mutated_action, mw_cancellation_check, mw_scalars,
                            mw_suite, mw_violations, printed_constant, random_mw_config,
                            reach_suite, reachability_probe, tensor_contrast_check, top_order)

from conftest import rationals


def top_weight_difference(r, l, m):
    """Finite difference of the d_r d_r weight, (l-m-i)^(r+1) (m+i)^(r+1) / ((r+1)!)^2."""
    s = 2 * r + 2
    tot = sum(comb(s, i) * (-1) ** (s - i) * (l - m - i) ** (r + 1) * (m + i) ** (r + 1)
              for i in range(s + 1))
    return Fraction(tot, factorial(r + 1) ** 2)


@pytest.mark.parametrize("r", range(1, 9))
def test_constant_closed_form(r):
    want = (-1) ** (r + 1) * comb(2 * r + 2, r + 1)
    for l, m in [(0, 0), (3, -2), (-5, 4), (7, 7)]:
        assert top_weight_difference(r, l, m) == want


@pytest.mark.parametrize("coeff,want", [
    (Gamma(0, 1, 0), 6),
    (Gamma(Fraction(1, 2), 2, 3), -20),
    (Gamma(0, 1, 1), -20),
])
def test_measured_constant(coeff, want):
    res = determine_omega_constant(ModuleInstance(coeff, Fraction(1, 4)), samples=50, seed=3)
    assert res.independent and res.constant == want and res.samples == 50
    assert res.constant == top_weight_difference(coeff.rank, 1, 2)


def test_measured_constant_qlambda():
    q = QLambda(5, {2, 4, 5}, {2: Fraction(1, 2), 4: -1, 5: 1})
    c, ok = determine_omega_constant(ModuleInstance(q, 0), samples=8, seed=1)
    assert ok and c == top_weight_difference(5, 0, 0) == 924


def test_constant_suite_flags_discrepancy():
    rep = constant_suite(ModuleInstance(Gamma(0, 1, 1), 0), samples=50)
    assert rep.passed and rep.derived["discrepancy"]
    assert rep.derived["printed_constant"] == -720 == printed_constant(2)
    assert printed_constant(1) == 24


def test_constant_needs_rank():
    with pytest.raises(ConfigError):
        determine_omega_constant(ModuleInstance(OneDim(2), 0))


def test_constant_detects_mutated_module():
    # same instance with the omega of a different module: ratios stop agreeing
    inst = ModuleInstance(Gamma(0, 1, 1), 0)

    class Wrong:
        coeff = inst.coeff

        def act(self, m, w):
            return inst.act(m, w) + inst.act(m + 1, w)

    res = determine_omega_constant(Wrong(), samples=10)
    assert not res.independent and res.witnesses


# -- E_h ---------------------------------------------------------------------

def eh_eval(s, m, q):
    lhs = sum(comb(s, i) * (-1) ** (s - i) * (1 - q ** (-m - i)) * (1 - q ** (m + i))
              for i in range(s + 1))
    rhs = -(q ** m * (q - 1) ** s + q ** (-m) * (1 / q - 1) ** s)
    return lhs, rhs


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.integers(-5, 5),
       st.fractions(min_value=-7, max_value=7, max_denominator=9).filter(bool))
def test_eh_pointwise(s, m, q):
    lhs, rhs = eh_eval(s, m, Fraction(q))
    assert lhs == rhs
    L, R = eh_sides(s, m)
    assert sum(c * Fraction(q) ** k for k, c in L.items()) == lhs


def test_eh_suite_and_s0():
    rep = eh_identity_check()
    assert rep.passed and rep.checks == 2 * 12 * 11
    assert rep.derived["s0_identity_holds"] is False
    assert any(eh_eval(0, m, Fraction(2))[0] != eh_eval(0, m, Fraction(2))[1] for m in range(-3, 4))
    with pytest.raises(ConfigError):
        eh_identity_check(s_min=0)


def test_eh_q0_coefficient():
    L, _ = eh_sides(2, -1)
    assert L[0] == 4  # -2 * C(2,1) * (-1)^1
    L, _ = eh_sides(3, 2)
    assert L[0] == 0


# -- bracket suites and negative controls ---------------------------------------

def test_bracket_passes_and_mutants_fail():
    g = ModuleInstance(Gamma(Fraction(1, 2), 2, 3), Fraction(1, 4))
    assert check_bracket(g, window=3, samples=3).passed
    bad = check_bracket(g, window=3, samples=3, act=mutated_action(g, "drop-grade"))
    assert not bad.passed and bad.failures[0]["expected"] != bad.failures[0]["actual"]
    q = ModuleInstance(QLambda(5, {2, 4, 5}, {5: 1}), 0)
    assert not check_bracket(q, window=2, samples=2, act=mutated_action(q, "drop-factorial")).passed


def test_drop_factorial_is_blind_on_gamma():
    # m^(i+1) instead of m^(i+1)/(i+1)! just rescales lambda1, lambda2
    g = ModuleInstance(Gamma(0, 1, 1), 0)
    assert check_bracket(g, window=3, samples=3, act=mutated_action(g, "drop-factorial")).passed


def test_unknown_mutation():
    with pytest.raises(ConfigError):
        mutated_action(ModuleInstance(OneDim(1), 0), "nope")


def test_module_axiom_detects_broken_family():
    class Broken(Gamma):
        # d_1 shifts by 2 instead of 1, so [d_0, d_1] = 2 d_1
        def act(self, i, v):
            if i == 1:
                return from_poly(poly_shift(to_poly(v), 2) * self.lambda1)
            return super().act(i, v)

    assert check_module_axiom(Gamma(1, 2, 3), samples=5).passed
    assert not check_module_axiom(Broken(1, 2, 3), samples=5).passed


def test_hv_requires_alpha_zero():
    with pytest.raises(ConfigError):
        check_hv_relations(ModuleInstance(Gamma(0, 1, 1), 1))
    assert check_hv_relations(ModuleInstance(Gamma(0, 1, 1), 0), window=3, samples=3).passed


# -- omega profiles ----------------------------------------------------------------

@pytest.mark.parametrize("coeff", [Gamma(0, 1, 0), Gamma(0, 1, 1), QLambda(5, {2, 4, 5}, {5: 1})],
                         ids=["gamma-r1", "gamma-r2", "qlambda-r5"])
def test_lemma3_profile(coeff):
    r = coeff.rank
    prof = lemma3_profile(ModuleInstance(coeff, Fraction(1, 3)), samples=4, seed=2)
    assert prof.first_vanishing() == top_order(r) + 1
    top = prof.verdicts[top_order(r)]
    assert top.nonzero == top.total == 4


def test_lemma3_rank0():
    assert lemma3_profile(ModuleInstance(OneDim(Fraction(1, 3)), 0), samples=5).first_vanishing() == 3
    rep = lemma3_suite(ModuleInstance(OneDim(1), 0), samples=5)
    assert rep.passed and rep.derived["first_vanishing_order"] <= 2


def test_lemma3_twisted():
    beta = LaurentPoly({0: 1, 1: 2, -3: -1})
    rep = lemma3_suite(TwistedInstance(Gamma(0, 1, 1), beta), samples=3)
    assert rep.passed and rep.checks > 5


def test_lemma3_s_max_guard():
    with pytest.raises(ConfigError):
        lemma3_profile(ModuleInstance(Gamma(0, 1, 1), 0), s_max=5)


def test_tensor_contrast():
    rep = tensor_contrast_check(Fraction(1, 3), 2, ModuleInstance(Gamma(0, 1, 1), 0), samples=3)
    assert rep.passed
    with pytest.raises(ConfigError):
        tensor_contrast_check(0, 1, ModuleInstance(OneDim(2), 0))


# -- reachability -------------------------------------------------------------------

def test_reach_gamma_full():
    res = reachability_probe(ModuleInstance(Gamma(0, 1, 1), 0),
                             WeightVector.single(AVector.basis(0), 0))
    assert res.full and res.slice_dim == 20
    assert res.level_ranks == sorted(res.level_ranks)


def test_reach_onedim_deficit():
    res = reachability_probe(ModuleInstance(OneDim(0), 0),
                             WeightVector.single(AVector.basis(()), 0))
    assert res.deficit > 0 and res.rank == 1
    rep = reach_suite(ModuleInstance(OneDim(0), 0))
    assert rep.passed and not rep.derived["full"]


def test_reach_caps():
    inst = ModuleInstance(Gamma(0, 1, 1), 0)
    seed = WeightVector.single(AVector.basis(0), 0)
    with pytest.raises(SliceOverflow):
        reachability_probe(inst, seed, slice_cap=10)
    with pytest.raises(SliceOverflow):
        reachability_probe(inst, seed, span_cap=5)


def test_reach_zero_seed():
    res = reachability_probe(ModuleInstance(Gamma(0, 1, 1), 0), WeightVector())
    assert res.rank == 0 and res.level_ranks == [0] * 5


# -- intertwiner ------------------------------------------------------------------------

@pytest.mark.parametrize("n0", range(-2, 3))
def test_intertwiner(n0):
    g = Gamma(Fraction(1, 2), 2, 3)
    assert intertwiner_check(g, Fraction(1, 4), n0, window=3, samples=4).passed


def test_intertwiner_sabotage():
    rep = intertwiner_check(Gamma(0, 1, 1), 0, 1, window=3, samples=4, shift=2)
    assert not rep.passed
    wit = rep.failures[0]
    assert wit["expected"] != wit["actual"]


# -- A_b -------------------------------------------------------------------------------

def test_ab_realization_by_hand():
    A = AbRealization(Fraction(1, 3))
    # d_0 f = D f; d_1 1 = D - 2/3
    assert A.d(0, UniPoly([0, 1])) == UniPoly([0, 0, 1])
    assert A.d(1, UniPoly([1])) == UniPoly([Fraction(-2, 3), 1])
    assert A.t(2, UniPoly([0, 1])) == UniPoly([-2, 1])


@settings(max_examples=25, deadline=None)
@given(rationals.filter(lambda b: b != 1), st.integers(-5, 5), st.integers(-5, 5))
def test_ab_omega0_hand_formula(b, l, m):
    A = AbRealization(b)
    one = UniPoly([1])
    # independent expansion: omega^(0) 1 = d_{l-m} d_m 1 = (D + (l-m)(b-1)) (D - (l-m) + m(b-1))
    lhs = UniPoly([(l - m) * (b - 1), 1]) * UniPoly([-(l - m) + m * (b - 1), 1])
    assert A.omega(l, m, 0, one) == lhs
    assert A.t(l, A.omega0_quadratic(l, m)) == lhs


def test_ab_suite():
    rep = ab_omega_check(AbOracleConfig(Fraction(1, 3)), samples=5)
    assert rep.passed and rep.derived["omega2_nonzero"]
    with pytest.raises(ConfigError):
        AbOracleConfig(1)


# -- MW ---------------------------------------------------------------------------------

def test_mw_guard():
    assert mw_violations(0, 1, 1, 2)
    assert "z*m3 == m4" in mw_violations(2, 1, 1, 2)
    with pytest.raises(ConfigError):
        MWOracleConfig(2, 1, 1, 2)


def test_mw_recursion_directly():
    cfg = MWOracleConfig(2, Fraction(1, 3), Fraction(5, 7), -1)
    c = mw_scalars(cfg, 8)
    assert c[4] == -1 and c[5] == -Fraction(5, 7) * 4 + 2 * -1 * 2
    # c_i is an affine function of i times z^i, so second differences of c_i / z^i vanish
    u = {i: c[i] / cfg.z ** i for i in range(4, 9)}
    assert all(u[i + 1] - 2 * u[i] + u[i - 1] == 0 for i in range(5, 8))


@pytest.mark.parametrize("seed", range(10))
def test_mw_random_configs(seed):
    cfg = random_mw_config(random.Random(seed))
    assert mw_cancellation_check(cfg).passed
    assert not mw_cancellation_check(cfg, c4=cfg.m3).passed
    rep = mw_suite(cfg)
    assert rep.derived["printed_c4_fails"] and rep.derived["printed_c4_witness"]["inputs"] == {"i": 4}


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([Gamma(0, 1, 0), Gamma(1, 2, 3), OneDim(Fraction(1, 2)), OneDim(1)]),
       rationals, st.integers(0, 1000))
def test_profile_monotone(coeff, alpha, seed):
    prof = lemma3_profile(ModuleInstance(coeff, alpha), samples=3, seed=seed)
    orders = sorted(prof.verdicts)
    for s, t in zip(orders, orders[1:]):
        if prof.verdicts[s].vanishes:
            assert prof.verdicts[t].vanishes
