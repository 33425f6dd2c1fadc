from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dcond.bernstein import (
    RULES,
    NotApplicable,
    NotIsolated,
    Unsupported,
    bs_monomial,
    bs_quasihomogeneous,
    decide_B,
    milnor_data,
    monomial_equation,
    normalize_factors,
    qh_exponents,
    rescale_roots,
    restrict_at_smooth_factor,
)
from dcond.symbolic import WeightSystem, parse_factors
from dcond.verdict import Status
from dcond.weyl import BFunction, solve_functional_equation

from conftest import P, ring

F = Fraction
R2 = ring("x1,x2")


def test_milnor_cusp():
    w = WeightSystem(("x1", "x2"), (F(1, 2), F(1, 3)))
    md = milnor_data(P("x1^2+x2^3", R2), w)
    assert md.milnor_number == 2
    assert set(md.basis) == {R2.one(), P("x2", R2)}
    assert sorted(md.weights) == [0, F(1, 3)]


def test_milnor_quartic_pair():
    r = ring("x2,x3")
    w = WeightSystem(("x2", "x3"), (F(1, 4), F(1, 4)))
    md = milnor_data(P("x2^4+x3^4", r), w)
    assert md.milnor_number == 9
    got = {m: wt for m, wt in zip(md.basis, md.weights)}
    for i in range(3):
        for j in range(3):
            assert got[r.monomial((i, j))] == F(i + j, 4)


def test_milnor_node_and_non_isolated():
    assert milnor_data(P("x1*x2", R2)).milnor_number == 1
    with pytest.raises(NotIsolated):
        milnor_data(P("x1^2", R2))


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_bs_monomial_power(p):
    assert bs_monomial([p]) == BFunction.from_roots([F(-k, p) for k in range(1, p + 1)])


def test_bs_monomial_examples():
    assert bs_monomial([1, 1]) == BFunction.from_roots([(-1, 2)])
    assert bs_monomial([2, 1]) == BFunction.from_roots([F(-1, 2), (-1, 2)])


@pytest.mark.parametrize("gamma", [(1,), (3,), (2, 1), (1, 1, 1), (2, 2)])
def test_monomial_equation_verifies(gamma):
    assert monomial_equation(gamma).verify()


def _brieskorn_pham(a, b):
    """Independent oracle for x^a + y^b: -1 and -(i/a + j/b), 0 < i < a, 0 < j < b."""
    return {F(-1)} | {-(F(i, a) + F(j, b)) for i in range(1, a) for j in range(1, b)}


@pytest.mark.parametrize("a,b", [(2, 2), (2, 3), (2, 5), (3, 4), (4, 4)])
def test_quasihomogeneous_brieskorn_pham(a, b):
    r = ring("x2,x3")
    bf = bs_quasihomogeneous(P(f"x2^{a}+x3^{b}", r))
    assert bf.root_set() == _brieskorn_pham(a, b)


def test_quasihomogeneous_examples():
    assert bs_quasihomogeneous(P("x1^2+x2^3", R2)) == BFunction.from_roots([-1, F(-5, 6), F(-7, 6)])
    assert bs_quasihomogeneous(P("x1^2+x2^2", R2)) == BFunction.from_roots([(-1, 2)])
    assert bs_quasihomogeneous(P("x2^4+x3^4", ring("x2,x3"))).root_set() == \
        {F(-1), F(-1, 2), F(-3, 4), F(-5, 4), F(-3, 2)}


def test_quasihomogeneous_agrees_with_solver():
    f = P("x1^2+x2^3", R2)
    eq = solve_functional_equation(f, max_order=3, max_coeff_deg=2, max_bdeg=3)
    assert eq.verify() and eq.b == bs_quasihomogeneous(f)


def test_quasihomogeneous_not_applicable():
    with pytest.raises(NotApplicable):
        bs_quasihomogeneous(P("x1^3+x2^4+x1*x2^3", R2))
    with pytest.raises(NotApplicable):
        qh_exponents(P("x1^2*x2", R2))


def test_rescale_examples():
    assert rescale_roots({-1}, 2) == {F(-1, 2), F(-1)} == bs_monomial([2]).root_set()
    assert rescale_roots({F(-1), F(-1, 2)}, 1) == {F(-1), F(-1, 2)}
    assert rescale_roots({F(-1), F(-1, 2)}, 2) == {F(-1, 2), F(-1), F(-1, 4), F(-3, 4)}


roots_st = st.frozensets(st.fractions(min_value=-3, max_value=0, max_denominator=6), min_size=1, max_size=4)


@settings(max_examples=200, deadline=None)
@given(roots_st, st.integers(1, 5), st.integers(1, 5))
def test_rescale_composition(R, p, q):
    assert rescale_roots(rescale_roots(R, p), q) == rescale_roots(R, p * q)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6))
def test_rescale_matches_power_formula(p):
    assert rescale_roots({-1}, p) == bs_monomial([p]).root_set()


def test_restriction_examples():
    r5 = ring("x1,x2,x3,x4,x5")
    out = restrict_at_smooth_factor(P("x1+x2*x3+x4*x5", r5), P("x1", r5))
    assert out == P("-x2*x3-x4*x5", out.ring) or out == P("x2*x3+x4*x5", out.ring)
    r3 = ring()
    out = restrict_at_smooth_factor(P("x1^2+x2^4+x3^4", r3), P("x1", r3))
    assert out == P("x2^4+x3^4", out.ring)
    out = restrict_at_smooth_factor(P("x1^3+x2^4", r3), P("x1-x2*x3", r3))
    assert out == P("x2^3*x3^3+x2^4", out.ring)
    with pytest.raises(Unsupported):
        restrict_at_smooth_factor(P("x1^2"), P("x1^2+x2^2"))


def test_restricted_quadric_b_function():
    r = ring("x2,x3,x4,x5")
    v = decide_B(P("x2*x3+x4*x5", r))
    assert v.roots == BFunction.from_roots([-1, -2])
    assert v.is_fails and v.witness == -2
    assert "quasi-homogeneous" in v.rules()


def test_decide_B_corpus():
    v = decide_B(P("x1*x2*(x1+x2)", R2))
    assert v.is_holds and "linear-arrangement" in v.rules()
    v = decide_B(parse_factors("(x1-x2*x3)*(x1^3+x2^4)", ring()))
    assert v.is_holds and "line-with-plane-curve" in v.rules()
    v = decide_B(P("x1^2+x2^4+x3^4"))
    assert v.is_fails and v.witness == -2 and "quasi-homogeneous" in v.rules()


def test_decide_B_more():
    assert decide_B(P("x1", ring("x1"))).is_holds
    assert decide_B(P("x1^2*(x1+x2^2)", R2)).is_holds
    assert decide_B(parse_factors("(x1^2+x2^3)*(x1^3+x3^2)", ring())).status is Status.UNKNOWN


def test_decide_B_json_round_trip():
    v = decide_B(P("x1^2+x2^4+x3^4"))
    js = v.to_json()
    assert js["verdict"] == "fails" and js["certificate"]["witness_root"] == "-2"


def test_normalize_factors_drops_units_and_content():
    fs, steps = normalize_factors([P("3", R2), P("2*x1^2*x2", R2), P("1+x1", R2)])
    assert {str(f): m for f, m in fs} == {"x1": 2, "x2": 1}
    assert any(s.rule == "unit-factor" for s in steps)


CORPUS = [
    ("x1,x2", "x1*x2*(x1+x2)"),
    ("x1,x2,x3", "(x1-x2*x3)*(x1^3+x2^4)"),
    ("x1,x2,x3", "x1^2+x2^4+x3^4"),
    ("x2,x3,x4,x5", "x2*x3+x4*x5"),
    ("x1,x2", "x1^2*(x1+x2^2)"),
    ("x1,x2", "x1^2*x2^3"),
    ("x1,x2,x3", "(x1-x2*x3)*(x1^3+x2^3)"),
    ("x1,x2", "x1^2+x2^3"),
]
FULL = {(v, p): decide_B(parse_factors(p, ring(v))).status for v, p in CORPUS}


@settings(max_examples=100, deadline=None)
@given(st.sets(st.sampled_from(RULES)), st.sampled_from(CORPUS))
def test_rule_ablation_is_monotone(kept, case):
    v = decide_B(parse_factors(case[1], ring(case[0])), rules=kept)
    assert v.status in (FULL[case], Status.UNKNOWN)
