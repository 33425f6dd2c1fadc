"""Acceptance criteria 1-13, one verdict line each (see the terminal summary)."""
import random
import time
from fractions import Fraction

import pytest

from dcond.bernstein import bs_monomial, bs_quasihomogeneous, decide_B, rescale_roots
from dcond.conditions import ArrangementSpec, ConditionLattice, decide_A_inv, propagate_implications, \
    verify_generic_arrangement
from dcond.conormal import (
    arrangement_ann_generators,
    arrangement_charvariety_ideal,
    arrangement_twisted_element,
    build_delta_K,
    condition_W,
    conormal_ideal,
    cotangent_names,
    sebastiani_thom_generators,
)
from dcond.family import (
    annihilates_all,
    charvariety_components,
    charvariety_generators,
    displayed_relation,
    line_curve,
    line_curve_annihilators,
    line_curve_element,
    s3_certificate,
)
from dcond.groebner import Ideal, MonomialOrder, ideal_intersect, ideal_member, ideals_equal, syzygies
from dcond.logder import hfree_basis, koszul_free_test, saito_free_test
from dcond.symbolic import Poly, Ring, parse_factors
from dcond.weyl import BFunction, WeylOp, solve_functional_equation, with_s

from conftest import P, record, ring

F = Fraction
R3 = ring()


def _h(g):
    return P(f"(x1-x2*x3)*({g})")


def test_criterion_01_saito_certificates():
    oks = []
    for g in ["x1^3+x2^4", "x1*x2*(x1+x2)"]:
        h = _h(g)
        v = saito_free_test(h, hfree_basis(P(g)))
        cert = v.witness
        oks.append(v.is_holds and cert.verify(h) and cert.determinant == cert.unit * h
                   and cert.unit.constant_term() != 0)
    record(1, all(oks), "Saito criterion: det of the explicit fields is a unit times h, both curves")
    assert all(oks)


def test_criterion_02_koszul_dichotomy():
    a = koszul_free_test(_h("x1^3+x2^4"), hfree_basis(P("x1^3+x2^4")))
    b = koszul_free_test(_h("x1*x2*(x1+x2)"), hfree_basis(P("x1*x2*(x1+x2)")))
    ok = a.is_holds and b.is_fails
    record(2, ok, "Koszul-free: holds for x1^3+x2^4, fails for x1*x2*(x1+x2)")
    assert ok


def test_criterion_03_annihilation_certificates():
    data = line_curve(P("x1^3+x2^3"))
    family = all(annihilates_all(line_curve_annihilators(data), line_curve_element(data)))
    pair = [P("x1^2+x2^3+x3^4"), P("2*x1^2+x2^3+3*x3^4")]
    generic = verify_generic_arrangement(ArrangementSpec(pair)).is_holds
    ops = arrangement_ann_generators(pair, 0)
    arr = bool(ops) and all(annihilates_all(ops, arrangement_twisted_element(pair, 0)))
    ok = family and generic and arr
    record(3, ok, f"annihilators: 3 family operators and {len(ops)} arrangement operators, zero residual")
    assert ok


@pytest.mark.xfail(strict=True, reason="the displayed relation is not an identity as written; "
                   "see test_criterion_04_membership_certificate")
def test_criterion_04_displayed_identity():
    lhs, rhs = displayed_relation(line_curve(P("x1^3+x2^3")))
    ok = lhs == rhs
    record(4, ok, "displayed operator relation for g = x1^3+x2^3 as an exact Weyl identity")
    assert ok


def test_criterion_04_membership_certificate():
    # what the relation is used for: S3 lies in the left ideal of the order-one operators
    cert = s3_certificate(line_curve(P("x1^3+x2^3")))
    ok = cert is not None and cert.verify()
    print(f"ACCEPTANCE  4 (supporting): {'PASS' if ok else 'FAIL'}  S3 = sum c_i * delta_i verified exactly")
    assert ok


def test_criterion_05_functional_equations():
    oks, worst = [], 0.0
    r = ring("x1")
    sr = with_s(r)
    for p in range(1, 5):
        t = time.perf_counter()
        eq = solve_functional_equation(P(f"x1^{p}", r), max_order=p, max_coeff_deg=0, max_bdeg=p)
        worst = max(worst, time.perf_counter() - t)
        want_b = BFunction.from_roots([-1] + [F(-k, p) for k in range(1, p)])
        want_P = WeylOp.d(sr, "x1", p) * WeylOp.const(sr, F(1, p ** p))
        oks.append(eq.verify() and eq.b == want_b and eq.operator == want_P)
    r2 = ring("x1,x2")
    t = time.perf_counter()
    eq = solve_functional_equation(P("x1^2+x2^2", r2), max_order=2, max_coeff_deg=0, max_bdeg=2)
    worst = max(worst, time.perf_counter() - t)
    s2 = with_s(r2)
    lap = (WeylOp.d(s2, "x1", 2) + WeylOp.d(s2, "x2", 2)) * WeylOp.const(s2, F(1, 4))
    oks.append(eq.verify() and eq.b == BFunction.from_roots([(-1, 2)]) and eq.operator == lap)
    ok = all(oks) and worst < 10
    record(5, ok, f"functional equations for x^p (p=1..4) and x1^2+x2^2; slowest {worst:.2f}s")
    assert ok


def test_criterion_06_yano_cross_check():
    f = P("x1^2+x2^3", ring("x1,x2"))
    closed = bs_quasihomogeneous(f)
    eq = solve_functional_equation(f, max_order=3, max_coeff_deg=2, max_bdeg=3)
    ok = closed == BFunction.from_roots([-1, F(-5, 6), F(-7, 6)]) and eq.verify() and eq.b == closed
    record(6, ok, f"quasi-homogeneous formula {closed} equals the solver output at bounds (3,2,3)")
    assert ok


def test_criterion_07_characteristic_variety():
    data = line_curve(P("x1^3+x2^3"))
    cot = R3.cotangent()
    lemma = Ideal(charvariety_generators(data, cot), MonomialOrder.grevlex(), cot)
    I1, I2 = charvariety_components(data, cot)
    meet = ideal_intersect(I1, I2)
    arr = arrangement_charvariety_ideal([data.line, data.g], 1)
    ok = ideals_equal(arr, meet) and ideals_equal(meet, lemma)
    record(7, ok, "arrangement ideal = I1 cap I2 = three-generator ideal (double inclusion)")
    assert ok


def test_criterion_08_sebastiani_thom():
    base = Ring.from_names("x1,x2,z")
    cot = base.cotangent()
    xi = cotangent_names(cot)
    ups = [P(f"x2^2*{xi[0]} - x1^2*{xi[1]}", cot)]
    ST = sebastiani_thom_generators(ups, P("x1^3+x2^3", ring("x1,x2")), P("z^2", ring("z")), cot)
    total = P("x1^3+x2^3+z^2", base)
    ok = ideals_equal(ST, conormal_ideal(total, cot)) and condition_W(total).is_holds
    record(8, ok, "Sebastiani-Thom generators cut out the conormal of x1^3+x2^3+z^2; W holds")
    assert ok


def test_criterion_09_decide_B_corpus():
    a = decide_B(parse_factors("x1*x2*(x1+x2)", ring("x1,x2")))
    b = decide_B(parse_factors("(x1-x2*x3)*(x1^3+x2^4)", R3))
    c = decide_B(P("x1^2+x2^4+x3^4"))
    d = decide_B(P("x2*x3+x4*x5", ring("x2,x3,x4,x5")))
    ok = (a.is_holds and "linear-arrangement" in a.rules()
          and b.is_holds and "line-with-plane-curve" in b.rules()
          and c.is_fails and c.witness == -2
          and d.roots == BFunction.from_roots([-1, -2]) and "quasi-homogeneous" in d.rules())
    record(9, ok, "decide_B corpus: arrangement, line with curve, root -2 witness, (s+1)(s+2)")
    assert ok


def test_criterion_10_decide_A_inv_corpus():
    a = decide_A_inv(P("x1^2+x2^3", ring("x1,x2")))
    b = decide_A_inv(parse_factors("(x1-x2*x3)*(x1^3+x2^4)", R3))
    c = decide_A_inv(parse_factors("(x1-x2*x3)*(x1^3+x2^3)", R3))
    ok = (a.is_holds and "isolated-singularity" in a.rules()
          and b.is_fails and "line-curve-family" in b.rules()
          and c.is_holds and "line-curve-family" in c.rules())
    record(10, ok, "decide_A_inv corpus: cusp holds, quartic family fails, cubic family holds")
    assert ok


def test_criterion_11_rescaling():
    ok = bs_monomial([2]).root_set() == rescale_roots({-1}, 2) == {F(-1), F(-1, 2)}
    record(11, ok, "roots of b(x^2) equal the rescaled set {-1} with p = 2")
    assert ok


def test_criterion_12_lattice_consistency():
    recorded = [
        {"L": "fails", "A(h)": "fails", "A(1/h)": "holds"},
        {"L": "holds", "A(h)": "fails", "A(1/h)": "fails"},
        {"M": "fails"},
    ]
    closures = [propagate_implications(ConditionLattice.from_dict(v)) for v in recorded]
    w = propagate_implications(ConditionLattice.from_dict({"W": "holds"})).as_dict()
    ok = all(w.get(c) == "holds" for c in ("G", "A(h)", "L", "M")) and len(closures) == 3
    record(12, ok, "closure of the three recorded counterexamples is consistent; W => G, A(h), L, M")
    assert ok


TRIALS = 100


def _random_poly(rng, r, max_deg=2, terms=3):
    n = len(r.base_names)
    out = {}
    for _ in range(rng.randint(1, terms)):
        m = [0] * n
        for _ in range(rng.randint(0, max_deg)):
            m[rng.randrange(n)] += 1
        out[tuple(m)] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
    return Poly(r, out)


def _random_op(rng, r):
    terms = {}
    for _ in range(rng.randint(1, 3)):
        b = tuple(rng.randint(0, 2) for _ in r.base_names)
        terms[b] = _random_poly(rng, r)
    return WeylOp(r, terms)


def test_criterion_13_engine_properties():
    rng = random.Random(20261019)
    r3, r2 = ring(), ring("x1,x2")
    member = syz = assoc = delta = 0
    for _ in range(TRIALS):
        gens = [_random_poly(rng, r3) for _ in range(rng.randint(1, 3))]
        coeffs = [_random_poly(rng, r3) for _ in gens]
        p = sum((c * g for c, g in zip(coeffs, gens)), r3.zero())
        m = ideal_member(p, Ideal(gens))
        member += m.member and m.verify(p, gens)

        fs = [_random_poly(rng, r2) for _ in range(rng.randint(2, 3))]
        syz += all(row.check(fs) for row in syzygies(fs))

        A, B, C = (_random_op(rng, r2) for _ in range(3))
        assoc += (A * B) * C == A * (B * C)

        r4 = ring("x1,x2,x3,x4")
        morph = [_random_poly(rng, r4, max_deg=3) for _ in range(rng.randint(1, 3))]
        K = rng.sample(range(1, 5), len(morph) + 1)
        D = build_delta_K(morph, K)
        delta += all(D.apply(h).is_zero() for h in morph)
    ok = member == syz == assoc == delta == TRIALS
    record(13, ok, f"{TRIALS} trials each: membership {member}, syzygies {syz}, "
                   f"associativity {assoc}, Delta_K {delta}")
    assert ok
