from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings

from dcond.symbolic import ParseError, WeightSystem, det, detect_weights, jacobian, minor_det, parse_factors, parse_poly

from conftest import P, ring
from strategies import polys

R = ring()
SX = sympy.symbols("x1 x2 x3")


def to_sympy(p):
    return sympy.expand(sympy.sympify(str(p).replace("^", "**")))


def test_parse_two_terms():
    assert len(P("x1^2+x2^3").terms) == 2


def test_parse_product_expands():
    p = P("(x1-x2*x3)*(x1*x2^2+x1^2*x2)")
    assert to_sympy(p) == sympy.expand((SX[0] - SX[1] * SX[2]) * (SX[0] * SX[1] ** 2 + SX[0] ** 2 * SX[1]))


def test_parse_cancellation():
    assert P("x1 - x1").is_zero()


def test_parse_rationals_and_powers():
    assert P("1/2*x1^2 - x1**2/2").is_zero()
    assert P("(x1+1)^2") == P("x1^2 + 2*x1 + 1")


@pytest.mark.parametrize("text", ["x1^", "x1 + (x2", "x1 ^ -1", "x1 $ x2"])
def test_parse_errors_carry_position(text):
    with pytest.raises(ParseError) as err:
        parse_poly(text, R)
    assert "position" in str(err.value)


def test_unknown_variable():
    with pytest.raises(ParseError):
        parse_poly("y", R)


def test_parse_factors_splits_top_level_product():
    fs = parse_factors("(x1-x2*x3)*(x1^3+x2^4)", R)
    assert fs == [P("x1-x2*x3"), P("x1^3+x2^4")]


def test_jacobian_examples():
    assert jacobian([P("x1^2"), P("x2^3")], ["x1", "x2"]) == [[P("2*x1"), R.zero()], [R.zero(), P("3*x2^2")]]
    assert jacobian([P("x1-x2*x3")]) == [[R.one(), P("-x3"), P("-x2")]]
    assert all(e.is_zero() for row in jacobian([R.const(3)]) for e in row)


def test_minor_det_examples():
    J = jacobian([P("x1^2+x2^3+x3^4"), P("x1^2+2*x2^3+3*x3^4")])
    assert minor_det(J, [0, 1], [0, 1]) == P("6*x1*x2^2")
    assert det([[R.one(), R.zero()], [R.zero(), R.one()]]) == R.one()
    row = [P("x1"), P("x2")]
    assert det([row, row]).is_zero()


def test_detect_weights_examples():
    w = detect_weights(P("x1^2+x2^3+x3^4"))
    assert w.as_dict() == {"x1": "1/2", "x2": "1/3", "x3": "1/4"}
    w = detect_weights(P("x1*x2^2+x1^2*x2", ring("x1,x2")))
    assert w.alpha == (Fraction(1, 3), Fraction(1, 3))
    assert detect_weights(P("x1^3+x2^4+x1*x2^3", ring("x1,x2"))) is None


def test_weight_system_rejects_nonpositive():
    with pytest.raises(ValueError):
        WeightSystem(("x1",), (Fraction(0),))


@settings(max_examples=60, deadline=None)
@given(polys(R, max_deg=3), polys(R, max_deg=3))
def test_arithmetic_matches_sympy(a, b):
    assert to_sympy(a * b) == sympy.expand(to_sympy(a) * to_sympy(b))
    assert to_sympy(a - b) == sympy.expand(to_sympy(a) - to_sympy(b))
    assert to_sympy(a.diff("x2")) == sympy.diff(to_sympy(a), SX[1])


@settings(max_examples=60, deadline=None)
@given(polys(R, max_deg=3))
def test_print_parse_round_trip(a):
    assert parse_poly(str(a), R) == a


@settings(max_examples=40, deadline=None)
@given(polys(R), polys(R))
def test_exact_division_recovers_factor(a, b):
    if b.is_zero():
        return
    assert (a * b).exact_div(b) == a
