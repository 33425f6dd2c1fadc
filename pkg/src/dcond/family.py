"""The surfaces h = (x1 - x2*x3) * g(x1, x2) with g homogeneous.

Annihilators of (1/(x1 - x2*x3)) g^s, the order-one candidates for the
annihilator of 1/h, the equations of the characteristic variety, and the
operator relation tying the two systems together.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .conormal import cotangent_names
from .groebner import Ideal, MonomialOrder
from .logder import hfree_basis
from .symbolic import Poly, Ring
from .weyl import TwistedElem, WeylOp, annihilates, left_ideal_combination, with_s


@dataclass(frozen=True)
class LineCurve:
    """Data attached to a homogeneous g(x1, x2) of degree p inside C^3."""

    g: Poly
    line: Poly
    degree: int
    tilde1: Poly  # quotient of g_x1 by the line
    tilde2: Poly

    @property
    def ring(self) -> Ring:
        return self.g.ring

    def gens(self) -> Tuple[Poly, Poly, Poly]:
        return tuple(self.ring.gen(n) for n in self.ring.base_names[:3])

    def at_x3_1(self, p: Poly) -> Poly:
        """p(x3, 1): the dehomogenisation appearing in the remainders."""
        x1, x2, x3 = self.ring.base_names[:3]
        return p.subs({x1: self.ring.gen(x3), x2: self.ring.one()})

    @property
    def u(self) -> Poly:
        x3 = self.gens()[2]
        return x3 * self.tilde1 + self.tilde2


def line_curve(g: Poly, ring: Optional[Ring] = None) -> LineCurve:
    """Split g_xi = (x1 - x2*x3) * tilde_i + x2^(p-1) g_xi(x3, 1)."""
    ring = ring or Ring.from_names("x1,x2,x3")
    x1, x2, x3 = ring.base_names[:3]
    g = g.to_ring(ring)
    if g.degree(x3) or g.is_zero():
        raise ValueError("g must be a nonzero polynomial in the first two variables")
    p = g.total_degree()
    if any(sum(m) != p for m in g.terms):
        raise ValueError("g must be homogeneous")
    X1, X2, X3 = ring.gen(x1), ring.gen(x2), ring.gen(x3)
    line = X1 - X2 * X3
    tildes = []
    for v in (x1, x2):
        gi = g.diff(v)
        rem = gi.subs({x1: X2 * X3})
        q = (gi - rem).exact_div(line)
        if q is None:  # pragma: no cover - x1 -> x2*x3 is the remainder
            raise RuntimeError("division by the line failed")
        tildes.append(q)
    return LineCurve(g, line, p, tildes[0], tildes[1])


def charvariety_generators(data: LineCurve, cotangent: Optional[Ring] = None) -> List[Poly]:
    """The three equations of Ch(D (1/l) g^s) for homogeneous reduced g of degree >= 3."""
    cot = cotangent or data.ring.cotangent()
    x1, x2, x3 = [cot.gen(n) for n in data.ring.base_names[:3]]
    xi = [cot.gen(n) for n in cotangent_names(cot)][:3]
    p = data.degree
    g1, g2 = data.g.diff(data.ring.base_names[0]).to_ring(cot), data.g.diff(data.ring.base_names[1]).to_ring(cot)
    G = data.at_x3_1(data.g).to_ring(cot)
    G1 = data.at_x3_1(data.g.diff(data.ring.base_names[0])).to_ring(cot)
    G2 = data.at_x3_1(data.g.diff(data.ring.base_names[1])).to_ring(cot)
    line = data.line.to_ring(cot)
    return [
        line * xi[2],
        g2 * xi[0] - g1 * xi[1] + p * x2 ** (p - 2) * G * xi[2],
        (x2 * G2 * xi[0] - x2 * G1 * xi[1] + p * G * xi[2]) * xi[2],
    ]


def charvariety_components(data: LineCurve, cotangent: Optional[Ring] = None) -> Tuple[Ideal, Ideal]:
    """(I1, I2): the conormal of g and that of g restricted to the line."""
    cot = cotangent or data.ring.cotangent()
    x2 = cot.gen(data.ring.base_names[1])
    xi = [cot.gen(n) for n in cotangent_names(cot)][:3]
    g1, g2 = data.g.diff(data.ring.base_names[0]).to_ring(cot), data.g.diff(data.ring.base_names[1]).to_ring(cot)
    G = data.at_x3_1(data.g).to_ring(cot)
    G1 = data.at_x3_1(data.g.diff(data.ring.base_names[0])).to_ring(cot)
    G2 = data.at_x3_1(data.g.diff(data.ring.base_names[1])).to_ring(cot)
    I1 = Ideal([xi[2], g2 * xi[0] - g1 * xi[1]], MonomialOrder.grevlex(), cot)
    I2 = Ideal([data.line.to_ring(cot), x2 * G2 * xi[0] - x2 * G1 * xi[1] + data.degree * G * xi[2]],
               MonomialOrder.grevlex(), cot)
    return I1, I2


def _cubic(data: LineCurve) -> None:
    if data.degree != 3:
        raise ValueError("the explicit operators are stated for g of degree 3")


def line_curve_annihilators(data: LineCurve) -> Tuple[WeylOp, WeylOp, WeylOp]:
    """S1, S2, S3 generating Ann_D (1/(x1 - x2*x3)) g^s for a homogeneous cubic g."""
    _cubic(data)
    ring = data.ring
    x1, x2, x3 = ring.base_names[:3]
    X2 = ring.gen(x2)
    W = WeylOp.from_poly

    def d(v):
        return WeylOp.d(ring, v)

    g1, g2 = data.g.diff(x1), data.g.diff(x2)
    G, G1, G2 = data.at_x3_1(data.g), data.at_x3_1(g1), data.at_x3_1(g2)
    t1, t2, u = data.tilde1, data.tilde2, data.u
    S1 = W(data.line) * d(x3) - W(X2)
    S2 = W(g2) * d(x1) - W(g1) * d(x2) + W(3 * X2 * G) * d(x3) + W(u)
    S3 = ((W(X2 * G2) * d(x1) - W(X2 * G1) * d(x2) + W(3 * G) * d(x3)) * d(x3)
          + W(t2) * d(x1) - W(t1) * d(x2) + W(3 * G1) * d(x3) + W(u.diff(x1)))
    return S1, S2, S3


def line_curve_element(data: LineCurve) -> TwistedElem:
    """(1/(x1 - x2*x3)) g^s."""
    return TwistedElem.power(data.g, bases=[(data.line, 1)])


def inverse_annihilators(data: LineCurve) -> Tuple[WeylOp, WeylOp, WeylOp]:
    """delta1 + p + 1, delta2 + u, delta3 - x2: order-one operators killing 1/h.

    delta1 is the Euler field x1 d1 + x2 d2 (unit weights), delta2 and delta3
    are the fields of the explicit free basis of Der(-log h).
    """
    ring = data.ring
    x1, x2, x3 = ring.base_names[:3]
    _, d2, d3 = hfree_basis(data.g, ring)
    euler = WeylOp.vector_field(ring, [ring.gen(x1), ring.gen(x2), ring.zero()])
    D1 = euler + (data.degree + 1)
    D2 = d2.operator() + WeylOp.from_poly(d2.cofactor)
    D3 = d3.operator() - WeylOp.from_poly(ring.gen(x2))
    return D1, D2, D3


def inverse_element(data: LineCurve) -> TwistedElem:
    """1/h as a twisted element without s-power."""
    ring = with_s(data.ring)
    h = (data.line * data.g).to_ring(ring)
    return TwistedElem(ring.one(), ring.one(), 0, ((h, 1),))


def displayed_relation(data: LineCurve) -> Tuple[WeylOp, WeylOp]:
    """Both sides of the operator relation used to put S3 into D delta~1 + D delta~2 + D delta~3.

    Returns (lhs, rhs) exactly as written; see :func:`s3_certificate` for a
    combination that is verified to hold.
    """
    _cubic(data)
    ring = data.ring
    x1, x2, x3 = ring.base_names[:3]
    W = WeylOp.from_poly

    def d(v):
        return WeylOp.d(ring, v)

    X2, X3 = ring.gen(x2), ring.gen(x3)
    G = data.at_x3_1(data.g)
    G1, G2 = data.at_x3_1(data.g.diff(x1)), data.at_x3_1(data.g.diff(x2))
    D1, D2, D3 = inverse_annihilators(data)
    _, _, S3 = line_curve_annihilators(data)
    A = W(G2 * X2) * d(x1) - W(G1 * X2) * d(x2) + W(3 * G) * d(x3) + W(3 * G1)
    B = d(x2) + W(X3) * d(x1)
    T = W(data.tilde2) * d(x1) - W(data.tilde1) * d(x2)
    lhs = A * (d(x3) * D1 - d(x1) * D3) + B * (d(x3) * D2 + T * D3)
    rhs = -2 * S3 + d(x1) * D2 - (T + W(data.u.diff(x1))) * D1
    return lhs, rhs


@dataclass
class LeftCombination:
    """target = sum coefficients[i] * generators[i] in the Weyl algebra."""

    target: WeylOp
    generators: Tuple[WeylOp, ...]
    coefficients: Tuple[WeylOp, ...]

    def verify(self) -> bool:
        total = WeylOp(self.target.ring, {})
        for c, G in zip(self.coefficients, self.generators):
            total = total + c * G
        return total == self.target

    def to_json(self) -> dict:
        return {
            "target": str(self.target),
            "generators": [str(G) for G in self.generators],
            "coefficients": [str(c) for c in self.coefficients],
        }


def s3_certificate(data: LineCurve, max_order: int = 2, max_coeff_deg: int = 3) -> Optional[LeftCombination]:
    """Express S3 as a left combination of the delta~'s (bounded search)."""
    _, _, S3 = line_curve_annihilators(data)
    gens = inverse_annihilators(data)
    coeffs = left_ideal_combination(S3, gens, max_order, max_coeff_deg)
    if coeffs is None:
        return None
    cert = LeftCombination(S3, tuple(gens), tuple(coeffs))
    if not cert.verify():  # pragma: no cover - exact linear algebra
        raise RuntimeError("left combination failed re-verification")
    return cert


def annihilates_all(ops, element: TwistedElem) -> List[bool]:
    return [annihilates(P, element) for P in ops]
