"""Logarithmic derivations, Saito's criterion, Koszul freeness, conditions L and H."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .groebner import (
    Ideal,
    MonomialOrder,
    ResourceLimitError,
    ideal_member,
    is_regular_sequence,
    krull_dim,
    syzygies,
)
from .symbolic import Poly, Ring, det, detect_weights
from .verdict import Status, Step, Verdict
from .weyl import WeylOp


@dataclass(frozen=True)
class LogDeriv:
    """Vector field sum a_i d_i with sum a_i h_{x_i} = cofactor * h."""

    coefficients: Tuple[Poly, ...]
    cofactor: Poly

    def apply(self, p: Poly) -> Poly:
        ring = self.coefficients[0].ring
        out = ring.zero()
        for a, name in zip(self.coefficients, ring.base_names):
            out = out + a * p.diff(name)
        return out

    def check(self, h: Poly) -> bool:
        return self.apply(h) == self.cofactor * h

    def operator(self, ring: Optional[Ring] = None) -> WeylOp:
        ring = ring or self.coefficients[0].ring
        return WeylOp.vector_field(ring, [a.to_ring(ring) for a in self.coefficients])

    def symbol(self, cotangent: Optional[Ring] = None) -> Poly:
        return self.operator().symbol(cotangent, order=1)

    def __str__(self) -> str:
        return str(self.operator())


def log_derivation(h: Poly, coefficients: Sequence[Poly]) -> Optional[LogDeriv]:
    """The LogDeriv with these coefficients, or None if it does not preserve (h)."""
    ring = h.ring
    v = sum((a * h.diff(n) for a, n in zip(coefficients, ring.base_names)), ring.zero())
    c = v.exact_div(h)
    if c is None:
        return None
    return LogDeriv(tuple(coefficients), c)


def derlog_generators(h: Poly) -> List[LogDeriv]:
    """Generators of Der(-log h) from the syzygies of (h_x1, ..., h_xn, -h)."""
    if h.is_zero():
        raise ValueError("h must be nonzero")
    ring = h.ring
    n = len(ring.base_names)
    rows = syzygies([h.diff(v) for v in ring.base_names] + [-h])
    out = []
    for row in rows:
        a = row.coefficients[:n]
        if all(x.is_zero() for x in a):
            continue
        out.append(LogDeriv(tuple(a), row.coefficients[n]))
    return out


@dataclass
class FreenessCertificate:
    fields: Tuple[LogDeriv, ...]
    determinant: Poly
    unit: Poly

    def verify(self, h: Poly) -> bool:
        return (all(d.check(h) for d in self.fields)
                and det([list(d.coefficients) for d in self.fields]) == self.determinant
                and self.determinant == self.unit * h
                and self.unit.constant_term() != 0)

    def to_json(self) -> dict:
        return {
            "fields": [str(d) for d in self.fields],
            "determinant": str(self.determinant),
            "unit": str(self.unit),
        }


def saito_free_test(h: Poly, candidates: Sequence[LogDeriv]) -> Verdict:
    """Saito's criterion: det of the coefficient matrix equals unit * h."""
    n = len(h.ring.base_names)
    if len(candidates) != n:
        raise ValueError(f"need exactly {n} candidate fields")
    for d in candidates:
        if not d.check(h):
            return Verdict.fails("saito", f"{d} does not preserve (h)")
    D = det([list(d.coefficients) for d in candidates])
    u = D.exact_div(h) if D else None
    if u is None or u.constant_term() == 0:
        return Verdict.fails("saito", "determinant is not a unit multiple of h",
                             certificate={"determinant": str(D)})
    cert = FreenessCertificate(tuple(candidates), D, u)
    return Verdict.holds("saito", "determinant of the candidate basis is a unit times h",
                         certificate=cert.to_json(), witness=cert)


def find_free_basis(h: Poly, generators: Optional[Sequence[LogDeriv]] = None,
                    max_subsets: int = 2000) -> Verdict:
    """Search n-subsets of Der(-log h) generators (index order) for a Saito basis."""
    gens = list(generators) if generators is not None else derlog_generators(h)
    n = len(h.ring.base_names)
    for k, subset in enumerate(combinations(gens, n)):
        if k >= max_subsets:
            return Verdict.unknown("subset budget exhausted before a basis was found")
        v = saito_free_test(h, subset)
        if v.is_holds:
            return v
    return Verdict.unknown("no n-subset of the generators satisfies Saito's criterion")


def hfree_basis(g: Poly, ring: Optional[Ring] = None) -> Tuple[LogDeriv, LogDeriv, LogDeriv]:
    """Explicit basis of Der(-log h) for h = (x1 - x2*x3)*g(x1, x2), g weighted homogeneous.

    Weights are normalised so that g has weighted degree 1; then the Euler-type
    field satisfies delta1(h) = (1 + alpha1) h and delta2(h) = u h.
    """
    ring = ring or Ring.from_names("x1,x2,x3")
    x1, x2, x3 = ring.base_names[:3]
    g = g.to_ring(ring)
    if g.degree(x3):
        raise ValueError("g must not involve the third variable")
    w = detect_weights(g, [x1, x2])
    if w is None:
        raise ValueError("g is not weighted homogeneous with positive weights")
    a1, a2 = w.weight_of(x1) / w.degree, w.weight_of(x2) / w.degree
    X1, X2, X3 = ring.gen(x1), ring.gen(x2), ring.gen(x3)
    g1, g2 = g.diff(x1), g.diff(x2)

    def split(p: Poly) -> Tuple[Poly, Poly]:
        # p = A*x1 + x2*B(x2); A takes every term containing x1
        i1 = ring.index(x1)
        A, B = {}, {}
        for m, c in p.terms.items():
            if m[i1]:
                mm = list(m)
                mm[i1] -= 1
                A[tuple(mm)] = c
            else:
                if sum(m) == 0:
                    raise ValueError("partial derivatives of g must vanish at 0")
                i2 = ring.index(x2)
                mm = list(m)
                mm[i2] -= 1
                B[tuple(mm)] = c
        return Poly(ring, A), Poly(ring, B)

    A, B = split(g2)
    C, D = split(g1)
    u = A + X3 * C
    v = -(B + X3 * D)
    l = X1 - X2 * X3
    h = l * g
    zero = ring.zero()
    d1 = log_derivation(h, [a1 * X1, a2 * X2, (a1 - a2) * X3])
    d2 = log_derivation(h, [g2, -g1, X3 * u - v])
    d3 = log_derivation(h, [zero, zero, l])
    if d1 is None or d2 is None or d3 is None:  # pragma: no cover - identities above
        raise RuntimeError("explicit fields failed to be logarithmic")
    return d1, d2, d3


def hfree_uv(g: Poly, ring: Optional[Ring] = None) -> Tuple[Poly, Poly]:
    """(u, v) with x3*g_x1 + g_x2 = u*x1 - v*x2, deg_x3 <= 1, v free of x1."""
    d1, d2, d3 = hfree_basis(g, ring)
    ring = d2.coefficients[0].ring
    return d2.cofactor, d2.cofactor * ring.gen(ring.base_names[2]) - d2.coefficients[2]


def symbol_ideal_ring(ring: Ring) -> Ring:
    return ring.cotangent()


def koszul_free_test(h: Poly, basis: Sequence[LogDeriv]) -> Verdict:
    """Regularity of the principal symbols of a Saito basis (local dimension test)."""
    cert = saito_free_test(h, basis)
    if not cert.is_holds:
        return Verdict.unknown("the given fields are not a Saito basis", cert.trace)
    cot = symbol_ideal_ring(h.ring)
    symbols = [d.symbol(cot) for d in basis]
    try:
        regular = is_regular_sequence(symbols, MonomialOrder.local())
    except ResourceLimitError as exc:
        return Verdict.unknown(str(exc), cert.trace)
    steps = cert.trace + [Step("symbol-regularity", "dimension drops by one along the principal symbols")]
    cert_json = {"symbols": [str(s) for s in symbols]}
    return Verdict(Status.HOLDS if regular else Status.FAILS, steps, certificate=cert_json)


def condition_L(h: Poly, generators: Optional[Sequence[LogDeriv]] = None) -> Verdict:
    """Dimension of the logarithmic characteristic variety at the origin equals n."""
    ring = h.ring
    n = len(ring.base_names)
    try:
        gens = list(generators) if generators is not None else derlog_generators(h)
        cot = symbol_ideal_ring(ring)
        symbols = [d.symbol(cot) for d in gens]
        dim = krull_dim(Ideal(symbols, MonomialOrder.local(), cot))
    except ResourceLimitError as exc:
        return Verdict.unknown(str(exc))
    cert = {"dimension": dim, "symbols": [str(s) for s in symbols]}
    if dim == n:
        return Verdict.holds(
            "log-characteristic-dimension",
            f"ideal of logarithmic symbols has dimension {n} at the origin; purity unchecked",
            certificate=cert,
        )
    if dim > n:
        return Verdict.fails(
            "log-characteristic-dimension",
            f"ideal of logarithmic symbols has dimension {dim} > {n}",
            certificate=cert,
        )
    return Verdict.unknown(f"unexpected dimension {dim} < {n}", certificate=cert)  # pragma: no cover


def condition_H(h: Poly) -> Verdict:
    """h in its Jacobian ideal, decided in the local ring at 0."""
    ring = h.ring
    if h.is_zero() or h.constant_term() != 0:
        raise ValueError("h must be nonzero and vanish at the origin")
    jac = [h.diff(v) for v in ring.base_names]
    try:
        m = ideal_member(h, Ideal(jac, MonomialOrder.local(), ring))
    except ResourceLimitError as exc:
        return Verdict.unknown(str(exc))
    if m.member:
        return Verdict.holds(
            "jacobian-membership",
            "unit * h is a combination of the partial derivatives",
            certificate={"unit": str(m.unit), "cofactors": [str(c) for c in m.cofactors]},
            witness=m,
        )
    return Verdict.fails("jacobian-membership", "local normal form of h modulo the Jacobian ideal is nonzero")
