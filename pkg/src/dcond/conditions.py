"""Generic arrangements, decisions for A(1/h), and the implication lattice.

Condition names used throughout: H, B, A(h), A(1/h), W, G, L, M, A_log.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .bernstein import NotIsolated, _line_shape, decide_B, milnor_data, normalize_factors
from .conormal import condition_W
from .family import inverse_annihilators, inverse_element, line_curve, line_curve_annihilators, \
    line_curve_element, s3_certificate
from .groebner import Ideal, MonomialOrder, ResourceLimitError, ideal_intersect, krull_dim, \
    quotient_monomial_basis
from .logder import condition_H, condition_L, find_free_basis, hfree_basis, koszul_free_test, saito_free_test
from .symbolic import Poly, Ring, WeightSystem, detect_weights, jacobian, minor_det
from .verdict import Status, Step, Verdict
from .weyl import annihilates


# ---------------------------------------------------------------------------
# generic arrangements

@dataclass
class ArrangementSpec:
    factors: Tuple[Poly, ...]
    certificates: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        self.factors = tuple(self.factors)

    @property
    def ring(self) -> Ring:
        return self.factors[0].ring

    def product(self) -> Poly:
        out = self.ring.one()
        for f in self.factors:
            out = out * f
        return out


def coprime(f: Poly, g: Poly) -> bool:
    """No common factor over Q: the lcm (f) cap (g) is generated by f*g."""
    inter = ideal_intersect(Ideal([f]), Ideal([g]))
    return min(q.total_degree() for q in inter.basis) == f.total_degree() + g.total_degree()


def verify_generic_arrangement(spec: ArrangementSpec) -> Verdict:
    """Certify the generic arrangement hypothesis: isolated singularities and ICIS subfamilies."""
    fs = spec.factors
    p = len(fs)
    ring = spec.ring
    n = len(ring.base_names)
    if p < 2:
        return Verdict.fails("generic-arrangement", "need at least two factors")
    if any(f.is_constant() or f.constant_term() != 0 for f in fs):
        return Verdict.fails("generic-arrangement", "every factor must vanish at the origin")
    cert: Dict[str, object] = {"milnor": {}, "subsets": {}}
    try:
        for i, j in combinations(range(p), 2):
            if not coprime(fs[i], fs[j]):
                return Verdict.fails("generic-arrangement", f"factors {i + 1} and {j + 1} share a component",
                                     witness=(i, j))
        for i, f in enumerate(fs):
            try:
                cert["milnor"][str(i + 1)] = milnor_data(f).milnor_number
            except NotIsolated:
                return Verdict.fails("generic-arrangement",
                                     f"factor {i + 1} does not have an isolated singularity", witness=(i,))
        J = jacobian(list(fs))
        for k in range(2, min(p, n) + 1):
            for sub in combinations(range(p), k):
                minors = [minor_det(J, list(sub), list(cols)) for cols in combinations(range(n), k)]
                gens = [fs[i] for i in sub] + [m for m in minors if m]
                d = krull_dim(Ideal(gens, MonomialOrder.local(), ring))
                cert["subsets"][",".join(str(i + 1) for i in sub)] = d
                if d > 0:
                    return Verdict.fails("generic-arrangement",
                                         f"factors {[i + 1 for i in sub]} do not define an isolated complete intersection",
                                         certificate=cert, witness=sub)
    except ResourceLimitError as exc:
        return Verdict.unknown(str(exc))
    spec.certificates.update(cert)
    return Verdict.holds("generic-arrangement",
                         "isolated singularities and isolated complete intersections for every subfamily",
                         certificate=cert)


# ---------------------------------------------------------------------------
# two weighted homogeneous factors

def _pair_weights(h1: Poly, h2: Poly) -> Optional[WeightSystem]:
    w = detect_weights(h1 * h2)
    if w is None or not (w.is_homogeneous(h1) and w.is_homogeneous(h2)):
        return None
    return w


def corpdeux_decision(h1: Poly, h2: Poly, w: Optional[WeightSystem] = None) -> Verdict:
    """A(1/h1h2) for a generic weighted homogeneous pair, by weights in O/(h_j + K).

    K is generated by the maximal minors of the Jacobian of (h1, h2).  Holds
    iff for j = 1 or 2 no standard monomial of O/(h_j + K) has weight
    d_j*k - sum(alpha) with k >= 2.
    """
    if w is None:
        w = _pair_weights(h1, h2)
        if w is None:
            return Verdict.unknown("h1 and h2 are not weighted homogeneous for a common weight system")
    ring = h1.ring
    names = ring.base_names
    n = len(names)
    J = jacobian([h1, h2])
    K = [m for m in (minor_det(J, [0, 1], list(c)) for c in combinations(range(n), 2)) if m]
    order = MonomialOrder.local({v: w.weight_of(v) for v in names})
    blocked = []
    cert: Dict[str, object] = {"weights": w.as_dict(), "quotients": {}}
    try:
        for j, hj in ((1, h1), (2, h2)):
            dj = w.degree_of(hj)
            qb = quotient_monomial_basis(Ideal([hj] + K, order, ring))
            if not qb.finite:
                return Verdict.unknown(f"O/(h{j} + K) is not finite: the pair is not an isolated complete intersection")
            ws = [(m, w.monomial_weight(ring, next(iter(m.terms)))) for m in qb.monomials]
            cert["quotients"][str(j)] = [[str(m), str(x)] for m, x in ws]
            bad = None
            for m, x in ws:
                k = (x + w.total) / dj
                if k.denominator == 1 and k >= 2:
                    bad = (m, x, int(k))
                    break
            if bad is None:
                return Verdict.holds("weighted-pair-criterion",
                                     f"no weight d{j}*k - sum(alpha), k >= 2, in O/(h{j} + K)", certificate=cert)
            blocked.append((j, bad))
    except ResourceLimitError as exc:
        return Verdict.unknown(str(exc))
    cert["witnesses"] = [{"j": j, "monomial": str(m), "weight": str(x), "k": k} for j, (m, x, k) in blocked]
    return Verdict.fails("weighted-pair-criterion",
                         "both quotients contain a standard monomial of forbidden weight",
                         certificate=cert, witness=[(j, m) for j, (m, _, _) in blocked])


# ---------------------------------------------------------------------------
# A(1/h)

def _as_factors(h) -> List[Poly]:
    if isinstance(h, ArrangementSpec):
        return list(h.factors)
    if isinstance(h, Poly):
        return [h]
    return list(h)


def _line_curve_shape(fs, ring) -> Optional[Tuple[Poly, Poly, Ring]]:
    """(line, g, reordered ring) when h = c*(x_a - x_b*x_c) * g(x_a, x_b)."""
    if len(ring.base_names) != 3 or len(fs) < 2 or any(e > 1 for _, e in fs):
        return None
    for k, (l, _) in enumerate(fs):
        shape = _line_shape(l, ring)
        if shape is None:
            continue
        rest = fs[:k] + fs[k + 1:]
        for a, b in shape:
            if all(set(f.support()) <= {a, b} for f, _ in rest):
                c = next(v for v in ring.base_names if v not in (a, b))
                g = ring.one()
                for f, _ in rest:
                    g = g * f
                return l, g, Ring.from_names([a, b, c])
    return None


def _route_family(l: Poly, g: Poly, ring: Ring) -> Verdict:
    a, b, _ = ring.names
    if g.min_degree() < 3:
        return Verdict.unknown("the curve factor has multiplicity < 3")
    gg = g.to_ring(ring.sub([a, b]))
    try:
        milnor_data(gg)
    except NotIsolated:
        return Verdict.unknown("the curve factor is not reduced")
    w = detect_weights(gg)
    if w is None:
        return Verdict.unknown("the curve factor is not weighted homogeneous in these coordinates")
    if w.weight_of(a) != w.weight_of(b):
        basis = hfree_basis(g, ring)
        return Verdict.fails("line-curve-family",
                             "weighted homogeneous curve factor that is not homogeneous: A(1/h) fails",
                             certificate={"weights": w.as_dict(),
                                          "derlog_basis": [str(d) for d in basis]})
    if g.total_degree() != 3:
        return Verdict.unknown("homogeneous curve factor of degree > 3 is not covered")
    data = line_curve(g, ring)
    S = line_curve_annihilators(data)
    D = inverse_annihilators(data)
    e, einv = line_curve_element(data), inverse_element(data)
    if not (all(annihilates(P, e) for P in S) and all(annihilates(P, einv) for P in D)):
        return Verdict.unknown("explicit annihilators failed verification")  # pragma: no cover
    cert = s3_certificate(data)
    if cert is None:
        return Verdict.unknown("no bounded combination expressing the order-two generator")
    return Verdict.holds("line-curve-family",
                         "homogeneous cubic: the order-two annihilator is a combination of order-one operators",
                         certificate={"annihilators_pair": [str(P) for P in S],
                                      "order_one": [str(P) for P in D],
                                      "combination": cert.to_json()})


def _route_isolated(h: Poly) -> Verdict:
    vH = condition_H(h)
    if vH.is_fails:
        return Verdict(Status.FAILS, [Step("isolated-singularity",
                                           "isolated singularity: A(1/h) needs h quasi-homogeneous")] + vH.trace,
                       reason=None, certificate={"H": "fails"})
    if not vH.is_holds:
        return Verdict.unknown(f"H undecided: {vH.reason}", vH.trace)
    if detect_weights(h) is None:
        return Verdict.unknown("quasi-homogeneous only after a change of coordinates; B not decided", vH.trace)
    vB = decide_B(h)
    steps = [Step("isolated-singularity", "isolated singularity: A(1/h) iff quasi-homogeneous and B(h)")]
    return Verdict(vB.status, steps + vH.trace + vB.trace, vB.reason,
                   certificate=vB.to_json().get("certificate"), witness=vB.witness)


def _route_arrangement(spec: ArrangementSpec, pair_route: str) -> Verdict:
    g = verify_generic_arrangement(spec)
    if not g.is_holds:
        return Verdict.unknown("not a certified generic arrangement: " + (g.reason or g.trace[-1].note), g.trace)
    h = spec.product()
    steps = [Step("generic-arrangement-criterion",
                  "generic arrangement: A(1/h) iff weighted homogeneous and B(h)")] + g.trace
    if detect_weights(h) is None:
        vH = condition_H(h)
        if vH.is_fails:
            return Verdict(Status.FAILS, steps + vH.trace)
        return Verdict.unknown("weighted homogeneity not detected in these coordinates", steps)
    if len(spec.factors) == 2 and pair_route == "pair":
        v = corpdeux_decision(*spec.factors)
    else:
        v = decide_B(list(spec.factors)).verdict
    return Verdict(v.status, steps + v.trace, v.reason, v.certificate, v.witness)


def decide_A_inv(h: Union[Poly, Sequence[Poly], ArrangementSpec], pair_route: str = "pair") -> Verdict:
    """Is the annihilator of 1/h generated by operators of order one?

    Routes: the line-plus-curve family, certified generic arrangements
    (``pair_route`` is "pair" for the two-factor weight criterion or "B"),
    and single isolated singularities.  Anything else is Unknown.
    """
    fs, unit_steps = normalize_factors(_as_factors(h))
    ring = fs[0][0].ring
    try:
        shape = _line_curve_shape(fs, ring)
        if shape is not None:
            l, g, r3 = shape
            v = _route_family(l.to_ring(r3), g.to_ring(r3), r3)
        elif len(fs) >= 2:
            if any(e > 1 for _, e in fs):
                v = Verdict.unknown("non-reduced h is outside the arrangement criterion")
            else:
                v = _route_arrangement(ArrangementSpec(tuple(f for f, _ in fs)), pair_route)
        else:
            f, e = fs[0]
            if e > 1:
                v = Verdict.unknown("non-reduced h")
            elif f.min_degree() == 1:
                v = Verdict.holds("smooth", "smooth hypersurface: 1/h is killed by order-one operators")
            else:
                try:
                    milnor_data(f)
                except NotIsolated:
                    return Verdict.unknown("single factor without isolated singularity", unit_steps)
                v = _route_isolated(f)
    except ResourceLimitError as exc:
        return Verdict.unknown(str(exc), unit_steps)
    return v.with_steps(unit_steps) if unit_steps else v


# ---------------------------------------------------------------------------
# implication lattice

CONDITIONS = ("H", "B", "A(h)", "A(1/h)", "W", "G", "L", "M", "A_log")

IMPLICATIONS: Tuple[Tuple[Tuple[str, ...], str], ...] = (
    (("W",), "G"),
    (("G",), "A(h)"),
    (("G",), "L"),
    (("A(h)",), "M"),
    (("L",), "M"),
    (("A(1/h)",), "M"),
    (("A(1/h)",), "B"),
    (("A(1/h)",), "A_log"),
    (("A_log",), "B"),
    (("H", "B", "A(h)"), "A(1/h)"),
)


class LatticeContradiction(ValueError):
    def __init__(self, condition: str, edge: str):
        super().__init__(f"{condition} would be both holds and fails (edge {edge})")
        self.condition = condition
        self.edge = edge


@dataclass
class ConditionLattice:
    verdicts: Dict[str, Status] = field(default_factory=dict)
    provenance: Dict[str, str] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, values: Dict[str, Union[str, Status]], source: str = "input") -> "ConditionLattice":
        lat = cls()
        for k, v in values.items():
            lat.set(k, Status(v), source)
        return lat

    def set(self, name: str, status: Status, source: str) -> bool:
        """Record a decided verdict; True when it is new."""
        if name not in CONDITIONS:
            raise KeyError(f"unknown condition {name!r}")
        if status is Status.UNKNOWN:
            return False
        old = self.verdicts.get(name)
        if old is status:
            return False
        if old is not None:
            raise LatticeContradiction(name, source)
        self.verdicts[name] = status
        self.provenance[name] = source
        return True

    def get(self, name: str) -> Status:
        return self.verdicts.get(name, Status.UNKNOWN)

    def as_dict(self) -> Dict[str, str]:
        return {k: self.verdicts[k].value for k in CONDITIONS if k in self.verdicts}

    def copy(self) -> "ConditionLattice":
        return ConditionLattice(dict(self.verdicts), dict(self.provenance))


def propagate_implications(lattice: ConditionLattice) -> ConditionLattice:
    """Close under the implications and their contrapositives (fixed point)."""
    out = lattice.copy()
    H, F = Status.HOLDS, Status.FAILS
    changed = True
    while changed:
        changed = False
        for premises, concl in IMPLICATIONS:
            edge = " & ".join(premises) + " => " + concl
            if all(out.get(p) is H for p in premises):
                changed |= out.set(concl, H, edge)
            if out.get(concl) is F:
                unknown = [p for p in premises if out.get(p) is not H]
                if len(unknown) == 1:
                    changed |= out.set(unknown[0], F, "contrapositive of " + edge)
    return out


# ---------------------------------------------------------------------------
# running named conditions

CHECKS = ("H", "B", "L", "W", "KOSZUL", "A_INV")
LATTICE_NAME = {"H": "H", "B": "B", "L": "L", "W": "W", "A_INV": "A(1/h)"}


def _koszul(fs, ring) -> Verdict:
    h = ring.one()
    for f, e in fs:
        h = h * f ** e
    shape = _line_curve_shape(fs, ring)
    basis = None
    if shape is not None:
        l, g, r3 = shape
        try:
            basis = [type(d)(tuple(c.to_ring(ring) for c in d.coefficients), d.cofactor.to_ring(ring))
                     for d in hfree_basis(g.to_ring(r3), r3)]
        except ValueError:
            basis = None
    if basis is not None and saito_free_test(h, basis).is_holds:
        return koszul_free_test(h, basis)
    found = find_free_basis(h)
    if not found.is_holds:
        return Verdict.unknown("no free basis found: " + (found.reason or ""))
    return koszul_free_test(h, list(found.witness.fields))


def run_condition(name: str, factors: Sequence[Poly]) -> Verdict:
    """One named check on h given by its factors."""
    fs, _ = normalize_factors(factors)
    ring = fs[0][0].ring
    h = ring.one()
    for f, e in fs:
        h = h * f ** e
    try:
        if name == "H":
            return condition_H(h)
        if name == "B":
            return decide_B(list(factors)).verdict
        if name == "L":
            return condition_L(h)
        if name == "W":
            return condition_W(h)
        if name == "KOSZUL":
            return _koszul(fs, ring)
        if name == "A_INV":
            return decide_A_inv(list(factors))
    except ResourceLimitError as exc:
        return Verdict.unknown(str(exc))
    raise KeyError(f"unknown condition {name!r}; expected one of {', '.join(CHECKS)}")


def check_conditions(factors: Sequence[Poly], names: Iterable[str] = CHECKS) -> Dict[str, Verdict]:
    return {n: run_condition(n, factors) for n in names}


def lattice_from_verdicts(verdicts: Dict[str, Verdict]) -> ConditionLattice:
    lat = ConditionLattice()
    for name, v in verdicts.items():
        if name in LATTICE_NAME:
            lat.set(LATTICE_NAME[name], v.status, "computed: " + ",".join(v.rules()))
    return lat


__all__ = [
    "ArrangementSpec", "CHECKS", "CONDITIONS", "ConditionLattice", "IMPLICATIONS",
    "LatticeContradiction", "check_conditions", "coprime", "corpdeux_decision", "decide_A_inv",
    "lattice_from_verdicts", "propagate_implications", "run_condition", "verify_generic_arrangement",
]
