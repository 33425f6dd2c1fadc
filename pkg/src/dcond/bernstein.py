"""Bernstein-Sato data at desk scale and the rule engine for condition B(h).

B(h) asks that -1 be the smallest integral root of b(h^s, s).  Nothing here
computes a general b-function: verdicts come from closed formulas (monomials,
quasi-homogeneous isolated singularities), restriction to smooth components,
and structural rules on the factors of h.  Factors are taken as given.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .groebner import Ideal, MonomialOrder, ResourceLimitError, krull_dim, quotient_monomial_basis
from .symbolic import Poly, Ring, WeightSystem, detect_weights
from .verdict import Status, Step, Verdict
from .weyl import BFunction, FunctionalEquation, WeylOp, with_s


class NotIsolated(Exception):
    """The Jacobian ideal has positive dimension at the origin."""


class NotApplicable(Exception):
    """A closed formula's hypotheses are not met."""


class Unsupported(ValueError):
    """Input outside what an operation handles (e.g. no graph form)."""


# ---------------------------------------------------------------------------
# Milnor data

@dataclass
class MilnorData:
    basis: List[Poly]
    weights: Optional[List[Fraction]]
    milnor_number: int


def _support_ring(f: Poly) -> Tuple[Poly, Ring]:
    names = f.support() or f.ring.base_names[:1]
    ring = f.ring.sub(names)
    return f.to_ring(ring), ring


def milnor_data(f: Poly, w: Optional[WeightSystem] = None) -> MilnorData:
    """Monomial basis of O/J_f at the origin, with weighted degrees under ``w``."""
    if f.constant_term() != 0:
        raise ValueError("f must vanish at the origin")
    ring = f.ring
    jac = [f.diff(v) for v in ring.base_names]
    qb = quotient_monomial_basis(Ideal(jac, MonomialOrder.local(), ring))
    if not qb.finite:
        raise NotIsolated(f"{f} does not have an isolated singularity at the origin")
    weights = None
    if w is not None:
        weights = [w.monomial_weight(ring, next(iter(m.terms))) for m in qb.monomials]
    return MilnorData(list(qb.monomials), weights, len(qb.monomials))


# ---------------------------------------------------------------------------
# closed formulas

def bs_monomial(gamma: Sequence[int]) -> BFunction:
    """b-function of x^gamma: prod_i prod_{k=1..gamma_i} (s + k/gamma_i)."""
    if not any(gamma) or any(g < 0 for g in gamma):
        raise ValueError("gamma must be a nonzero exponent vector")
    roots = [Fraction(-k, g) for g in gamma if g for k in range(1, g + 1)]
    return BFunction.from_roots(roots)


def monomial_equation(gamma: Sequence[int], ring: Optional[Ring] = None) -> FunctionalEquation:
    """b(s) x^(gamma s) = prod gamma_i^-gamma_i d_i^gamma_i x^(gamma (s+1))."""
    ring = ring or Ring.from_names([f"x{i + 1}" for i in range(len(gamma))])
    base = ring.base_names
    if len(base) != len(gamma):
        raise ValueError("one exponent per base variable")
    f = ring.monomial([gamma[base.index(n)] if n in base else 0 for n in ring.names])
    sring = with_s(ring)
    P = WeylOp.const(sring, 1)
    for name, g in zip(base, gamma):
        if g:
            P = P * (Fraction(1, g ** g) * WeylOp.d(sring, name, g))
    return FunctionalEquation(bs_monomial(gamma), P, f.to_ring(sring), sring.one())


def _normalised_weights(f: Poly) -> Optional[WeightSystem]:
    w = detect_weights(f)
    if w is None:
        return None
    d = w.degree_of(f)
    return WeightSystem(w.variables, tuple(a / d for a in w.alpha), Fraction(1))


def qh_exponents(f: Poly) -> List[Fraction]:
    """Sorted distinct values sum(alpha) + weight(m) over the Milnor basis (support variables)."""
    if f.is_zero() or f.constant_term() != 0:
        raise NotApplicable("f must be nonzero and vanish at the origin")
    g, _ = _support_ring(f)
    w = _normalised_weights(g)
    if w is None:
        raise NotApplicable(f"{f} is not weighted homogeneous with positive weights")
    try:
        md = milnor_data(g, w)
    except NotIsolated as exc:
        raise NotApplicable(str(exc)) from exc
    return sorted({w.total + x for x in md.weights})


def bs_quasihomogeneous(f: Poly) -> BFunction:
    """(s+1) * prod_{c in E} (s+c) for a quasi-homogeneous isolated singularity."""
    return BFunction.from_roots([Fraction(-1)] + [-c for c in qh_exponents(f)])


def rescale_roots(roots: Iterable, p: int) -> FrozenSet[Fraction]:
    """{(r - i)/p : 0 <= i < p}: roots for f^p from those for f."""
    if p < 1:
        raise ValueError("p must be positive")
    return frozenset(Fraction(Fraction(r) - i, p) for r in roots for i in range(p))


# ---------------------------------------------------------------------------
# restriction to a smooth component

def graph_variable(l: Poly) -> Optional[Tuple[str, Fraction, Poly]]:
    """(x_i, c, q) with l = c*x_i + q and x_i absent from q, or None."""
    ring = l.ring
    if l.constant_term() != 0:
        return None
    for name in l.support():
        i = ring.index(name)
        hits = [(m, c) for m, c in l.terms.items() if m[i]]
        if len(hits) == 1 and sum(hits[0][0]) == 1:
            c = hits[0][1]
            q = l - ring.gen(name) * c
            return name, c, q
    return None


def restrict_at_smooth_factor(h: Poly, l: Poly) -> Poly:
    """h with x_i := -q/c where l = c*x_i + q; lives in the ring without x_i."""
    g = graph_variable(l)
    if g is None:
        raise Unsupported(f"{l} is not of the form c*x_i + q(other variables)")
    name, c, q = g
    sub = h.subs({name: -q / c})
    ring = h.ring.sub([n for n in h.ring.names if n != name])
    return sub.to_ring(ring)


# ---------------------------------------------------------------------------
# factored input

Factors = Tuple[Tuple[Poly, int], ...]


def _monic(f: Poly) -> Poly:
    return f / f.sorted_terms()[0][1]


def normalize_factors(h: Union[Poly, Sequence[Poly]]) -> Tuple[Factors, List[Step]]:
    """Split monomial content, drop unit factors, merge associated factors.

    Returns ((factor, multiplicity), ...) in a canonical order.
    """
    factors = [h] if isinstance(h, Poly) else list(h)
    if not factors:
        raise ValueError("no factors given")
    ring = factors[0].ring
    counts: Dict[Poly, int] = {}
    steps = []
    for f in factors:
        f = f.to_ring(ring)
        if f.is_zero():
            raise ValueError("h must be nonzero")
        if f.is_constant():
            continue
        n = ring.nvars
        content = [min(m[i] for m in f.terms) for i in range(n)]
        if any(content):
            f = f.exact_div(ring.monomial(content))
            for i, e in enumerate(content):
                if e:
                    x = ring.monomial([1 if j == i else 0 for j in range(n)])
                    counts[x] = counts.get(x, 0) + e
        if f.is_constant():
            continue
        if f.constant_term() != 0:
            steps.append(Step("unit-factor", f"{f} does not vanish at the origin and is a unit there"))
            continue
        f = _monic(f)
        counts[f] = counts.get(f, 0) + 1
    if not counts:
        raise ValueError("h must vanish at the origin")
    items = sorted(counts.items(), key=lambda t: (t[0].total_degree(), str(t[0])))
    return tuple(items), steps


def _product(fs: Factors, ring: Ring) -> Poly:
    out = ring.one()
    for f, e in fs:
        out = out * f ** e
    return out


def _key(fs: Factors) -> Tuple:
    return tuple((str(f), e) for f, e in fs)


def _is_smooth(f: Poly) -> bool:
    return f.constant_term() == 0 and f.min_degree() == 1


def _isolated(f: Poly) -> bool:
    g, _ = _support_ring(f)
    try:
        milnor_data(g)
    except NotIsolated:
        return False
    return True


# ---------------------------------------------------------------------------
# verdicts

@dataclass
class BVerdict:
    verdict: Verdict
    roots: Optional[BFunction] = None

    @property
    def status(self) -> Status:
        return self.verdict.status

    @property
    def trace(self) -> List[Step]:
        return self.verdict.trace

    @property
    def reason(self) -> Optional[str]:
        return self.verdict.reason

    @property
    def witness(self) -> Any:
        return self.verdict.witness

    @property
    def is_holds(self) -> bool:
        return self.verdict.is_holds

    @property
    def is_fails(self) -> bool:
        return self.verdict.is_fails

    @property
    def decided(self) -> bool:
        return self.verdict.decided

    def rules(self) -> Tuple[str, ...]:
        return self.verdict.rules()

    def to_json(self) -> Dict[str, Any]:
        out = self.verdict.to_json()
        if self.roots is not None:
            out.setdefault("certificate", {})["roots"] = str(self.roots)
        if self.verdict.is_fails and self.verdict.witness is not None:
            out.setdefault("certificate", {})["witness_root"] = str(self.verdict.witness)
        return out


def _from_roots(rule: str, note: str, b: BFunction, extra: Optional[dict] = None) -> BVerdict:
    bad = [r for r in b.integral_roots() if r <= -2]
    cert = {"b": str(b)}
    if extra:
        cert.update(extra)
    if bad:
        v = Verdict.fails(rule, note + f"; integral root {min(bad)} < -1",
                          certificate=cert, witness=min(bad))
    else:
        v = Verdict.holds(rule, note + "; -1 is the only integral root", certificate=cert)
    return BVerdict(v, b)


RULES = (
    "smooth",
    "monomial",
    "linear-arrangement",
    "quasi-homogeneous",
    "plane-curve",
    "line-with-plane-curve",
    "smooth-factor-restriction",
    "smooth-factor-power",
    "complete-intersection-origin",
    "many-factors",
)


class _Engine:
    def __init__(self, rules: Iterable[str], max_depth: int):
        self.rules = tuple(r for r in RULES if r in set(rules))
        self.max_depth = max_depth
        self.memo: Dict[Tuple, BVerdict] = {}

    # each rule returns a BVerdict, or None when it does not apply
    def decide(self, fs: Factors, ring: Ring, depth: int) -> BVerdict:
        key = (_key(fs), ring.names)
        if key in self.memo:
            return self.memo[key]
        if depth > self.max_depth:
            return BVerdict(Verdict.unknown("recursion depth exhausted"))
        blocking = []
        out = None
        for rule in self.rules:
            fn = getattr(self, "rule_" + rule.replace("-", "_"))
            try:
                res = fn(fs, ring, depth)
            except ResourceLimitError as exc:
                blocking.append(f"{rule}: {exc}")
                continue
            if res is None:
                continue
            if res.decided:
                out = res
                break
            blocking.append(f"{rule}: {res.reason}")
        if out is None:
            reason = "; ".join(blocking) if blocking else (
                "no rule applies (factors are taken as given; supply the factorization)")
            out = BVerdict(Verdict.unknown(reason))
        self.memo[key] = out
        return out

    def sub(self, fs: Factors, ring: Ring, depth: int) -> BVerdict:
        support = set()
        for f, _ in fs:
            support.update(f.support())
        names = [n for n in ring.names if n in support]
        sring = ring.sub(names) if names else ring
        return self.decide(tuple((f.to_ring(sring), e) for f, e in fs), sring, depth + 1)

    # -- rules --------------------------------------------------------
    def rule_smooth(self, fs, ring, depth):
        if len(fs) == 1 and _is_smooth(fs[0][0]):
            p = fs[0][1]
            b = BFunction.from_roots(rescale_roots([Fraction(-1)], p))
            note = "smooth germ" if p == 1 else f"power {p} of a smooth germ, b as for x^{p}"
            return _from_roots("smooth", note, b)
        return None

    def rule_monomial(self, fs, ring, depth):
        if not all(f.is_monomial() and f.total_degree() == 1 for f, _ in fs):
            return None
        gamma = [0] * len(ring.base_names)
        for f, e in fs:
            gamma[ring.base_names.index(f.support()[0])] += e
        gamma = [g for g in gamma if g]
        return _from_roots("monomial", "monomial germ, product formula for d^gamma x^gamma(s+1)",
                           bs_monomial(gamma), {"operator": "prod gamma_i^-gamma_i d_i^gamma_i"})

    def rule_linear_arrangement(self, fs, ring, depth):
        if all(f.total_degree() == 1 for f, _ in fs):
            return BVerdict(Verdict.holds("linear-arrangement",
                                          "product of linear forms: deletion-restriction induction"))
        return None

    def rule_quasi_homogeneous(self, fs, ring, depth):
        if any(e > 1 for _, e in fs) and len(ring.base_names) > 1:
            return None
        h = _product(fs, ring)
        try:
            E = qh_exponents(h)
        except NotApplicable:
            return None
        b = BFunction.from_roots([Fraction(-1)] + [-c for c in E])
        return _from_roots("quasi-homogeneous",
                           "quasi-homogeneous isolated singularity, exponents sum(alpha) + Milnor weights", b,
                           {"exponents": [str(c) for c in E]})

    def rule_plane_curve(self, fs, ring, depth):
        if len(ring.base_names) > 2:
            return None
        if len(ring.base_names) == 1:
            k = sum(e * f.min_degree() for f, e in fs)
            b = BFunction.from_roots(rescale_roots([Fraction(-1)], k))
            return _from_roots("plane-curve", f"one variable: unit times x^{k}", b)
        if any(e > 1 for _, e in fs) or not _isolated(_product(fs, ring)):
            return None
        return BVerdict(Verdict.holds("plane-curve", "reduced germ of plane curve"))

    def rule_line_with_plane_curve(self, fs, ring, depth):
        if any(e > 1 for _, e in fs) or len(fs) < 2:
            return None
        for k, (l, _) in enumerate(fs):
            shape = _line_shape(l, ring)
            if shape is None:
                continue
            rest = fs[:k] + fs[k + 1:]
            for a, b in shape:
                if all(set(f.support()) <= {a, b} for f, _ in rest):
                    g = _product(rest, ring)
                    if _isolated(g):
                        return BVerdict(Verdict.holds(
                            "line-with-plane-curve",
                            f"({l}) times a reduced plane curve in {a},{b}: restriction to the smooth component"))
        return None

    def rule_smooth_factor_restriction(self, fs, ring, depth):
        if len(fs) < 2:
            return None
        reasons = []
        for k, (l, e) in enumerate(fs):
            if e != 1 or graph_variable(l) is None:
                continue
            rest = fs[:k] + fs[k + 1:]
            rl = self.sub(((l, 1),), ring, depth)
            rg = self.sub(rest, ring, depth)
            if not (rl.is_holds and rg.is_holds):
                reasons.append(f"B({l}) or B(rest) not established")
                continue
            restricted = []
            for f, m in rest:
                r = restrict_at_smooth_factor(f, l)
                if r.is_zero():
                    restricted = None
                    break
                restricted.append((r, m))
            if restricted is None:
                reasons.append(f"{l} shares a component with the rest")
                continue
            sring = restricted[0][0].ring
            try:
                rfs, _ = normalize_factors([r for r, m in restricted for _ in range(m)])
            except ValueError:
                continue
            rr = self.sub(rfs, sring, depth)
            if not rr.decided:
                reasons.append(f"restriction to {l} = 0: {rr.reason}")
                continue
            step = Step("smooth-factor-restriction",
                        f"B(h) equivalent to B of the rest restricted to {l} = 0, given B({l}) and B(rest)")
            cert = {"restricted": str(_product(rfs, rfs[0][0].ring))}
            if rr.roots is not None:
                cert["restricted_b"] = str(rr.roots)
            v = Verdict(rr.status, [step] + rl.trace + rg.trace + rr.trace, certificate=cert, witness=rr.witness)
            return BVerdict(v)
        if reasons:
            return BVerdict(Verdict.unknown("; ".join(reasons)))
        return None

    def rule_smooth_factor_power(self, fs, ring, depth):
        for k, (l, e) in enumerate(fs):
            if e < 2 or not _is_smooth(l) or len(fs) < 2:
                continue
            rest = fs[:k] + fs[k + 1:]
            r1 = self.sub(rest, ring, depth)
            r2 = self.sub(rest + ((l, 1),), ring, depth)
            if r1.is_holds and r2.is_holds:
                step = Step("smooth-factor-power",
                            f"B(rest) and B(rest*{l}) give B(rest*({l})^{e})")
                return BVerdict(Verdict(Status.HOLDS, [step] + r1.trace + r2.trace))
        return None

    def _subproducts_hold(self, fs, ring, depth, size):
        traces = []
        for sub in combinations(fs, size):
            r = self.sub(sub, ring, depth)
            if not r.is_holds:
                return None
            traces += r.trace
        return traces

    def rule_complete_intersection_origin(self, fs, ring, depth):
        n = len(ring.base_names)
        if len(fs) != n or n < 2 or any(e > 1 for _, e in fs):
            return None
        I = Ideal([f for f, _ in fs], MonomialOrder.local(), ring)
        if krull_dim(I) != 0:
            return None
        traces = self._subproducts_hold(fs, ring, depth, n - 1)
        if traces is None:
            return BVerdict(Verdict.unknown("a product of n-1 factors is not known to satisfy B"))
        step = Step("complete-intersection-origin", "n factors meeting only at the origin, all (n-1)-subproducts satisfy B")
        return BVerdict(Verdict(Status.HOLDS, [step] + traces))

    def rule_many_factors(self, fs, ring, depth):
        n = len(ring.base_names)
        if len(fs) < n + 1 or any(e > 1 for _, e in fs):
            return None
        traces = self._subproducts_hold(fs, ring, depth, n)
        if traces is None:
            return BVerdict(Verdict.unknown("a product of n factors is not known to satisfy B"))
        step = Step("many-factors", "more than n factors, all n-subproducts satisfy B")
        return BVerdict(Verdict(Status.HOLDS, [step] + traces))


def _line_shape(l: Poly, ring: Ring) -> Optional[List[Tuple[str, str]]]:
    """For l = c*(x_a - x_b*x_c): the pairs (a, b) and (a, c); else None."""
    if len(l.terms) != 2:
        return None
    lin = [(m, c) for m, c in l.terms.items() if sum(m) == 1]
    quad = [(m, c) for m, c in l.terms.items() if sum(m) == 2 and max(m) == 1]
    if len(lin) != 1 or len(quad) != 1 or lin[0][1] != -quad[0][1]:
        return None
    names = ring.names
    a = names[lin[0][0].index(1)]
    bc = [names[i] for i, e in enumerate(quad[0][0]) if e]
    if a in bc:
        return None
    return [(a, bc[0]), (a, bc[1])]


def decide_B(h: Union[Poly, Sequence[Poly]], rules: Optional[Iterable[str]] = None,
             max_depth: int = 12) -> BVerdict:
    """Decide whether -1 is the smallest integral root of b(h^s, s).

    ``h`` is a polynomial or a list of its factors.  ``rules`` restricts the
    rule set (for ablation); rules are tried in the order of :data:`RULES`.
    """
    fs, steps = normalize_factors(h)
    ring = fs[0][0].ring
    engine = _Engine(RULES if rules is None else rules, max_depth)
    out = engine.sub(fs, ring, -1)
    if steps:
        out = BVerdict(out.verdict.with_steps(steps), out.roots)
    return out
