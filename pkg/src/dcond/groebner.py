"""Commutative Gröbner / standard-basis engine over Q.

Global well-orders use Buchberger's algorithm (sugar selection with the
Gebauer-Möller criteria).  Local orders use Mora's tangent-cone normal form,
which decides questions about the localisation at the origin, i.e. about
germs.  Every basis computation runs against a reduction-step budget and
raises :class:`ResourceLimitError` instead of returning a truncated result.
"""
from __future__ import annotations

import contextlib
import contextvars
import itertools
import threading
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .symbolic import Monomial, Poly, Ring, Var, VarKind

Terms = Dict[Monomial, Fraction]

DEFAULT_MAX_STEPS = 10 ** 6


class ResourceLimitError(RuntimeError):
    """A computation exceeded its step budget or deadline."""


@dataclass
class _Limits:
    max_steps: int = DEFAULT_MAX_STEPS
    deadline: Optional[float] = None


_LIMITS: contextvars.ContextVar[_Limits] = contextvars.ContextVar("dcond_limits", default=_Limits())


@contextlib.contextmanager
def resource_limits(max_steps: Optional[int] = None, timeout: Optional[float] = None):
    """Scope the per-basis step budget and a soft wall-clock deadline."""
    cur = _LIMITS.get()
    new = _Limits(
        max_steps if max_steps is not None else cur.max_steps,
        time.monotonic() + timeout if timeout is not None else cur.deadline,
    )
    token = _LIMITS.set(new)
    try:
        yield new
    finally:
        _LIMITS.reset(token)


class Budget:
    __slots__ = ("remaining", "deadline", "_n")

    def __init__(self):
        lim = _LIMITS.get()
        self.remaining = lim.max_steps
        self.deadline = lim.deadline
        self._n = 0

    def tick(self, n: int = 1) -> None:
        self.remaining -= n
        if self.remaining < 0:
            raise ResourceLimitError("resource limit: reduction step budget exhausted")
        self._n += n
        if self.deadline is not None and self._n >= 256:
            self._n = 0
            if time.monotonic() > self.deadline:
                raise ResourceLimitError("resource limit: time limit exceeded")


# ---------------------------------------------------------------------------
# monomial orders

def _revneg(m: Sequence[int]) -> Tuple[int, ...]:
    return tuple(-e for e in reversed(m))


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order described by variable names, resolved per ring.

    ``kind`` is one of ``grevlex``, ``lex``, ``block`` (elimination: the
    variables in ``block`` are larger than all others, grevlex inside each
    block), ``weighted`` (weighted degree, grevlex tie-break) and ``local``
    (negative degree, optionally weighted; not a well-order).
    """

    kind: str = "grevlex"
    block: Tuple[str, ...] = ()
    weights: Tuple[Tuple[str, Fraction], ...] = ()

    @classmethod
    def grevlex(cls) -> "MonomialOrder":
        return cls("grevlex")

    @classmethod
    def lex(cls) -> "MonomialOrder":
        return cls("lex")

    @classmethod
    def elimination(cls, drop: Iterable[str]) -> "MonomialOrder":
        return cls("block", tuple(drop))

    @classmethod
    def weighted(cls, weights: Dict[str, Fraction]) -> "MonomialOrder":
        if any(Fraction(w) <= 0 for w in weights.values()):
            raise ValueError("weighted orders need strictly positive weights")
        return cls("weighted", (), tuple(sorted((k, Fraction(v)) for k, v in weights.items())))

    @classmethod
    def local(cls, weights: Optional[Dict[str, Fraction]] = None) -> "MonomialOrder":
        ws = tuple(sorted((k, Fraction(v)) for k, v in (weights or {}).items()))
        if any(w <= 0 for _, w in ws):
            raise ValueError("local weighted orders need strictly positive weights")
        return cls("local", (), ws)

    @property
    def is_local(self) -> bool:
        return self.kind == "local"

    def grading(self, ring: Ring) -> Callable[[Monomial], Fraction]:
        """The degree function driving the order (used for ecart)."""
        if self.weights:
            wd = dict(self.weights)
            w = [wd.get(n, Fraction(1)) for n in ring.names]
            return lambda m: sum((a * e for a, e in zip(w, m) if e), Fraction(0))
        return lambda m: sum(m)

    def key(self, ring: Ring) -> Callable[[Monomial], tuple]:
        """Sort key: larger key means larger monomial (the leading one)."""
        return _order_key(self, ring)


@lru_cache(maxsize=256)
def _order_key(order: MonomialOrder, ring: Ring):
    kind = order.kind
    if kind == "grevlex":
        raw = lambda m: (sum(m), _revneg(m))
    elif kind == "lex":
        raw = lambda m: m
    elif kind == "block":
        for n in order.block:
            ring.index(n)
        first = [ring.index(n) for n in ring.names if n in order.block]
        rest = [ring.index(n) for n in ring.names if n not in order.block]

        def raw(m):
            a = [m[i] for i in first]
            b = [m[i] for i in rest]
            return (sum(a), _revneg(a), sum(b), _revneg(b))
    elif kind == "weighted":
        g = order.grading(ring)
        raw = lambda m: (g(m), sum(m), _revneg(m))
    elif kind == "local":
        g = order.grading(ring)
        raw = lambda m: (-g(m), -sum(m), _revneg(m))
    else:
        raise ValueError(f"unknown order kind {kind!r}")
    return lru_cache(maxsize=None)(raw)


# ---------------------------------------------------------------------------
# low-level term arithmetic

def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _sub_mono(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def _add_mono(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def _disjoint(a: Monomial, b: Monomial) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


def _axpy(h: Terms, f: Fraction, shift: Monomial, g: Terms) -> None:
    """h -= f * x^shift * g, in place."""
    for m, v in g.items():
        mm = _add_mono(m, shift)
        nv = h.get(mm, 0) - f * v
        if nv:
            h[mm] = nv
        else:
            h.pop(mm, None)


class _Elt:
    """Basis element under construction."""

    __slots__ = ("terms", "lm", "lc", "sugar", "cof", "ecart")

    def __init__(self, terms: Terms, key, sugar: int, cof=None, grading=None):
        self.terms = terms
        self.lm = max(terms, key=key)
        self.lc = terms[self.lm]
        self.sugar = sugar
        self.cof = cof
        if grading is not None:
            self.ecart = max(grading(m) for m in terms) - grading(self.lm)
        else:
            self.ecart = 0

    def normalize(self):
        if self.lc != 1:
            inv = 1 / self.lc
            self.terms = {m: c * inv for m, c in self.terms.items()}
            if self.cof is not None:
                self.cof = [{m: c * inv for m, c in v.items()} for v in self.cof]
            self.lc = Fraction(1)


def _cof_axpy(target: List[Terms], f: Fraction, shift: Monomial, source: List[Terms]) -> None:
    for t, s in zip(target, source):
        _axpy(t, f, shift, s)


def _reduce(h: Terms, basis: List[_Elt], key, budget: Budget, *, full: bool = True,
            cof: Optional[List[Terms]] = None, quot: Optional[List[Terms]] = None) -> Terms:
    """Division of ``h`` by ``basis`` (global order).

    ``cof`` is updated in place to keep ``h_current = sum cof_i f_i``;
    ``quot`` collects quotients so that ``h_in = sum quot_j b_j + remainder``.
    """
    h = dict(h)
    rem: Terms = {}
    while h:
        lm = max(h, key=key)
        c = h[lm]
        for j, g in enumerate(basis):
            if _divides(g.lm, lm):
                break
        else:
            if not full:
                h.update(rem)
                return h
            rem[lm] = c
            del h[lm]
            continue
        budget.tick()
        shift = _sub_mono(lm, g.lm)
        f = c / g.lc
        _axpy(h, f, shift, g.terms)
        if cof is not None:
            _cof_axpy(cof, f, shift, g.cof)
        if quot is not None:
            q = quot[j]
            q[shift] = q.get(shift, 0) + f
            if not q[shift]:
                del q[shift]
    return rem


def _update(basis: List[_Elt], active: List[int], pairs: set, new: int) -> List[int]:
    """Gebauer-Möller installation of ``basis[new]``; returns the new active list."""
    h = basis[new].lm
    cands = [(new, g) for g in active]
    keep = []
    while cands:
        p = cands.pop(0)
        l1 = _lcm(h, basis[p[1]].lm)
        if _disjoint(h, basis[p[1]].lm):
            keep.append(p)
            continue
        if not any(_divides(_lcm(h, basis[q[1]].lm), l1) for q in cands + keep):
            keep.append(p)
    new_pairs = [p for p in keep if not _disjoint(h, basis[p[1]].lm)]
    old = set()
    for (a, b) in pairs:
        la = _lcm(basis[a].lm, basis[b].lm)
        if (_divides(h, la) and _lcm(basis[a].lm, h) != la and _lcm(basis[b].lm, h) != la):
            continue
        old.add((a, b))
    pairs.clear()
    pairs.update(old)
    pairs.update(new_pairs)
    return [g for g in active if not _divides(h, basis[g].lm)] + [new]


def _spoly(a: _Elt, b: _Elt) -> Tuple[Terms, Monomial, Monomial, Fraction, Fraction]:
    l = _lcm(a.lm, b.lm)
    sa, sb = _sub_mono(l, a.lm), _sub_mono(l, b.lm)
    fa, fb = 1 / a.lc, 1 / b.lc
    s: Terms = {}
    _axpy(s, -fa, sa, a.terms)
    _axpy(s, fb, sb, b.terms)
    return s, sa, sb, fa, fb


def _deg(terms: Terms) -> int:
    return max(sum(m) for m in terms)


def _buchberger(gens: List[Terms], key, nvars: int, track: bool) -> List[_Elt]:
    budget = Budget()
    basis: List[_Elt] = []
    active: List[int] = []
    pairs: set = set()
    m = len(gens)
    for i, g in enumerate(gens):
        if not g:
            continue
        cof = None
        if track:
            cof = [dict() for _ in range(m)]
            cof[i][(0,) * nvars] = Fraction(1)
        e = _Elt(dict(g), key, _deg(g), cof)
        e.normalize()
        basis.append(e)
        active = _update(basis, active, pairs, len(basis) - 1)

    def pair_key(p):
        a, b = basis[p[0]], basis[p[1]]
        l = _lcm(a.lm, b.lm)
        sugar = max(a.sugar + sum(l) - sum(a.lm), b.sugar + sum(l) - sum(b.lm))
        return (sugar, key(l), p)

    while pairs:
        p = min(pairs, key=pair_key)
        pairs.discard(p)
        a, b = basis[p[0]], basis[p[1]]
        s, sa, sb, fa, fb = _spoly(a, b)
        budget.tick()
        if not s:
            continue
        sugar = pair_key(p)[0]
        cof = None
        if track:
            cof = [dict() for _ in range(m)]
            _cof_axpy(cof, -fa, sa, a.cof)
            _cof_axpy(cof, fb, sb, b.cof)
        r = _reduce(s, [basis[i] for i in active], key, budget, full=False, cof=cof)
        if not r:
            continue
        e = _Elt(r, key, max(sugar, _deg(r)), cof)
        e.normalize()
        basis.append(e)
        active = _update(basis, active, pairs, len(basis) - 1)

    # minimal then reduced basis
    elts = [basis[i] for i in active]
    elts.sort(key=lambda e: key(e.lm))
    minimal: List[_Elt] = []
    for e in elts:
        if not any(_divides(g.lm, e.lm) for g in minimal):
            minimal.append(e)
    reduced: List[_Elt] = []
    for i, e in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        tail = dict(e.terms)
        lead = tail.pop(e.lm)
        cof = [dict(c) for c in e.cof] if track else None
        quot = [dict() for _ in others] if track else None
        rem = _reduce(tail, others, key, budget, full=True, quot=quot)
        if track:
            for q, g in zip(quot, others):
                for sh, f in q.items():
                    _cof_axpy(cof, f, sh, g.cof)
        rem[e.lm] = lead
        ne = _Elt(rem, key, e.sugar, cof)
        ne.normalize()
        reduced.append(ne)
    reduced.sort(key=lambda e: key(e.lm), reverse=True)
    return reduced


def _mora_nf(h: Terms, basis: List[_Elt], key, grading, budget: Budget) -> Terms:
    """Mora's weak normal form: returns r with u*h - r in the ideal, u(0) != 0."""
    T = list(basis)
    h = dict(h)
    while h:
        lm = max(h, key=key)
        cands = [g for g in T if _divides(g.lm, lm)]
        if not cands:
            return h
        budget.tick()
        g = min(cands, key=lambda e: e.ecart)
        h_ecart = max(grading(m) for m in h) - grading(lm)
        if g.ecart > h_ecart:
            T.append(_Elt(dict(h), key, 0, None, grading))
        f = h[lm] / g.lc
        _axpy(h, f, _sub_mono(lm, g.lm), g.terms)
    return h


def _mora(gens: List[Terms], key, grading) -> List[_Elt]:
    budget = Budget()
    basis: List[_Elt] = []
    active: List[int] = []
    pairs: set = set()
    for g in gens:
        if not g:
            continue
        e = _Elt(dict(g), key, 0, None, grading)
        e.normalize()
        basis.append(e)
        active = _update(basis, active, pairs, len(basis) - 1)

    while pairs:
        p = max(pairs, key=lambda q: (key(_lcm(basis[q[0]].lm, basis[q[1]].lm)), (-q[0], -q[1])))
        pairs.discard(p)
        s, *_ = _spoly(basis[p[0]], basis[p[1]])
        budget.tick()
        if not s:
            continue
        # reduce against every element seen so far; ecart bookkeeping needs all of them
        r = _mora_nf(s, basis, key, grading, budget)
        if not r:
            continue
        e = _Elt(r, key, 0, None, grading)
        e.normalize()
        basis.append(e)
        active = _update(basis, active, pairs, len(basis) - 1)
    elts = sorted((basis[i] for i in active), key=lambda e: key(e.lm))
    minimal: List[_Elt] = []
    for e in elts:
        if not any(_divides(g.lm, e.lm) for g in minimal):
            minimal.append(e)
    minimal.sort(key=lambda e: key(e.lm), reverse=True)
    return minimal


# ---------------------------------------------------------------------------
# public types

class Ideal:
    """Generators plus a monomial order; the basis is computed once, on demand."""

    def __init__(self, generators: Iterable[Poly], order: Optional[MonomialOrder] = None,
                 ring: Optional[Ring] = None):
        gens = tuple(generators)
        if ring is None:
            if not gens:
                raise ValueError("an empty ideal needs an explicit ring")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise ValueError("all generators must share one ring")
        self.ring = ring
        self.generators: Tuple[Poly, ...] = gens
        self.order = order or MonomialOrder.grevlex()
        self._basis: Optional[Tuple[Poly, ...]] = None
        self._elts: Optional[List[_Elt]] = None
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"Ideal([{', '.join(map(str, self.generators))}], {self.order.kind})"

    def with_order(self, order: MonomialOrder) -> "Ideal":
        return Ideal(self.generators, order, self.ring)

    def _key(self):
        return self.order.key(self.ring)

    def _compute(self) -> None:
        with self._lock:
            if self._basis is not None:
                return
            key = self._key()
            gens = [dict(g.terms) for g in self.generators if g]
            if self.order.is_local:
                elts = _mora(gens, key, self.order.grading(self.ring))
            else:
                elts = _buchberger(gens, key, self.ring.nvars, track=False)
            self._elts = elts
            self._basis = tuple(Poly(self.ring, e.terms, _trusted=True) for e in elts)

    @property
    def basis(self) -> Tuple[Poly, ...]:
        if self._basis is None:
            self._compute()
        return self._basis  # type: ignore[return-value]

    def leading_monomials(self) -> List[Monomial]:
        self.basis
        return [e.lm for e in self._elts]  # type: ignore[union-attr]

    def is_unit_ideal(self) -> bool:
        zero = (0,) * self.ring.nvars
        return any(m == zero for m in self.leading_monomials())

    def normal_form(self, p: Poly) -> Poly:
        """Remainder (global) or Mora weak normal form (local); zero iff member."""
        self.basis
        key = self._key()
        if self.order.is_local:
            r = _mora_nf(dict(p.terms), self._elts, key, self.order.grading(self.ring), Budget())
        else:
            r = _reduce(dict(p.terms), self._elts, key, Budget(), full=True)
        return Poly(self.ring, r, _trusted=True)

    def contains(self, p: Poly) -> bool:
        return self.normal_form(p.to_ring(self.ring)).is_zero()


def groebner_basis(ideal: Ideal) -> Ideal:
    """Populate the cached reduced Gröbner basis (standard basis for local orders)."""
    ideal.basis
    return ideal


# ---------------------------------------------------------------------------
# membership with certificates

@dataclass
class Membership:
    """``unit * p == sum(cofactors[i] * generators[i])`` when ``member``."""

    member: bool
    cofactors: Optional[List[Poly]] = None
    unit: Optional[Poly] = None

    def __bool__(self) -> bool:
        return self.member

    def verify(self, p: Poly, generators: Sequence[Poly]) -> bool:
        if not self.member or self.cofactors is None:
            return False
        unit = self.unit if self.unit is not None else p.ring.one()
        if unit.constant_term() == 0:
            return False
        total = p.ring.zero()
        for c, g in zip(self.cofactors, generators):
            total = total + c * g
        return total == unit * p


def lift(p: Poly, generators: Sequence[Poly], order: Optional[MonomialOrder] = None) -> Optional[List[Poly]]:
    """Cofactors c with p = sum c_i g_i (global membership), or None."""
    ring = p.ring
    order = order or MonomialOrder.grevlex()
    if order.is_local:
        raise ValueError("lift works with global orders")
    key = order.key(ring)
    gens = [dict(g.terms) for g in generators]
    if not any(gens):
        return [ring.zero() for _ in generators] if p.is_zero() else None
    elts = _buchberger(gens, key, ring.nvars, track=True)
    quot = [dict() for _ in elts]
    rem = _reduce(dict(p.terms), elts, key, Budget(), full=True, quot=quot)
    if rem:
        return None
    total = [dict() for _ in generators]
    for q, e in zip(quot, elts):
        for sh, f in q.items():
            _cof_axpy(total, -f, sh, e.cof)
    return [Poly(ring, t, _trusted=True) for t in total]


def ideal_member(p: Poly, ideal: Ideal) -> Membership:
    """Decide ``p in ideal`` (in the localisation at 0 for local orders).

    Positive answers carry a certificate ``unit*p = sum c_i g_i`` over the
    polynomial ring, with ``unit(0) != 0`` (``unit`` is 1 for global orders).
    """
    p = p.to_ring(ideal.ring)
    gens = list(ideal.generators)
    if not ideal.order.is_local:
        if not ideal.contains(p):
            return Membership(False)
        cof = lift(p, gens, ideal.order)
        return Membership(True, cof, ideal.ring.one())
    if not ideal.contains(p):
        return Membership(False)
    if p.is_zero():
        return Membership(True, [ideal.ring.zero() for _ in gens], ideal.ring.one())
    # a unit multiplier lives in (I : p); pick a generator not vanishing at 0
    colon = ideal_quotient(Ideal(gens, MonomialOrder.grevlex(), ideal.ring), p)
    unit = None
    for u in sorted(colon.generators, key=lambda q: (len(q.terms), q.total_degree(), str(q))):
        if u.constant_term() != 0:
            unit = u
            break
    if unit is None:  # pragma: no cover - contradicts the Mora decision
        raise RuntimeError("local membership without a unit multiplier")
    cof = lift(unit * p, gens)
    if cof is None:  # pragma: no cover
        raise RuntimeError("failed to lift unit multiple")
    return Membership(True, cof, unit)


# ---------------------------------------------------------------------------
# elimination, intersection, quotients

_FRESH = 0


def fresh_ring(ring: Ring, prefix: str, count: int = 1) -> Tuple[Ring, List[str]]:
    names = []
    k = 0
    while len(names) < count:
        cand = f"{prefix}{k}" if k or count > 1 else prefix
        k += 1
        if cand not in ring and cand not in names:
            names.append(cand)
    start = sum(1 for v in ring.variables if v.kind == VarKind.PARAM)
    return ring.extend(Var(n, VarKind.PARAM, start + i + 1) for i, n in enumerate(names)), names


def eliminate_vars(ideal: Ideal, drop: Iterable[str], keep_order: Optional[MonomialOrder] = None) -> Ideal:
    """Generators of ``ideal`` intersected with the subring free of ``drop``."""
    drop = tuple(drop)
    ring = ideal.ring
    for n in drop:
        ring.index(n)
    sub = ring.sub(n for n in ring.names if n not in drop)
    if not drop:
        return Ideal(ideal.generators, keep_order or ideal.order, ring)
    elim = Ideal(ideal.generators, MonomialOrder.elimination(drop), ring)
    didx = [ring.index(n) for n in drop]
    out = [g.to_ring(sub) for g in elim.basis if not any(m[i] for m in g.terms for i in didx)]
    return Ideal(out, keep_order or MonomialOrder.grevlex(), sub)


def ideal_intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via elimination of t from t*I + (1-t)*J."""
    if I.ring != J.ring:
        raise ValueError("intersection needs ideals in the same ring")
    ring, (t,) = fresh_ring(I.ring, "_t")
    tp = ring.gen(t)
    gens = [tp * g.to_ring(ring) for g in I.generators] + [(1 - tp) * g.to_ring(ring) for g in J.generators]
    out = eliminate_vars(Ideal(gens, ring=ring), [t])
    return Ideal([g.to_ring(I.ring) for g in out.generators], I.order, I.ring)


def ideal_quotient(I: Ideal, f: Poly) -> Ideal:
    """I : f."""
    f = f.to_ring(I.ring)
    if f.is_zero():
        return Ideal([I.ring.one()], I.order, I.ring)
    inter = ideal_intersect(Ideal(I.generators, MonomialOrder.grevlex(), I.ring), Ideal([f], ring=I.ring))
    return Ideal([g.exact_div(f) for g in inter.generators], I.order, I.ring)


def saturate(I: Ideal, f: Poly) -> Ideal:
    """I : f^oo by the Rabinowitsch trick."""
    ring, (t,) = fresh_ring(I.ring, "_u")
    gens = [g.to_ring(ring) for g in I.generators] + [1 - ring.gen(t) * f.to_ring(ring)]
    out = eliminate_vars(Ideal(gens, ring=ring), [t])
    return Ideal([g.to_ring(I.ring) for g in out.generators], I.order, I.ring)


def saturate_ideal(I: Ideal, J: Sequence[Poly]) -> Ideal:
    """I : J^oo = intersection of I : f^oo over generators f of J."""
    result: Optional[Ideal] = None
    for f in J:
        if f.is_zero():
            continue
        s = saturate(I, f)
        result = s if result is None else ideal_intersect(result, s)
    if result is None:
        return Ideal([I.ring.one()], I.order, I.ring)
    return result


def ideals_equal(I: Ideal, J: Ideal) -> bool:
    """Mutual membership of basis elements."""
    if I.ring != J.ring:
        return False
    return all(J.contains(g) for g in I.basis) and all(I.contains(g) for g in J.basis)


# ---------------------------------------------------------------------------
# dimension and quotient bases

def monomial_dimension(lms: Sequence[Monomial], nvars: int) -> int:
    """Krull dimension of K[x]/(lms): largest set of variables independent mod lms."""
    zero = (0,) * nvars
    if any(m == zero for m in lms):
        return -1
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in lms]
    # minimal supports are enough
    supports = [s for s in supports if not any(o < s for o in supports)]
    for size in range(nvars, -1, -1):
        for subset in itertools.combinations(range(nvars), size):
            S = frozenset(subset)
            if not any(s <= S for s in supports):
                return size
    return 0


def krull_dim(ideal: Ideal) -> int:
    """Dimension of V(I) (at the origin for local orders); -1 for the unit ideal."""
    return monomial_dimension(ideal.leading_monomials(), ideal.ring.nvars)


@dataclass
class QuotientBasis:
    monomials: List[Poly] = field(default_factory=list)
    finite: bool = True

    def __len__(self) -> int:
        return len(self.monomials)


def quotient_monomial_basis(ideal: Ideal, limit: int = 100000) -> QuotientBasis:
    """Standard monomials (not in the leading ideal); ``finite`` iff dim <= 0."""
    ring = ideal.ring
    n = ring.nvars
    lms = ideal.leading_monomials()
    if monomial_dimension(lms, n) > 0:
        return QuotientBasis([], False)
    if ideal.is_unit_ideal():
        return QuotientBasis([], True)
    bounds = []
    for i in range(n):
        pure = [m[i] for m in lms if m[i] and all(e == 0 for j, e in enumerate(m) if j != i)]
        bounds.append(min(pure))
    out = []
    key = ideal.order.key(ring)
    for exps in itertools.product(*(range(b) for b in bounds)):
        if any(_divides(m, exps) for m in lms):
            continue
        out.append(exps)
        if len(out) > limit:
            raise ResourceLimitError("resource limit: quotient basis too large")
    out.sort(key=lambda m: (sum(m), key(m)))
    return QuotientBasis([ring.monomial(m) for m in out], True)


# ---------------------------------------------------------------------------
# syzygies

@dataclass(frozen=True)
class SyzygyRow:
    coefficients: Tuple[Poly, ...]

    def check(self, fs: Sequence[Poly]) -> bool:
        total = fs[0].ring.zero()
        for a, f in zip(self.coefficients, fs):
            total = total + a * f
        return total.is_zero()

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.coefficients)


def syzygies(fs: Sequence[Poly]) -> List[SyzygyRow]:
    """Generators of the syzygy module of ``fs`` (Schreyer's construction).

    With G = F*R a Gröbner basis and F = G*Q, the module is generated by the
    columns of R*S (S: S-pair syzygies of G) and of I - R*Q.
    """
    if not fs:
        return []
    ring = fs[0].ring
    m = len(fs)
    zero_mono = (0,) * ring.nvars
    nz = [i for i, f in enumerate(fs) if f]
    rows: List[Tuple[Terms, ...]] = []
    for i in range(m):
        if not fs[i]:
            v = [dict() for _ in range(m)]
            v[i][zero_mono] = Fraction(1)
            rows.append(tuple(v))
    if nz:
        key = MonomialOrder.grevlex().key(ring)
        sub = [dict(fs[i].terms) for i in nz]
        elts = _buchberger(sub, key, ring.nvars, track=True)
        budget = Budget()
        k = len(nz)
        t = len(elts)

        def embed(vec: List[Terms]) -> Tuple[Terms, ...]:
            full = [dict() for _ in range(m)]
            for j, i in enumerate(nz):
                full[i] = vec[j]
            return tuple(full)

        def through_R(svec: List[Terms]) -> List[Terms]:
            # combine a vector over G into one over F using the cofactors R
            out = [dict() for _ in range(k)]
            for sj, e in zip(svec, elts):
                for sh, f in sj.items():
                    _cof_axpy(out, -f, sh, e.cof)
            return out

        for a, b in itertools.combinations(range(t), 2):
            s, sa, sb, fa, fb = _spoly(elts[a], elts[b])
            quot = [dict() for _ in elts]
            rem = _reduce(s, elts, key, budget, full=True, quot=quot)
            if rem:  # pragma: no cover - basis is Gröbner
                raise RuntimeError("S-polynomial did not reduce to zero")
            # fa*x^sa*g_a - fb*x^sb*g_b - sum quot_j g_j = 0
            svec = [{m_: -c for m_, c in q.items()} for q in quot]
            _axpy(svec[a], -fa, sa, {zero_mono: Fraction(1)})
            _axpy(svec[b], fb, sb, {zero_mono: Fraction(1)})
            rows.append(embed(through_R(svec)))
        for j, i in enumerate(nz):
            quot = [dict() for _ in elts]
            rem = _reduce(dict(fs[i].terms), elts, key, budget, full=True, quot=quot)
            if rem:  # pragma: no cover
                raise RuntimeError("generator not reduced to zero by its own basis")
            vec = through_R(quot)
            vec = [{m_: -c for m_, c in v.items()} for v in vec]
            _axpy(vec[j], -1, zero_mono, {zero_mono: Fraction(1)})
            rows.append(embed(vec))
    out = []
    seen = set()
    for r in rows:
        polys = tuple(Poly(ring, t_, _trusted=True) for t_ in r)
        row = SyzygyRow(polys)
        if row.is_zero() or row in seen:
            continue
        seen.add(row)
        out.append(row)
    return out


def module_member(vec: Sequence[Poly], rows: Sequence[Sequence[Poly]]) -> bool:
    """Is ``vec`` in the submodule of R^m spanned by ``rows``?

    Encoded as an ideal in R[e_1..e_m]: the rows as linear forms in e plus all
    products e_i e_j; membership is decided in e-degree one.
    """
    m = len(vec)
    ring = vec[0].ring
    ering, enames = fresh_ring(ring, "_e", m)
    e = [ering.gen(n) for n in enames]

    def lin(v):
        total = ering.zero()
        for c, ei in zip(v, e):
            total = total + c.to_ring(ering) * ei
        return total

    gens = [lin(r) for r in rows] + [e[i] * e[j] for i in range(m) for j in range(i, m)]
    return Ideal(gens, MonomialOrder.grevlex(), ering).contains(lin(vec))


def is_regular_sequence(fs: Sequence[Poly], order: Optional[MonomialOrder] = None) -> bool:
    """Dimension-drop test: dim V(f_1..f_k) = m - k for every prefix.

    The default order is local, i.e. the test is about the germ at 0.
    """
    if not fs:
        return True
    ring = fs[0].ring
    order = order or MonomialOrder.local()
    m = ring.nvars
    for k in range(1, len(fs) + 1):
        if fs[k - 1].is_zero():
            return False
        if krull_dim(Ideal(fs[:k], order, ring)) != m - k:
            return False
    return True
