"""Weyl algebra with a commuting parameter s, and its action on twisted elements.

An operator is stored as ``{d-exponent: coefficient}``, coefficients being
polynomials in the base variables and the parameters; all x stand to the left
of all derivatives.  Twisted elements ``N * f^s / (f^a * prod g_i^e_i)`` are the
sections on which operators act; no gcds are taken, equality is decided by
cross-multiplication.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import linalg
from .groebner import Budget
from .symbolic import (
    Monomial,
    ParseError,
    Poly,
    Ring,
    UnknownVariableError,
    VarKind,
    _tokenize,
)

S_NAME = "s"


def with_s(ring: Ring) -> Ring:
    """``ring`` with the parameter s appended (unchanged if present)."""
    return ring if S_NAME in ring else ring.with_params(S_NAME)


def _binom_multi(b: Sequence[int], k: Sequence[int]) -> int:
    out = 1
    for bi, ki in zip(b, k):
        out *= math.comb(bi, ki)
    return out


class WeylOp:
    """Normal-ordered differential operator ``sum c_b(x, s) d^b``."""

    __slots__ = ("ring", "dvars", "terms")

    def __init__(self, ring: Ring, terms: Optional[Mapping[Tuple[int, ...], Poly]] = None):
        self.ring = ring
        self.dvars: Tuple[str, ...] = ring.base_names
        clean: Dict[Tuple[int, ...], Poly] = {}
        for b, c in (terms or {}).items():
            if len(b) != len(self.dvars):
                raise ValueError("derivative exponent has wrong length")
            c = c if isinstance(c, Poly) else ring.const(c)
            if c.ring != ring:
                raise ValueError("coefficient ring mismatch")
            if c:
                clean[tuple(b)] = c
        self.terms = clean

    # construction
    @classmethod
    def const(cls, ring: Ring, c) -> "WeylOp":
        return cls.from_poly(ring.const(c))

    @classmethod
    def from_poly(cls, p: Poly) -> "WeylOp":
        return cls(p.ring, {(0,) * len(p.ring.base_names): p})

    @classmethod
    def d(cls, ring: Ring, name: str, k: int = 1) -> "WeylOp":
        dv = ring.base_names
        if name not in dv:
            raise KeyError(f"{name!r} is not a base variable of {ring!r}")
        b = [0] * len(dv)
        b[dv.index(name)] = k
        return cls(ring, {tuple(b): ring.one()})

    @classmethod
    def vector_field(cls, ring: Ring, coefficients: Sequence[Poly]) -> "WeylOp":
        dv = ring.base_names
        if len(coefficients) != len(dv):
            raise ValueError("one coefficient per base variable expected")
        out = {}
        for i, c in enumerate(coefficients):
            b = [0] * len(dv)
            b[i] = 1
            out[tuple(b)] = c.to_ring(ring)
        return cls(ring, out)

    # views
    def coefficient_map(self) -> Dict[Tuple[Monomial, Tuple[int, ...], int], Fraction]:
        """Flat (x-exponent, d-exponent, s-exponent) -> coefficient view."""
        out = {}
        si = self.ring.index(S_NAME) if S_NAME in self.ring else None
        xi = [self.ring.index(n) for n in self.dvars]
        for b, c in self.terms.items():
            for m, v in c.terms.items():
                a = tuple(m[i] for i in xi)
                out[(a, b, m[si] if si is not None else 0)] = v
        return out

    @property
    def order(self) -> int:
        return max((sum(b) for b in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = WeylOp.const(self.ring, other)
        return isinstance(other, WeylOp) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # arithmetic
    def _coerce(self, other) -> "WeylOp":
        if isinstance(other, WeylOp):
            if other.ring != self.ring:
                raise ValueError("operator ring mismatch")
            return other
        if isinstance(other, Poly):
            return WeylOp.from_poly(other.to_ring(self.ring))
        return WeylOp.const(self.ring, other)

    def __add__(self, other) -> "WeylOp":
        other = self._coerce(other)
        out = dict(self.terms)
        for b, c in other.terms.items():
            out[b] = out[b] + c if b in out else c
        return WeylOp(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "WeylOp":
        return WeylOp(self.ring, {b: -c for b, c in self.terms.items()})

    def __sub__(self, other) -> "WeylOp":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "WeylOp":
        return self._coerce(other) - self

    def __mul__(self, other) -> "WeylOp":
        return multiply_ops(self, self._coerce(other))

    def __rmul__(self, other) -> "WeylOp":
        return multiply_ops(self._coerce(other), self)

    def __pow__(self, k: int) -> "WeylOp":
        out = WeylOp.const(self.ring, 1)
        for _ in range(k):
            out = out * self
        return out

    # other operations
    def subs_s(self, value) -> "WeylOp":
        """Substitute a rational value for s (the ring keeps s as a variable)."""
        if S_NAME not in self.ring:
            return self
        return WeylOp(self.ring, {b: c.subs({S_NAME: value}) for b, c in self.terms.items()})

    def to_ring(self, ring: Ring) -> "WeylOp":
        if ring.base_names != self.dvars:
            raise ValueError("base variables must agree")
        return WeylOp(ring, {b: c.to_ring(ring) for b, c in self.terms.items()})

    def apply_poly(self, p: Poly) -> Poly:
        """Action on a polynomial (s treated as a constant)."""
        p = p.to_ring(self.ring)
        out = self.ring.zero()
        for b, c in self.terms.items():
            q = p
            for name, k in zip(self.dvars, b):
                if k:
                    q = q.diff(name, k)
            out = out + c * q
        return out

    def symbol(self, cotangent: Optional[Ring] = None, order: Optional[int] = None) -> Poly:
        """Principal symbol (order-``order`` part, d_i -> xi_i) in the cotangent ring."""
        cot = cotangent or self.ring.cotangent()
        k = self.order if order is None else order
        xi_names = [n for v, n in zip(cot.variables, cot.names) if v.kind in (VarKind.COTANGENT, VarKind.ETA)]
        out = cot.zero()
        for b, c in self.terms.items():
            if sum(b) != k:
                continue
            mono = cot.one()
            for name, e in zip(xi_names, b):
                if e:
                    mono = mono * cot.gen(name) ** e
            out = out + c.to_ring(cot) * mono
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for b in sorted(self.terms, key=lambda b: (-sum(b), [-e for e in b])):
            c = self.terms[b]
            dpart = "*".join(
                (f"d{n}" if e == 1 else f"d{n}^{e}") for n, e in zip(self.dvars, b) if e
            )
            if not dpart:
                parts.append(str(c))
            elif c == 1:
                parts.append(dpart)
            elif c == -1:
                parts.append("-" + dpart)
            elif len(c.terms) == 1:
                parts.append(f"{c}*{dpart}")
            else:
                parts.append(f"({c})*{dpart}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"WeylOp({self})"


def multiply_ops(P: WeylOp, Q: WeylOp) -> WeylOp:
    """Normal-ordered product via d^b q = sum_k C(b,k) (d^k q) d^(b-k)."""
    if P.ring != Q.ring:
        raise ValueError("operator ring mismatch")
    ring = P.ring
    dv = P.dvars
    out: Dict[Tuple[int, ...], Poly] = {}
    deriv_cache: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Poly] = {}

    def dq(bq, k):
        key = (bq, k)
        if key not in deriv_cache:
            q = Q.terms[bq]
            for name, e in zip(dv, k):
                if e:
                    q = q.diff(name, e)
            deriv_cache[key] = q
        return deriv_cache[key]

    for bp, cp in P.terms.items():
        for bq in Q.terms:
            for k in product(*(range(e + 1) for e in bp)):
                q = dq(bq, k)
                if not q:
                    continue
                coeff = cp * q * _binom_multi(bp, k)
                b = tuple(x - y + z for x, y, z in zip(bp, k, bq))
                out[b] = out[b] + coeff if b in out else coeff
    return WeylOp(ring, out)


def commutator(P: WeylOp, Q: WeylOp) -> WeylOp:
    return P * Q - Q * P


# ---------------------------------------------------------------------------
# operator parsing

def parse_operator(text: str, ring: Ring) -> WeylOp:
    """Parse an operator; ``d<var>`` (or ``d<k>`` for the k-th base variable) is a derivative.

    Products are compositions, so ``d1*x1`` means the operator x1*d1 + 1.
    """
    toks = _tokenize(text)
    pos = 0
    base = ring.base_names

    def peek():
        return toks[pos]

    def take():
        nonlocal pos
        t = toks[pos]
        pos += 1
        return t

    def atom() -> WeylOp:
        t = take()
        if t[0] == "num":
            return WeylOp.const(ring, int(t[1]))
        if t[0] == "name":
            name = t[1]
            if name in ring:
                return WeylOp.from_poly(ring.gen(name))
            if name.startswith("d"):
                rest = name[1:]
                if rest in base:
                    return WeylOp.d(ring, rest)
                if rest.isdigit() and 1 <= int(rest) <= len(base):
                    return WeylOp.d(ring, base[int(rest) - 1])
            raise UnknownVariableError(f"unknown symbol {name!r}", t[2])
        if t == ("op", "(", t[2]):
            inner = expr()
            close = take()
            if close[:2] != ("op", ")"):
                raise ParseError("expected ')'", close[2])
            return inner
        raise ParseError(f"unexpected token {t[1]!r}" if t[1] else "unexpected end of input", t[2])

    def power() -> WeylOp:
        a = atom()
        if peek()[:2] == ("op", "^"):
            take()
            t = take()
            if t[0] != "num":
                raise ParseError("exponent must be a nonnegative integer", t[2])
            return a ** int(t[1])
        return a

    def unary() -> WeylOp:
        t = peek()
        if t[0] == "op" and t[1] in "+-":
            take()
            inner = unary()
            return -inner if t[1] == "-" else inner
        return power()

    def term() -> WeylOp:
        out = unary()
        while peek()[0] == "op" and peek()[1] in "*/":
            _, op, p = take()
            rhs = unary()
            if op == "*":
                out = out * rhs
            else:
                if rhs.order != 0 or len(rhs.terms) != 1:
                    raise ParseError("division only by nonzero constants", p)
                c = next(iter(rhs.terms.values()))
                if not c.is_constant() or c.is_zero():
                    raise ParseError("division only by nonzero constants", p)
                out = out * WeylOp.const(ring, 1 / c.constant_term())
        return out

    def expr() -> WeylOp:
        out = term()
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            rhs = term()
            out = out + rhs if op == "+" else out - rhs
        return out

    result = expr()
    if peek()[0] != "end":
        t = peek()
        raise ParseError(f"unexpected token {t[1]!r}", t[2])
    return result


# ---------------------------------------------------------------------------
# twisted elements

@dataclass(frozen=True)
class TwistedElem:
    """``numerator * f^s / (f^fexp * prod g_i^e_i)``.

    ``f`` may be the constant 1, in which case no s-power is present.
    """

    numerator: Poly
    f: Poly
    fexp: int = 0
    bases: Tuple[Tuple[Poly, int], ...] = ()

    def __post_init__(self):
        ring = self.numerator.ring
        if self.f.is_zero():
            raise ValueError("twisting polynomial must be nonzero")
        if self.fexp < 0:
            raise ValueError("exponent of f must be nonnegative")
        for g, e in self.bases:
            if g.is_zero() or e < 0:
                raise ValueError("denominator factors must be nonzero with nonnegative exponents")
        object.__setattr__(self, "f", self.f.to_ring(ring))
        object.__setattr__(self, "bases", tuple((g.to_ring(ring), e) for g, e in self.bases))

    @classmethod
    def power(cls, f: Poly, numerator: Optional[Poly] = None,
              bases: Iterable[Tuple[Poly, int]] = (), shift: int = 0) -> "TwistedElem":
        """``numerator * f^(s+shift) / prod g^e``, built in f's ring extended by s."""
        ring = with_s(f.ring)
        num = (numerator if numerator is not None else f.ring.one()).to_ring(ring)
        fr = f.to_ring(ring)
        fexp = 0
        if shift >= 0:
            num = num * fr ** shift
        else:
            fexp = -shift
        return cls(num, fr, fexp, tuple((g.to_ring(ring), e) for g, e in bases))

    @property
    def ring(self) -> Ring:
        return self.numerator.ring

    def denominator(self) -> Poly:
        d = self.f ** self.fexp
        for g, e in self.bases:
            d = d * g ** e
        return d

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def _exps(self) -> List[int]:
        return [self.fexp] + [e for _, e in self.bases]

    def aligned(self, fexp: int, exps: Sequence[int]) -> Poly:
        """Numerator over the larger denominator f^fexp * prod g_i^exps_i."""
        if fexp < self.fexp or any(a < b for a, b in zip(exps, (e for _, e in self.bases))):
            raise ValueError("can only align to a larger denominator")
        num = self.numerator * self.f ** (fexp - self.fexp)
        for (g, e), t in zip(self.bases, exps):
            if t > e:
                num = num * g ** (t - e)
        return num

    def _compatible(self, other: "TwistedElem") -> None:
        if self.f != other.f or [g for g, _ in self.bases] != [g for g, _ in other.bases]:
            raise ValueError("twisted elements over different f or denominators")
        if self.ring != other.ring:
            raise ValueError("twisted elements over different rings")

    def __add__(self, other: "TwistedElem") -> "TwistedElem":
        self._compatible(other)
        fe = max(self.fexp, other.fexp)
        ex = [max(a, b) for (_, a), (_, b) in zip(self.bases, other.bases)]
        num = self.aligned(fe, ex) + other.aligned(fe, ex)
        return TwistedElem(num, self.f, fe, tuple((g, e) for (g, _), e in zip(self.bases, ex)))

    def scale(self, c: Poly) -> "TwistedElem":
        return TwistedElem(self.numerator * c.to_ring(self.ring), self.f, self.fexp, self.bases)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TwistedElem):
            return NotImplemented
        try:
            self._compatible(other)
        except ValueError:
            # different presentations: compare N1*D2*f^(s) = N2*D1*f^(s) only if f agrees
            if self.f != other.f or self.ring != other.ring:
                return False
            return self.numerator * other.denominator() == other.numerator * self.denominator()
        fe = max(self.fexp, other.fexp)
        ex = [max(a, b) for (_, a), (_, b) in zip(self.bases, other.bases)]
        return self.aligned(fe, ex) == other.aligned(fe, ex)

    def __hash__(self):
        return hash((self.f, self.fexp))

    def simplify(self) -> "TwistedElem":
        """Cancel factors f and g_i that divide the numerator exactly."""
        num, fe = self.numerator, self.fexp
        if not self.f.is_constant():
            while fe > 0:
                q = num.exact_div(self.f)
                if q is None:
                    break
                num, fe = q, fe - 1
        bases = []
        for g, e in self.bases:
            while e > 0 and not g.is_constant():
                q = num.exact_div(g)
                if q is None:
                    break
                num, e = q, e - 1
            bases.append((g, e))
        return TwistedElem(num, self.f, fe, tuple(bases))

    def derivative(self, name: str) -> "TwistedElem":
        """d/dx_name by the Leibniz rule, with d(f^s) = s f_x f^s / f."""
        ring = self.ring
        N, f = self.numerator, self.f
        gs = [g for g, _ in self.bases]
        es = [e for _, e in self.bases]
        prod_g = ring.one()
        for g in gs:
            prod_g = prod_g * g
        s = ring.gen(S_NAME) if S_NAME in ring else ring.zero()
        fx = f.diff(name)
        new = N.diff(name) * f * prod_g
        if fx:
            new = new + N * (s - self.fexp) * fx * prod_g
        for i, (g, e) in enumerate(zip(gs, es)):
            gx = g.diff(name)
            if e and gx:
                rest = ring.one()
                for k, h in enumerate(gs):
                    if k != i:
                        rest = rest * h
                new = new - N * f * e * gx * rest
        return TwistedElem(new, f, self.fexp + 1, tuple((g, e + 1) for g, e in self.bases))

    def subs_s(self, value) -> "TwistedElem":
        if S_NAME not in self.ring:
            return self
        return TwistedElem(self.numerator.subs({S_NAME: value}), self.f, self.fexp, self.bases)

    def __str__(self) -> str:
        den = []
        if self.fexp:
            den.append(f"({self.f})^{self.fexp}" if self.fexp > 1 else f"({self.f})")
        for g, e in self.bases:
            if e:
                den.append(f"({g})^{e}" if e > 1 else f"({g})")
        twist = "" if self.f.is_constant() else f" * ({self.f})^s"
        text = f"({self.numerator}){twist}"
        return text + (" / " + "*".join(den) if den else "")


def apply_to_twisted(P: WeylOp, e: TwistedElem) -> TwistedElem:
    """Exact Leibniz action of ``P`` on ``e``; derivatives are memoised per exponent."""
    ring = e.ring
    if P.ring != ring:
        P = P.to_ring(ring)
    dv = P.dvars
    cache: Dict[Tuple[int, ...], TwistedElem] = {(0,) * len(dv): e}

    def deriv(b: Tuple[int, ...]) -> TwistedElem:
        if b in cache:
            return cache[b]
        i = next(k for k, v in enumerate(b) if v)
        prev = list(b)
        prev[i] -= 1
        out = deriv(tuple(prev)).derivative(dv[i])
        cache[b] = out
        return out

    total: Optional[TwistedElem] = None
    for b, c in sorted(P.terms.items()):
        term = deriv(b).scale(c)
        total = term if total is None else total + term
    if total is None:
        return TwistedElem(ring.zero(), e.f, e.fexp, e.bases)
    return total


def annihilates(P: WeylOp, e: TwistedElem, at_s=None) -> bool:
    """True iff P kills e (after substituting s := at_s when given)."""
    r = apply_to_twisted(P, e)
    if at_s is not None:
        r = r.subs_s(at_s)
    return r.is_zero()


# ---------------------------------------------------------------------------
# b-functions

def _poly_div_linear(coeffs: List[Fraction], r: Fraction) -> Tuple[List[Fraction], Fraction]:
    """Synthetic division of sum coeffs[i] s^i by (s - r)."""
    n = len(coeffs) - 1
    out = [Fraction(0)] * n
    acc = Fraction(0)
    for i in range(n, 0, -1):
        acc = coeffs[i] + acc * r
        out[i - 1] = acc
    rem = coeffs[0] + acc * r
    return out, rem


def _divisors(n: int) -> List[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def rational_roots(coeffs: Sequence[Fraction]) -> Tuple[List[Tuple[Fraction, int]], List[Fraction]]:
    """Rational roots with multiplicity of sum coeffs[i] s^i, and the leftover factor."""
    c = [Fraction(x) for x in coeffs]
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    roots: Dict[Fraction, int] = {}
    while len(c) > 1 and c[0] == 0:
        c.pop(0)
        roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1
    changed = True
    while changed and len(c) > 1:
        changed = False
        den = math.lcm(*(x.denominator for x in c))
        ints = [int(x * den) for x in c]
        g = math.gcd(*ints)
        ints = [x // g for x in ints]
        cands = set()
        for p in _divisors(ints[0]):
            for q in _divisors(ints[-1]):
                cands.add(Fraction(p, q))
                cands.add(Fraction(-p, q))
        for r in sorted(cands):
            q, rem = _poly_div_linear(c, r)
            if rem == 0:
                roots[r] = roots.get(r, 0) + 1
                c = q
                changed = True
                break
    lead = c[-1]
    rest = [x / lead for x in c]
    return sorted(roots.items()), rest


@dataclass(frozen=True)
class BFunction:
    """Monic polynomial in s given by rational roots (with multiplicity).

    ``residual`` holds the monic coefficients (low to high) of any factor
    without rational roots; it is ``(1,)`` when b splits over Q.
    """

    roots: Tuple[Tuple[Fraction, int], ...]
    residual: Tuple[Fraction, ...] = (Fraction(1),)

    @classmethod
    def from_roots(cls, roots: Iterable) -> "BFunction":
        """From a multiset of roots (iterable of values, or of (value, multiplicity))."""
        counts: Dict[Fraction, int] = {}
        for r in roots:
            if isinstance(r, tuple):
                v, m = Fraction(r[0]), int(r[1])
            else:
                v, m = Fraction(r), 1
            counts[v] = counts.get(v, 0) + m
        return cls(tuple(sorted((k, v) for k, v in counts.items() if v > 0)))

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[Fraction]) -> "BFunction":
        roots, rest = rational_roots(coeffs)
        return cls(tuple(roots), tuple(rest))

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.roots) + len(self.residual) - 1

    @property
    def split(self) -> bool:
        return len(self.residual) == 1

    def root_set(self) -> frozenset:
        return frozenset(r for r, _ in self.roots)

    def integral_roots(self) -> List[int]:
        return sorted(int(r) for r, _ in self.roots if r.denominator == 1)

    def coefficients(self) -> List[Fraction]:
        c = list(self.residual)
        for r, m in self.roots:
            for _ in range(m):
                nxt = [Fraction(0)] * (len(c) + 1)
                for i, v in enumerate(c):
                    nxt[i + 1] += v
                    nxt[i] -= r * v
                c = nxt
        return c

    def as_poly(self, ring: Ring) -> Poly:
        s = ring.gen(S_NAME)
        out = ring.zero()
        for i, v in enumerate(self.coefficients()):
            out = out + v * s ** i
        return out

    def __str__(self) -> str:
        parts = []
        for r, m in sorted(self.roots, key=lambda t: -t[0]):
            lin = "s" if r == 0 else (f"s+{-r}" if r < 0 else f"s-{r}")
            parts.append(f"({lin})" + (f"^{m}" if m > 1 else ""))
        if not self.split:
            terms = [f"{c}*s^{i}" for i, c in enumerate(self.residual) if c]
            parts.append("[" + " + ".join(terms) + "]")
        return "".join(parts) or "1"


@dataclass
class FunctionalEquation:
    """``b(s) * m f^s = P(s) * m f^(s+1)`` for m = numerator / prod g^e."""

    b: BFunction
    operator: WeylOp
    f: Poly
    numerator: Poly
    bases: Tuple[Tuple[Poly, int], ...] = ()

    def verify(self) -> bool:
        lhs_elem = TwistedElem.power(self.f, self.numerator, self.bases)
        rhs_elem = TwistedElem.power(self.f, self.numerator, self.bases, shift=1)
        ring = lhs_elem.ring
        lhs = lhs_elem.scale(self.b.as_poly(ring))
        rhs = apply_to_twisted(self.operator.to_ring(ring), rhs_elem)
        return lhs == rhs


class NotFound(Exception):
    """No functional equation exists within the given bounds (no claim beyond them)."""


def _monomials(nvars: int, maxdeg: int) -> List[Tuple[int, ...]]:
    out = []
    for d in range(maxdeg + 1):
        for combo in product(range(d + 1), repeat=nvars):
            if sum(combo) == d:
                out.append(combo)
    return out


def solve_functional_equation(f: Poly, numerator: Optional[Poly] = None,
                              bases: Sequence[Tuple[Poly, int]] = (),
                              max_order: int = 3, max_coeff_deg: int = 2,
                              max_bdeg: int = 3) -> FunctionalEquation:
    """Bounded search for a Bernstein functional equation of m*f^s.

    Unknowns are the coefficients of P (d-order <= N, x-degree <= max_coeff_deg,
    s-degree <= N) and of a monic b of degree d.  The b-degree is tried
    smallest first, so the returned b has minimal degree within the bounds.
    Raises :class:`NotFound` otherwise.
    """
    if f.is_zero() or f.constant_term() != 0:
        raise ValueError("f must be nonzero and vanish at the origin")
    base_ring = f.ring.sub(f.ring.base_names)
    f = f.to_ring(base_ring)
    ring = with_s(base_ring)
    numerator = (numerator if numerator is not None else base_ring.one()).to_ring(ring)
    bases = tuple((g.to_ring(ring), e) for g, e in bases)
    dv = base_ring.base_names
    n = len(dv)
    budget = Budget()
    e1 = TwistedElem.power(f, numerator, bases, shift=1)
    N = max_order
    # all derivatives of m f^(s+1) up to order N, aligned to one denominator
    derivs: Dict[Tuple[int, ...], TwistedElem] = {(0,) * n: e1}
    for b in sorted(_monomials(n, N), key=sum):
        if sum(b) == 0:
            continue
        i = next(k for k, v in enumerate(b) if v)
        prev = list(b)
        prev[i] -= 1
        derivs[b] = derivs[tuple(prev)].derivative(dv[i])
        budget.tick()
    fe = e1.fexp + N
    ex = [e + N for _, e in e1.bases]
    aligned = {b: t.aligned(fe, ex) for b, t in derivs.items()}
    target = TwistedElem.power(f, numerator, bases).aligned(fe, ex)
    s = ring.gen(S_NAME)
    xmons = _monomials(n, max_coeff_deg)
    xidx = [ring.index(v) for v in dv]

    def xpoly(a):
        m = [0] * ring.nvars
        for i, k in zip(xidx, a):
            m[i] = k
        return ring.monomial(m)

    for d in range(1, max_bdeg + 1):
        for order in range(1, N + 1):
            # column order favours small x-degree and s-degree, then high d-order
            cols: List[Tuple[str, tuple]] = [("b", (k,)) for k in range(d)]
            ops = []
            for a in xmons:
                for i in range(order + 1):
                    for b in _monomials(n, order):
                        ops.append((sum(a), i, -sum(b), a, b))
            ops.sort()
            cols += [("p", (a, b, i)) for (_, i, _, a, b) in ops]
            contrib: List[Poly] = []
            for kind, data in cols:
                if kind == "b":
                    contrib.append(-(s ** data[0]) * target)
                else:
                    a, b, i = data
                    contrib.append(xpoly(a) * s ** i * aligned[b])
            rows: Dict[Monomial, Dict[int, Fraction]] = {}
            for j, p in enumerate(contrib):
                for m, c in p.terms.items():
                    rows.setdefault(m, {})[j] = c
            rhs_poly = s ** d * target
            for m in rhs_poly.terms:
                rows.setdefault(m, {})
            keys = sorted(rows)
            budget.tick(len(keys) * len(cols) // 64 + 1)
            sol = linalg.solve([rows[m] for m in keys], [rhs_poly.coefficient(m) for m in keys], len(cols))
            if sol is None:
                continue
            coeffs = [sol[k] for k in range(d)] + [Fraction(1)]
            bfun = BFunction.from_coefficients(coeffs)
            P = WeylOp(ring, {})
            for (kind, data), v in zip(cols, sol):
                if kind == "p" and v:
                    a, b, i = data
                    P = P + WeylOp(ring, {b: v * xpoly(a) * s ** i})
            eq = FunctionalEquation(bfun, P, f.to_ring(ring), numerator, bases)
            if not eq.verify():  # pragma: no cover - linear algebra is exact
                raise RuntimeError("functional equation failed re-verification")
            return eq
    raise NotFound(f"no functional equation with order <= {max_order}, "
                   f"coefficient degree <= {max_coeff_deg}, b-degree <= {max_bdeg}")


def left_ideal_combination(target: WeylOp, generators: Sequence[WeylOp],
                           max_order: int = 2, max_coeff_deg: int = 3) -> Optional[List[WeylOp]]:
    """Operators c_i with sum c_i * G_i == target, searched with ord c_i <= max_order
    and x-degree <= max_coeff_deg; None if no such combination exists in those bounds.

    Only s-free operators are supported.
    """
    ring = target.ring
    gens = [G.to_ring(ring) for G in generators]
    n = len(ring.base_names)
    xidx = [ring.index(v) for v in ring.base_names]

    def xmono(a):
        m = [0] * ring.nvars
        for i, k in zip(xidx, a):
            m[i] = k
        return ring.monomial(m)

    cols = [(i, a, b) for i in range(len(gens))
            for a in _monomials(n, max_coeff_deg) for b in _monomials(n, max_order)]
    budget = Budget()
    prods = []
    for i, a, b in cols:
        prods.append((WeylOp(ring, {b: xmono(a)}) * gens[i]).coefficient_map())
        budget.tick()
    tgt = target.coefficient_map()
    keys = sorted(set(tgt).union(*prods))
    rows = [{j: c[k] for j, c in enumerate(prods) if k in c} for k in keys]
    sol = linalg.solve(rows, [tgt.get(k, Fraction(0)) for k in keys], len(cols))
    if sol is None:
        return None
    out = [WeylOp(ring, {}) for _ in gens]
    for (i, a, b), v in zip(cols, sol):
        if v:
            out[i] = out[i] + WeylOp(ring, {b: v * xmono(a)})
    return out
