"""Exact multivariate polynomials over Q in typed variables.

A :class:`Ring` is an ordered tuple of :class:`Var`; a :class:`Poly` is a
sparse map from dense exponent tuples to :class:`fractions.Fraction`.
Everything here is immutable once built.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from . import linalg

Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]


class VarKind(str, Enum):
    BASE = "base"
    COTANGENT = "cotangent"
    ETA = "eta"
    PARAM = "param"


@dataclass(frozen=True)
class Var:
    name: str
    kind: VarKind = VarKind.BASE
    index: int = 0


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*$")


class Ring:
    """Ordered collection of variables; polynomials live in exactly one ring."""

    __slots__ = ("variables", "names", "_index", "_hash")

    def __init__(self, variables: Iterable[Var]):
        self.variables: Tuple[Var, ...] = tuple(variables)
        self.names: Tuple[str, ...] = tuple(v.name for v in self.variables)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        for n in self.names:
            if not _NAME_RE.match(n):
                raise ValueError(f"invalid variable name {n!r}")
        keyed = [(v.kind, v.index) for v in self.variables if v.index]
        if len(set(keyed)) != len(keyed):
            raise ValueError("(kind, index) pairs must be unique")
        self._index = {n: i for i, n in enumerate(self.names)}
        self._hash = hash(self.variables)

    @classmethod
    def from_names(cls, names: Union[str, Sequence[str]], kind: VarKind = VarKind.BASE) -> "Ring":
        if isinstance(names, str):
            names = [n.strip() for n in names.split(",") if n.strip()]
        return cls(Var(n, kind, i + 1) for i, n in enumerate(names))

    def __eq__(self, other) -> bool:
        return isinstance(other, Ring) and self.variables == other.variables

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Ring({', '.join(self.names)})"

    def __len__(self) -> int:
        return len(self.variables)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"variable {name!r} not in {self!r}") from None

    def names_of(self, kind: VarKind) -> Tuple[str, ...]:
        return tuple(v.name for v in self.variables if v.kind == kind)

    @property
    def base_names(self) -> Tuple[str, ...]:
        return self.names_of(VarKind.BASE)

    def extend(self, variables: Iterable[Var]) -> "Ring":
        return Ring(self.variables + tuple(variables))

    def sub(self, names: Iterable[str]) -> "Ring":
        keep = set(names)
        return Ring(v for v in self.variables if v.name in keep)

    def with_params(self, *names: str) -> "Ring":
        start = sum(1 for v in self.variables if v.kind == VarKind.PARAM)
        return self.extend(Var(n, VarKind.PARAM, start + i + 1) for i, n in enumerate(names))

    def cotangent(self) -> "Ring":
        """Append one cotangent variable per base variable (x_i -> xi_i, z_i -> eta_i)."""
        extra = [cotangent_var(v) for v in self.variables if v.kind == VarKind.BASE]
        return self.extend(extra)

    def gen(self, name: str) -> "Poly":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Poly(self, {tuple(e): Fraction(1)})

    def gens(self) -> List["Poly"]:
        return [self.gen(n) for n in self.names]

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c: Scalar) -> "Poly":
        c = Fraction(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exps: Sequence[int], coeff: Scalar = 1) -> "Poly":
        c = Fraction(coeff)
        return Poly(self, {tuple(exps): c} if c else {})


def cotangent_name(name: str) -> Tuple[str, VarKind]:
    m = re.fullmatch(r"([A-Za-z]+)(\d+)", name)
    if m and m.group(1) == "z":
        return f"eta{m.group(2)}", VarKind.ETA
    if m and m.group(1) == "x":
        return f"xi{m.group(2)}", VarKind.COTANGENT
    return f"xi_{name}", VarKind.COTANGENT


def cotangent_var(v: Var) -> Var:
    name, kind = cotangent_name(v.name)
    return Var(name, kind, v.index)


def _add_mono(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


class Poly:
    """Sparse polynomial with rational coefficients.  Treat as immutable."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Optional[Mapping[Monomial, Scalar]] = None, *, _trusted: bool = False):
        self.ring = ring
        if _trusted:
            self.terms: Dict[Monomial, Fraction] = terms  # type: ignore[assignment]
        else:
            t = {}
            n = ring.nvars
            for m, c in (terms or {}).items():
                if len(m) != n:
                    raise ValueError(f"exponent {m} does not match {ring!r}")
                c = Fraction(c)
                if c:
                    t[tuple(m)] = c
            self.terms = t
        self._hash = None

    # -- construction helpers -------------------------------------------
    def _new(self, terms: Dict[Monomial, Fraction]) -> "Poly":
        return Poly(self.ring, terms, _trusted=True)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)) or isinstance(other, Poly):
            o = self._coerce(other)
        else:
            return NotImplemented
        t = dict(self.terms)
        for m, c in o.terms.items():
            v = t.get(m, 0) + c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return self._new(t)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return self._new({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, (int, Fraction, Poly)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return self.ring.zero()
            return self._new({m: v * c for m, v in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        o = self._coerce(other)
        if len(self.terms) > len(o.terms):
            a, b = o, self
        else:
            a, b = self, o
        t: Dict[Monomial, Fraction] = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                m = _add_mono(m1, m2)
                v = t.get(m, 0) + c1 * c2
                if v:
                    t[m] = v
                else:
                    del t[m]
        return self._new(t)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, Poly) and other.is_constant() and other:
            return self * (1 / other.constant_term())
        q = self.exact_div(other)
        if q is None:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def __pow__(self, k: int) -> "Poly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison -----------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- inspection -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def min_degree(self) -> int:
        """Order of vanishing at the origin (-1 for the zero polynomial)."""
        return min((sum(m) for m in self.terms), default=-1)

    def degree(self, name: str) -> int:
        i = self.ring.index(name)
        return max((m[i] for m in self.terms), default=-1)

    def support(self) -> Tuple[str, ...]:
        """Names of variables actually occurring, in ring order."""
        used = [False] * self.ring.nvars
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used[i] = True
        return tuple(n for n, u in zip(self.ring.names, used) if u)

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def homogeneous_part(self, degree: int) -> "Poly":
        return self._new({m: c for m, c in self.terms.items() if sum(m) == degree})

    def leading_form(self) -> "Poly":
        """Lowest-degree homogeneous part (the initial form at 0)."""
        return self.homogeneous_part(self.min_degree())

    # -- calculus & substitution ---------------------------------------
    def diff(self, name: str, k: int = 1) -> "Poly":
        i = self.ring.index(name)
        t = {}
        for m, c in self.terms.items():
            e = m[i]
            if e < k:
                continue
            f = 1
            for j in range(k):
                f *= e - j
            mm = m[:i] + (e - k,) + m[i + 1:]
            t[mm] = c * f
        return self._new(t)

    def subs(self, mapping: Mapping[str, Union["Poly", Scalar]], ring: Optional[Ring] = None) -> "Poly":
        """Substitute variables by polynomials (in ``ring``, default: own ring).

        Unmapped variables are kept and must exist in the target ring.
        """
        target = ring or self.ring
        images: List[Poly] = []
        for n in self.ring.names:
            if n in mapping:
                v = mapping[n]
                images.append(v if isinstance(v, Poly) else target.const(v))
            else:
                images.append(target.gen(n))
        for im in images:
            if im.ring != target:
                raise ValueError("substitution images must live in the target ring")
        cache: Dict[Tuple[int, int], Poly] = {}

        def power(i: int, e: int) -> Poly:
            key = (i, e)
            if key not in cache:
                cache[key] = images[i] ** e
            return cache[key]

        out = target.zero()
        acc: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            term = target.const(c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            for mm, cc in term.terms.items():
                v = acc.get(mm, 0) + cc
                if v:
                    acc[mm] = v
                else:
                    del acc[mm]
        out = Poly(target, acc, _trusted=True)
        return out

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        idx = [(i, Fraction(point[n])) for i, n in enumerate(self.ring.names) if n in point]
        missing = [n for n in self.support() if n not in point]
        if missing:
            raise KeyError(f"no value for {missing}")
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for i, x in idx:
                if m[i]:
                    v *= x ** m[i]
            total += v
        return total

    def to_ring(self, ring: Ring) -> "Poly":
        """Re-embed into ``ring`` by variable name."""
        if ring == self.ring:
            return self
        pos = []
        for i, n in enumerate(self.ring.names):
            pos.append(ring.index(n) if n in ring else None)
        t = {}
        for m, c in self.terms.items():
            e = [0] * ring.nvars
            for i, k in enumerate(m):
                if k:
                    if pos[i] is None:
                        raise ValueError(f"variable {self.ring.names[i]} missing from {ring!r}")
                    e[pos[i]] = k
            t[tuple(e)] = c
        return Poly(ring, t, _trusted=True)

    def exact_div(self, other: "Poly") -> Optional["Poly"]:
        """Quotient when ``other`` divides ``self`` exactly, else None."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lm_o = max(other.terms)
        lc_o = other.terms[lm_o]
        rem = dict(self.terms)
        q: Dict[Monomial, Fraction] = {}
        while rem:
            lm = max(rem)
            if any(a < b for a, b in zip(lm, lm_o)):
                return None
            shift = tuple(a - b for a, b in zip(lm, lm_o))
            c = rem[lm] / lc_o
            q[shift] = c
            for m, v in other.terms.items():
                mm = _add_mono(m, shift)
                nv = rem.get(mm, 0) - c * v
                if nv:
                    rem[mm] = nv
                else:
                    rem.pop(mm, None)
        return self._new(q)

    def primitive(self) -> "Poly":
        """Scale so coefficients are coprime integers with positive leading term (lex)."""
        if not self.terms:
            return self
        from math import gcd

        den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in self.terms.values()), 1)
        nums = [int(c * den) for c in self.terms.values()]
        g = reduce(gcd, nums)
        s = Fraction(den, g)
        if self.terms[max(self.terms)] < 0:
            s = -s
        return self * s

    # -- printing -------------------------------------------------------
    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        # graded lex, descending; deterministic canonical order for printing
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, (m, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(self.ring.names, m) if e
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if k == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self})"


# ---------------------------------------------------------------------------
# parsing

class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariableError(ParseError):
    pass


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("num", m.group(1), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            tokens.append(("op", op, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, op: str):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise ParseError(f"expected {op!r}", t[2])

    def finish(self):
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected token {t[1]!r}", t[2])

    # expr := term (('+'|'-') term)*
    def expr(self) -> Poly:
        out = self.term_factors_poly()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term_factors_poly()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term_factors_poly(self) -> Poly:
        return reduce(lambda a, b: a * b, self.term_factors(), self.ring.one())

    # term := unary (('*'|'/') unary)*  -- returns the multiplicative factors
    def term_factors(self) -> List[Poly]:
        factors = self.unary_factors()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            _, op, pos = self.take()
            rhs = self.unary_factors()
            if op == "*":
                factors.extend(rhs)
            else:
                d = reduce(lambda a, b: a * b, rhs, self.ring.one())
                if not d.is_constant() or d.is_zero():
                    raise ParseError("division only by nonzero constants", pos)
                factors.append(self.ring.const(1 / d.constant_term()))
        return factors

    def unary_factors(self) -> List[Poly]:
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            inner = self.unary_factors()
            return ([self.ring.const(-1)] if t[1] == "-" else []) + inner
        return self.power()

    # power := atom ('^' int)?
    def power(self) -> List[Poly]:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            t = self.take()
            if t[0] != "num":
                raise ParseError("exponent must be a nonnegative integer", t[2])
            k = int(t[1])
            return [base] * k if k else [self.ring.one()]
        return [base]

    def atom(self) -> Poly:
        t = self.take()
        if t[0] == "num":
            return self.ring.const(int(t[1]))
        if t[0] == "name":
            if t[1] not in self.ring:
                raise UnknownVariableError(f"unknown variable {t[1]!r}", t[2])
            return self.ring.gen(t[1])
        if t[0] == "op" and t[1] == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {t[1]!r}" if t[1] else "unexpected end of input", t[2])


def parse_poly(text: str, ring: Ring) -> Poly:
    """Parse an expression over ``ring``; grammar: ints, a/b, vars, + - * ^ ( )."""
    p = _Parser(text, ring)
    out = p.expr()
    p.finish()
    return out


def parse_factors(text: str, ring: Ring) -> List[Poly]:
    """Top-level multiplicative factors of a product expression.

    ``"(x1-x2*x3)*(x1^3+x2^4)"`` gives two factors; a sum gives one.  Constant
    factors are merged into a single leading constant (omitted when 1).
    """
    p = _Parser(text, ring)
    factors = p.term_factors()
    if p.peek()[0] != "end":
        p.i = 0
        whole = p.expr()
        p.finish()
        return [whole]
    const = Fraction(1)
    out = []
    for f in factors:
        if f.is_constant():
            const *= f.constant_term()
        else:
            out.append(f)
    if const != 1 or not out:
        out.insert(0, ring.const(const))
    return out


# ---------------------------------------------------------------------------
# Jacobians and minors

Matrix = List[List[Poly]]


def jacobian(morphism: Sequence[Poly], variables: Optional[Sequence[str]] = None) -> Matrix:
    """Entry (i, j) is the derivative of component i in variable j."""
    if not morphism:
        return []
    ring = morphism[0].ring
    names = list(variables) if variables is not None else list(ring.base_names)
    return [[h.diff(n) for n in names] for h in morphism]


def minor_det(matrix: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Poly:
    """Determinant of the submatrix on ``rows`` x ``cols`` by cofactor expansion."""
    if len(rows) != len(cols):
        raise ValueError("minor needs as many rows as columns")
    nr = len(matrix)
    nc = len(matrix[0]) if nr else 0
    for r in rows:
        if not 0 <= r < nr:
            raise IndexError(f"row {r} out of range")
    for c in cols:
        if not 0 <= c < nc:
            raise IndexError(f"column {c} out of range")
    if not rows:
        raise ValueError("empty minor")
    ring = matrix[0][0].ring
    memo: Dict[Tuple[int, Tuple[int, ...]], Poly] = {}

    def det(k: int, avail: Tuple[int, ...]) -> Poly:
        # expand along row rows[k] over the remaining columns
        if k == len(rows):
            return ring.one()
        key = (k, avail)
        if key in memo:
            return memo[key]
        acc = ring.zero()
        for j, c in enumerate(avail):
            entry = matrix[rows[k]][c]
            if entry.is_zero():
                continue
            sub = det(k + 1, avail[:j] + avail[j + 1:])
            term = entry * sub
            acc = acc - term if j % 2 else acc + term
        memo[key] = acc
        return acc

    return det(0, tuple(cols))


def det(matrix: Matrix) -> Poly:
    n = len(matrix)
    return minor_det(matrix, range(n), range(n))


# ---------------------------------------------------------------------------
# weighted homogeneity

@dataclass(frozen=True)
class WeightSystem:
    """Strictly positive weights on base variables and a degree."""

    variables: Tuple[str, ...]
    alpha: Tuple[Fraction, ...]
    degree: Fraction = Fraction(1)

    def __post_init__(self):
        if len(self.variables) != len(self.alpha):
            raise ValueError("one weight per variable")
        if any(a <= 0 for a in self.alpha) or self.degree <= 0:
            raise ValueError("weights and degree must be strictly positive")

    @property
    def total(self) -> Fraction:
        return sum(self.alpha, Fraction(0))

    def weight_of(self, name: str) -> Fraction:
        return self.alpha[self.variables.index(name)]

    def monomial_weight(self, ring: Ring, exps: Sequence[int]) -> Fraction:
        w = Fraction(0)
        for n, e in zip(ring.names, exps):
            if e:
                if n not in self.variables:
                    raise KeyError(f"no weight for {n}")
                w += self.weight_of(n) * e
        return w

    def degrees(self, f: Poly) -> set:
        return {self.monomial_weight(f.ring, m) for m in f.terms}

    def is_homogeneous(self, f: Poly) -> bool:
        return len(self.degrees(f)) <= 1

    def degree_of(self, f: Poly) -> Fraction:
        ds = self.degrees(f)
        if len(ds) != 1:
            raise ValueError(f"{f} is not weighted homogeneous for {self}")
        return ds.pop()

    def as_dict(self) -> Dict[str, str]:
        return {n: str(a) for n, a in zip(self.variables, self.alpha)}


def detect_weights(f: Poly, variables: Optional[Sequence[str]] = None) -> Optional[WeightSystem]:
    """Positive rational weights making ``f`` weighted homogeneous of degree 1.

    Works in the given coordinates.  When the weights are not unique, the
    result is the centroid of the vertices of the (closed) solution polytope,
    which lies in its relative interior.  Variables absent from ``f`` get 1.
    """
    if f.is_zero():
        raise ValueError("detect_weights needs a nonzero polynomial")
    names = list(variables) if variables is not None else list(f.ring.base_names)
    bad = [n for n in f.support() if n not in names]
    if bad:
        raise ValueError(f"non-base variables in input: {bad}")
    idx = [f.ring.index(n) for n in names]
    monos = [tuple(m[i] for i in idx) for m in f.terms]
    supp = [k for k in range(len(names)) if any(m[k] for m in monos)]
    if not supp:
        return None
    rows = [{j: Fraction(m[k]) for j, k in enumerate(supp) if m[k]} for m in monos]
    ones = [Fraction(1)] * len(rows)
    if linalg.solve(rows, ones, len(supp)) is None:
        return None
    r = linalg.rank(rows)
    vertices = set()
    for basis in itertools.combinations(range(len(supp)), r):
        sub = [{basis.index(c): v for c, v in row.items() if c in basis} for row in rows]
        if linalg.rank(sub) < r:
            continue
        sol = linalg.solve(sub, ones, r)
        if sol is None or any(v < 0 for v in sol):
            continue
        full = [Fraction(0)] * len(supp)
        for j, c in enumerate(basis):
            full[c] = sol[j]
        vertices.add(tuple(full))
    if not vertices:
        return None
    nv = len(vertices)
    centre = [sum(v[k] for v in vertices) / nv for k in range(len(supp))]
    if any(c <= 0 for c in centre):
        return None
    alpha = [Fraction(1)] * len(names)
    for j, k in enumerate(supp):
        alpha[k] = centre[j]
    return WeightSystem(tuple(names), tuple(alpha), Fraction(1))
