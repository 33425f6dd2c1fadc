"""Small random polynomials for property tests."""
from fractions import Fraction

from hypothesis import strategies as st

from dcond.symbolic import Poly


def polys(r, max_deg=2, max_terms=4, coeff=5):
    n = len(r.base_names)
    mono = st.tuples(*[st.integers(0, max_deg) for _ in range(n)]).filter(lambda m: sum(m) <= max_deg)
    coef = st.integers(-coeff, coeff).filter(bool).map(Fraction)
    return st.dictionaries(mono, coef, max_size=max_terms).map(lambda d: Poly(r, d))


def nonzero_polys(r, **kw):
    return polys(r, **kw).filter(lambda p: not p.is_zero())
