"""Exact checks of D-module conditions (B, A(1/h), H, L, W, Koszul freeness) for germs of hypersurfaces."""

__version__ = "0.1.0"

from .bernstein import bs_monomial, bs_quasihomogeneous, decide_B, milnor_data, rescale_roots  # noqa: E402
from .conditions import ConditionLattice, decide_A_inv, propagate_implications  # noqa: E402
from .groebner import Ideal, MonomialOrder, resource_limits  # noqa: E402
from .symbolic import Ring, parse_factors, parse_poly  # noqa: E402
from .verdict import Status, Verdict  # noqa: E402
from .weyl import WeylOp, solve_functional_equation  # noqa: E402

__all__ = [
    "ConditionLattice", "Ideal", "MonomialOrder", "Ring", "Status", "Verdict", "WeylOp",
    "bs_monomial", "bs_quasihomogeneous", "decide_A_inv", "decide_B", "milnor_data",
    "parse_factors", "parse_poly", "propagate_implications", "rescale_roots", "resource_limits",
    "solve_functional_equation",
]
