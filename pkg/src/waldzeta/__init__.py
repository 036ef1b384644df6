"""Exact local zeta integrals for restrictions of GL(2) Eisenstein series to a torus.

Local Waldspurger-model values, the local integrals they feed, the
archimedean factor and the global product formula.
"""

from .arith import CoeffElem, Poly, PowerSeries, RatFunc, ratfunc_reduce, root, series_expand
from .errors import ModelNonexistence, ScopeError, ValidationError, WaldzetaError
from .local_data import InducedPair, LocalField, LocalSetup, SteinbergTwist, TorusChar, UnramifiedPS

__version__ = "0.1.0"

__all__ = [
    "CoeffElem",
    "Poly",
    "PowerSeries",
    "RatFunc",
    "ratfunc_reduce",
    "root",
    "series_expand",
    "ModelNonexistence",
    "ScopeError",
    "ValidationError",
    "WaldzetaError",
    "InducedPair",
    "LocalField",
    "LocalSetup",
    "SteinbergTwist",
    "TorusChar",
    "UnramifiedPS",
]
