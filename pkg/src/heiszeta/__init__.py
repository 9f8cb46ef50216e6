"""Exact local normal zeta functions of Heisenberg groups over compact DVRs.

The library computes the bivariate rational functions W(X, Y) with
zeta_{H(R)}(s) = W(p, p^{-s}) for every finite extension R of Z_p, checks the
closed forms and the functional equation symbolically, and cross-validates
every Dirichlet coefficient against brute-force ideal counting.
"""

from .coxeter import Permutation
from .errors import CapacityError, IllFormedSeriesError, PrecisionError
from .local_ring import LocalRingSpec, make_ring_spec
from .polyrat import (
    GeometricFactor,
    LaurentPoly,
    ProductRationalFunction,
    gaussian_binomial,
    gaussian_multinomial,
    rf_equal,
    rf_invert_variables,
    series_Y,
)
from .zeta_formulas import (
    ExtensionShape,
    check_functional_equation,
    zeta_free_abelian,
    zeta_inert,
    zeta_main,
    zeta_snf,
    zeta_totally_ramified,
)

__all__ = [
    "CapacityError",
    "ExtensionShape",
    "GeometricFactor",
    "IllFormedSeriesError",
    "LaurentPoly",
    "LocalRingSpec",
    "Permutation",
    "PrecisionError",
    "ProductRationalFunction",
    "check_functional_equation",
    "gaussian_binomial",
    "gaussian_multinomial",
    "make_ring_spec",
    "rf_equal",
    "rf_invert_variables",
    "series_Y",
    "zeta_free_abelian",
    "zeta_inert",
    "zeta_main",
    "zeta_snf",
    "zeta_totally_ramified",
]

__version__ = "0.1.0"
