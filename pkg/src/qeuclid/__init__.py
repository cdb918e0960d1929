"""Exact computer algebra for q-deformed three-dimensional Euclidean space.

Commutative polynomials carry a star product that realises the quantum-space
relations; on top of it sit q-derivatives, braided translations and
inversions, q-exponentials and exact Jackson integrals on q-lattices.
"""

from .braided_maps import antipode_residual, invert, invert_bar, translate, translate_bar, uhat
from .derivative_actions import d_left, d_left_bar, d_right, d_right_bar, d_right_paired, momentum_apply
from .qexponential import exp_inverse, exp_px, exp_xp
from .quantum_algebra import METRIC, NCPoly, nc_mul, normal_order, unweyl, weyl
from .scalars import LAMBDA, LAMBDA_PLUS, Gaussian, QScalar
from .series import CPoly, conjugate_series, var
from .star_product import star
from .text import parse_cpoly, parse_ncpoly, parse_scalar, render_cpoly

__version__ = "0.1.0"

__all__ = [
    "CPoly", "Gaussian", "LAMBDA", "LAMBDA_PLUS", "METRIC", "NCPoly", "QScalar",
    "antipode_residual", "conjugate_series", "d_left", "d_left_bar", "d_right", "d_right_bar",
    "d_right_paired", "exp_inverse", "exp_px", "exp_xp", "invert", "invert_bar", "momentum_apply",
    "nc_mul", "normal_order", "parse_cpoly", "parse_ncpoly", "parse_scalar", "render_cpoly", "star",
    "translate", "translate_bar", "uhat", "unweyl", "var", "weyl",
]
