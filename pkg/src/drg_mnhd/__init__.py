"""Exact certification of monotone normalized heat diffusion (MNHD) on distance-regular graphs.

Exact side: classical-parameter and antipodal diameter-3 families, handled in
rational and real-quadratic arithmetic.  Numeric side: a Jacobi-based spectral
oracle for concrete graphs, used to cross-check the exact results.
"""
from .analysis import certify_array, certify_classical, delta_closed_form, delta_drg
from .antipodal import AntipodalParams, certify_antipodal
from .params import ClassicalParams, IntersectionArray, intersection_array, validate
from .quadratic import QuadraticNumber

__version__ = "0.1.0"

__all__ = [
    "AntipodalParams",
    "ClassicalParams",
    "IntersectionArray",
    "QuadraticNumber",
    "certify_antipodal",
    "certify_array",
    "certify_classical",
    "delta_closed_form",
    "delta_drg",
    "intersection_array",
    "validate",
]
