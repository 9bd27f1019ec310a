"""Bicycle (sub-Riemannian) geodesics in R^3.

Thin Python layer over the C++ core: Hamiltonian integration of the
geodesic equations, Jacobi-elliptic closed forms, screw-motion monodromy,
bicycle correspondence, and a shooting boundary-value solver.
"""

from ._core import (  # noqa: F401
    BikegeoError,
    check,
    closed_form,
    elliptic,
    flip,
    geodesic_params,
    kappa_sq_closed,
    kirchhoff_params,
    monodromy,
    ranges,
    shoot,
    simulate,
    __version__,
)

__all__ = [
    "BikegeoError",
    "check",
    "closed_form",
    "elliptic",
    "flip",
    "geodesic_params",
    "kappa_sq_closed",
    "kirchhoff_params",
    "monodromy",
    "ranges",
    "shoot",
    "simulate",
]
