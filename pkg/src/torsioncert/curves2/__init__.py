"""Elliptic curves over F_{2^k}: Weierstrass models, Tate normal form and Y_1(73)(F_64)."""

from .weierstrass import (
    WeierstrassCurve,
    WeierstrassPoint,
    hasse_holds,
    point_order,
    smooth_curve_orders,
    y1_nonempty_bruteforce,
)
from .tate import TateCurve, j_invariant, tate_discriminant, tate_normalize
from .x173 import (
    X173Report,
    cycle_type,
    diamond_permutation,
    find_73_parameters,
    frobenius_orbits,
    modulus_independent,
    report_73,
    sextic_roots,
)

__all__ = [
    "WeierstrassCurve",
    "WeierstrassPoint",
    "hasse_holds",
    "point_order",
    "smooth_curve_orders",
    "y1_nonempty_bruteforce",
    "TateCurve",
    "j_invariant",
    "tate_discriminant",
    "tate_normalize",
    "X173Report",
    "cycle_type",
    "diamond_permutation",
    "find_73_parameters",
    "frobenius_orbits",
    "modulus_independent",
    "report_73",
    "sextic_roots",
]
