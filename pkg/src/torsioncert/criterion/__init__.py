"""Winding-quotient annihilators, torsion killers and formal-immersion checks."""

from .hecke_lattice import (
    HeckeLattice,
    Level,
    WindingAnnihilator,
    WindingData,
    build_hecke_lattice,
    winding_annihilator,
)
from .killers import t1_candidates, t1_from_polynomial, t2_element
from .kamienny import (
    Mod2Images,
    fast_operator_set,
    kamienny_check_H,
    kamienny_check_H_fast,
    kamienny_check_x0,
)
from .certify import ReplayResult, SearchOptions, exclude_prime, replay_certificate

__all__ = [
    "HeckeLattice",
    "Level",
    "WindingAnnihilator",
    "WindingData",
    "build_hecke_lattice",
    "winding_annihilator",
    "t1_candidates",
    "t1_from_polynomial",
    "t2_element",
    "Mod2Images",
    "fast_operator_set",
    "kamienny_check_H",
    "kamienny_check_H_fast",
    "kamienny_check_x0",
    "ReplayResult",
    "SearchOptions",
    "exclude_prime",
    "replay_certificate",
]
