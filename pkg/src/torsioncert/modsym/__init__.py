"""Integral modular symbols for Gamma_0(p) and Gamma_H(p)."""

from .hecke import HeckeElement, linear_combination
from .manin import ManinSymbolList, heilbronn_merel, signed_closure
from .space import ModularSymbolSpace, convergent_symbols
from .gamma0 import (
    build_space,
    hecke_matrix,
    lambda_symbol,
    merel_Ire,
    pairing,
    path_symbol,
    winding_element,
)
from .gammah import (
    InfinityCusp,
    OrderedCuspSum,
    WindingComputation,
    build_space_H,
    diamond_matrix,
    enumerate_ordered_cusp_sums,
    genus_formula,
    hecke_matrix_H,
    winding_details_H,
    winding_element_H,
)

__all__ = [
    "HeckeElement",
    "linear_combination",
    "ManinSymbolList",
    "heilbronn_merel",
    "signed_closure",
    "ModularSymbolSpace",
    "convergent_symbols",
    "build_space",
    "hecke_matrix",
    "lambda_symbol",
    "merel_Ire",
    "pairing",
    "path_symbol",
    "winding_element",
    "InfinityCusp",
    "OrderedCuspSum",
    "WindingComputation",
    "build_space_H",
    "diamond_matrix",
    "enumerate_ordered_cusp_sums",
    "genus_formula",
    "hecke_matrix_H",
    "winding_details_H",
    "winding_element_H",
]
