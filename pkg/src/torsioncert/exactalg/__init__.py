"""Exact linear algebra over Z, Q, F_p and F_{2^k}."""

from .matrix import (
    ExactMatrix,
    Polynomial,
    Ring,
    charpoly,
    evaluate_polynomial,
    exact_matmul,
    hnf,
    hnf_with_transform,
    integer_kernel,
    kernel_basis,
    rank_mod,
)
from .gf2 import gf2_left_kernel, gf2_rank, min_dependency_weight, pack_rows
from .primefield import PrimeFieldElt, left_kernel_mod
from .binaryfield import BinaryField, BinaryFieldElt

__all__ = [
    "ExactMatrix",
    "Polynomial",
    "Ring",
    "charpoly",
    "evaluate_polynomial",
    "exact_matmul",
    "hnf",
    "hnf_with_transform",
    "integer_kernel",
    "kernel_basis",
    "rank_mod",
    "gf2_left_kernel",
    "gf2_rank",
    "min_dependency_weight",
    "pack_rows",
    "PrimeFieldElt",
    "left_kernel_mod",
    "BinaryField",
    "BinaryFieldElt",
]
