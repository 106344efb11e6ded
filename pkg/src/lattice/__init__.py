# -*- coding: utf-8 -*-
from .matrix import (
    IntMatrix,
    HNFResult,
    SNFResult,
    IntegerSolution,
    hnf,
    hnf_basis,
    snf,
    solve_integer,
    integer_kernel,
    left_kernel,
    determinant_abs,
    rank,
)
from .lattice import Lattice, ActionLattice, INFINITE, saturate, lattice_index, intersect
from .hom import HomMap, hom_module

__all__ = [
    "IntMatrix",
    "HNFResult",
    "SNFResult",
    "IntegerSolution",
    "hnf",
    "hnf_basis",
    "snf",
    "solve_integer",
    "integer_kernel",
    "left_kernel",
    "determinant_abs",
    "rank",
    "Lattice",
    "ActionLattice",
    "INFINITE",
    "saturate",
    "lattice_index",
    "intersect",
    "HomMap",
    "hom_module",
]
