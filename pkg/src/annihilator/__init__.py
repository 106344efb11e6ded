# -*- coding: utf-8 -*-
from .levels import (
    LevelSolution,
    UnitLattices,
    solve_level,
    build_levels,
    orbit,
    unit_restriction,
    all_J_generators,
    unit_lattices,
)
from .index import IndexReport, compute_nu, compute_phi, field_degree_ratio, index_check, index_formulas
from .transfer import (
    JumpBasis,
    jump_basis,
    z_map,
    z_map_alternative,
    annihilator_transfer,
    relative_norm,
    norm_membership_checks,
    lemma_property,
    z_map_fuzz,
    annihilate_report,
)

__all__ = [
    "LevelSolution",
    "UnitLattices",
    "solve_level",
    "build_levels",
    "orbit",
    "unit_restriction",
    "all_J_generators",
    "unit_lattices",
    "IndexReport",
    "compute_nu",
    "compute_phi",
    "field_degree_ratio",
    "index_check",
    "index_formulas",
    "JumpBasis",
    "jump_basis",
    "z_map",
    "z_map_alternative",
    "annihilator_transfer",
    "relative_norm",
    "norm_membership_checks",
    "lemma_property",
    "z_map_fuzz",
    "annihilate_report",
]
