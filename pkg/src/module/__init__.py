# -*- coding: utf-8 -*-
from .builder import (
    FreeModuleIndex,
    SMModule,
    build_U,
    project_Uprime,
    project,
    presentation_relations,
    free_valuations,
    relation_defects,
    valuation_defects,
    direct_sum_check,
    require_rank,
    valuation_functionals,
    is_unit,
)
from .roots import (
    RootCertificate,
    HomSweepReport,
    fixed_sublattice,
    target_vector,
    level_norm,
    kernel_of_norm,
    norm_kernel_module,
    assert_lift_independent,
    hom_sweep,
    hom_certificate,
    solve_root,
    verify_delta_identity,
    oracle_agreement,
    acts_injectively,
)
from .extension import EmbeddingReport, build_Uq, chi_embeddings, solve_beta, extension_report

__all__ = [
    "FreeModuleIndex",
    "SMModule",
    "build_U",
    "project_Uprime",
    "project",
    "presentation_relations",
    "free_valuations",
    "relation_defects",
    "valuation_defects",
    "direct_sum_check",
    "require_rank",
    "valuation_functionals",
    "is_unit",
    "RootCertificate",
    "HomSweepReport",
    "fixed_sublattice",
    "target_vector",
    "level_norm",
    "kernel_of_norm",
    "norm_kernel_module",
    "assert_lift_independent",
    "hom_sweep",
    "hom_certificate",
    "solve_root",
    "verify_delta_identity",
    "oracle_agreement",
    "acts_injectively",
    "EmbeddingReport",
    "build_Uq",
    "chi_embeddings",
    "solve_beta",
    "extension_report",
]
