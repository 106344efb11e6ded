# -*- coding: utf-8 -*-
from .instance import (
    AnalyticData,
    RamificationInstance,
    GroupData,
    validate,
    collect_issues,
    canonical_order,
    iter_subsets,
    log_p,
)
from .derive import (
    JumpProfile,
    LevelData,
    decomposition_index,
    decomposition_indices,
    level_decomposition_index,
    ramified_set,
    ramified_sets,
    jump_profile,
    r_characterization,
    compute_c,
    level_data,
    associate_witnesses,
    frame_summary,
)

__all__ = [
    "AnalyticData",
    "RamificationInstance",
    "GroupData",
    "validate",
    "collect_issues",
    "canonical_order",
    "iter_subsets",
    "log_p",
    "JumpProfile",
    "LevelData",
    "decomposition_index",
    "decomposition_indices",
    "level_decomposition_index",
    "ramified_set",
    "ramified_sets",
    "jump_profile",
    "r_characterization",
    "compute_c",
    "level_data",
    "associate_witnesses",
    "frame_summary",
]
