# -*- coding: utf-8 -*-
"""各层的根 δ_i 与单位格 C、C̄

第 i 层的 η_i 是 ρ_{I-M_i} 沿 B_i/T_{I-M_i} 的范；|M_i| = 1 时 δ_i = (1-ŝ)·η_i，
否则 δ_i 是 y_i·δ_i = η_i 在范核中的唯一解。
"""

import logging
from typing import Any, Dict, List, Optional, Sequence

from ..errors import ModelDiscrepancyError, NotSublatticeError
from ..frame import GroupData, LevelData, level_data
from ..frame.instance import log_p
from ..group_ring import one_minus_sigma
from ..lattice import INFINITE, Lattice, lattice_index
from ..lattice.matrix import transpose
from ..module import (
    RootCertificate,
    SMModule,
    norm_kernel_module,
    solve_root,
    target_vector,
    verify_delta_identity,
)
from ..module.builder import Vector

logger = logging.getLogger(__name__)


class LevelSolution:
    """第 i 层的 η_i、δ_i 与证书"""

    def __init__(
        self,
        level: LevelData,
        eta: Vector,
        delta: Vector,
        certificate: Optional[RootCertificate] = None,
    ):
        self.level = level
        self.eta = eta
        self.delta = delta
        self.certificate = certificate
        self.checks: Dict[str, Any] = {}

    @property
    def i(self) -> int:
        return self.level.i

    @property
    def singleton(self) -> bool:
        return self.level.singleton

    def __repr__(self) -> str:
        return f"LevelSolution(i={self.i}, singleton={self.singleton})"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "level": self.level.to_dict(),
            "eta": self.eta,
            "delta": self.delta,
            "singleton": self.singleton,
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
            "checks": self.checks,
        }


def solve_level(U: SMModule, level: LevelData) -> LevelSolution:
    """求第 i 层的 δ_i

    Raises:
        ModelDiscrepancyError: η_i 不在范核中、方程无解或 δ_i 不是单位
    """
    eta = target_vector(U, level)
    if level.singleton:
        delta = U.act_ring(one_minus_sigma(U.frame.ring, 1), eta)
        solution = LevelSolution(level, eta, delta)
    else:
        M = norm_kernel_module(U, level)
        if not M.contains(eta):
            raise ModelDiscrepancyError(
                f"η_{level.i} 不在范核 M_{level.i} 中", anchor="build_levels", details={"level": level.i}
            )
        cert = solve_root(U, M, level.y, eta, level.level_n, level.i)
        if cert is None:
            raise ModelDiscrepancyError(
                f"第 {level.i} 层的 y_i·δ = η_i 无解", anchor="build_levels", details={"level": level.i}
            )
        verify_delta_identity(U, cert, level)
        if len(level.M) == 2 and cert.delta != eta:
            raise ModelDiscrepancyError("|M_i| = 2 时 δ_i 必须等于 η_i", anchor="build_levels")
        solution = LevelSolution(level, eta, cert.delta, cert)
        solution.checks["norm_kernel_rank"] = M.rank

    solution.checks["delta_is_unit"] = U.is_unit(solution.delta)
    solution.checks["eta_is_unit"] = U.is_unit(eta)
    if not solution.checks["delta_is_unit"]:
        raise ModelDiscrepancyError(
            f"δ_{level.i} 不是单位", anchor="build_levels", details={"valuations": U.valuations(solution.delta)}
        )
    if level.singleton and solution.checks["eta_is_unit"]:
        logger.warning("第 %d 层 |M_i| = 1 但 η_i 是单位", level.i)
    logger.info("第 %d 层: M=%s, singleton=%s", level.i, sorted(level.M), level.singleton)
    return solution


def build_levels(frame: GroupData, U: SMModule, only: Optional[Sequence[int]] = None) -> List[LevelSolution]:
    """逐层求 δ_1..δ_k

    Args:
        frame: 框架
        U: 由 frame 构造的模
        only: 只求这些层（默认全部）
    """
    indices = list(only) if only else list(range(1, frame.k + 1))
    return [solve_level(U, level_data(frame, i)) for i in indices]


def orbit(U: SMModule, vector: Sequence[int], level: int) -> List[Vector]:
    """{ŝ^a·vector : 0 ≤ a < p^level}"""
    out = [list(vector)]
    for _ in range(U.frame.p ** level - 1):
        out.append(U.act_sigma(1, out[-1]))
    return out


def unit_restriction(U: SMModule, lattice: Lattice) -> Lattice:
    """{x ∈ lattice : v_j(x) = 0}"""
    return lattice.restrict(transpose(U.valuation_vectors(), U.rank))


class UnitLattices:
    """C̄、C 以及按层截断的 C̄_sub"""

    def __init__(self, Cbar: Lattice, C: Lattice, Cbar_sub: Dict[int, Lattice], levels: List[LevelSolution]):
        self.Cbar = Cbar
        self.C = C
        self.Cbar_sub = Cbar_sub
        self.levels = levels
        self.all_J: Optional[Dict[str, Any]] = None

    def __repr__(self) -> str:
        return f"UnitLattices(rank={self.Cbar.rank})"

    def level(self, i: int) -> LevelSolution:
        for solution in self.levels:
            if solution.i == i:
                return solution
        raise KeyError(i)

    def index(self):
        """[C̄ : C]"""
        return lattice_index(self.C, self.Cbar)

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "Cbar": self.Cbar.to_dict(),
            "C": self.C.to_dict(),
            "Cbar_sub_ranks": {str(i): L.rank for i, L in sorted(self.Cbar_sub.items())},
            "index_Cbar_C": str(self.index()),
        }
        if self.all_J is not None:
            data["all_J"] = self.all_J
        return data


def all_J_generators(U: SMModule) -> List[Vector]:
    """w_J = Σ_{b ∈ B_{i(J)}/T_{I-J}} b·ρ_{I-J}，J 取遍 I 的非空子集

    i(J) = k - log_p max_{j∉J} t_j，J = I 时 i(J) = k。
    """
    frame = U.frame
    full = U.free.full
    out = []
    for J in U.free.subsets + [full]:
        if not J:
            continue
        outside = [frame.orders[j - 1] for j in full - J]
        i = frame.k - log_p(max(outside), frame.p) if outside else frame.k
        rest = full - J
        reps = sorted({frame.coset_rep(rest, b) for b in frame.level_kernel(i)})
        position = U.free.position(rest, frame.identity())
        w = U.orbit_sum(reps, position)
        out.extend(orbit(U, w, frame.k))
    return out


def unit_lattices(U: SMModule, levels: List[LevelSolution], all_J: bool = False) -> UnitLattices:
    """由各层的解构造 C̄ = span{ŝ^a δ_i} 与 C = span{ŝ^a η_i} ∩ {v_j = 0}

    Raises:
        ModelDiscrepancyError: C ⊄ C̄ 或两者秩不同
    """
    n = U.rank
    k = U.frame.k
    delta_orbits = {s.i: orbit(U, s.delta, s.i) for s in levels}
    eta_vectors = [v for s in levels for v in orbit(U, s.eta, s.i)]

    Cbar = Lattice.from_generators([v for vs in delta_orbits.values() for v in vs], n)
    C = unit_restriction(U, Lattice.from_generators(eta_vectors, n))
    Cbar_sub = {
        level: Lattice.from_generators(
            [v for i, vs in delta_orbits.items() if i <= level for v in vs], n
        )
        for level in range(0, k + 1)
    }
    for vector in Cbar.basis:
        if not U.is_unit(vector):
            raise ModelDiscrepancyError("C̄ 的基向量不是单位", anchor="unit_lattices")
    try:
        index = lattice_index(C, Cbar)
    except NotSublatticeError as e:
        raise ModelDiscrepancyError("C 不包含于 C̄", anchor="unit_lattices") from e
    if index is INFINITE:
        raise ModelDiscrepancyError(
            f"rank(C) = {C.rank} < rank(C̄) = {Cbar.rank}", anchor="unit_lattices"
        )
    result = UnitLattices(Cbar, C, Cbar_sub, levels)
    logger.info("unit_lattices: rank=%d, [C̄:C]=%s", Cbar.rank, index)

    if all_J:
        extended = unit_restriction(U, Lattice.from_generators(eta_vectors + all_J_generators(U), n))
        within = Cbar.contains_lattice(extended)
        result.all_J = {
            "changed": extended != C,
            "index_C_in_extended": str(lattice_index(C, extended)),
            "rank": extended.rank,
            "within_Cbar": within,
            "index_in_Cbar": str(lattice_index(extended, Cbar)) if within else None,
        }
        if result.all_J["changed"]:
            logger.warning("加入全部 w_J 后 C 发生变化")
    return result
