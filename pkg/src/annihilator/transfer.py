# -*- coding: utf-8 -*-
"""跳跃基、z 映射与零化子的转移

使用方式：
    ```python
    U = build_U(frame)
    lattices = unit_lattices(U, build_levels(frame, U))
    basis = jump_basis(frame, U, lattices)
    kappa = frame.ring.element([2, 1] + [0] * 7)
    print(z_map(U, lattices, basis, lattices.level(frame.k).delta, 1, kappa))
    print(annihilator_transfer(frame, kappa))
    ```
"""

import logging
import random
from typing import Any, Dict, List, Optional, Sequence

from ..errors import ModelDiscrepancyError
from ..frame import GroupData, jump_profile, r_characterization
from ..group_ring import GroupRingElement, gr_mul, norm_element, one_minus_sigma
from ..lattice import Lattice, solve_integer
from ..lattice.matrix import add_vec, scale_vec, transpose
from ..module import SMModule
from ..module.builder import Vector
from .levels import UnitLattices, orbit

logger = logging.getLogger(__name__)


class JumpBasis:
    """{ŝ^a·δ_{s_t} : 0 ≤ a < p^{s_t} - p^{s_{t-1}}}，按跳跃分块"""

    def __init__(self, jumps: List[int], r: int, blocks: List[List[Vector]]):
        self.jumps = jumps
        self.r = r
        self.blocks = blocks

    @property
    def vectors(self) -> List[Vector]:
        return [v for block in self.blocks for v in block]

    @property
    def block_sizes(self) -> List[int]:
        return [len(block) for block in self.blocks]

    def __repr__(self) -> str:
        return f"JumpBasis(jumps={self.jumps}, sizes={self.block_sizes})"

    def to_dict(self) -> Dict[str, Any]:
        return {"jumps": self.jumps, "r": self.r, "block_sizes": self.block_sizes, "size": len(self.vectors)}


def jump_basis(frame: GroupData, U: SMModule, lattices: UnitLattices) -> JumpBasis:
    """组装跳跃基并验证它是 C̄ 的 Z-基

    Raises:
        ModelDiscrepancyError: 个数与 rank(C̄) 不符，或张成的格不是 C̄
    """
    profile = jump_profile(frame)
    p = frame.p
    blocks = []
    for low, high in zip(profile.jumps, profile.jumps[1:]):
        delta = lattices.level(high).delta
        blocks.append(orbit(U, delta, high)[: p ** high - p ** low])
    basis = JumpBasis(profile.jumps, profile.r, blocks)
    vectors = basis.vectors
    if len(vectors) != lattices.Cbar.rank:
        raise ModelDiscrepancyError(
            f"跳跃基有 {len(vectors)} 个向量，rank(C̄) = {lattices.Cbar.rank}",
            anchor="jump_basis",
            details=basis.to_dict(),
        )
    if Lattice.from_generators(vectors, U.rank) != lattices.Cbar:
        raise ModelDiscrepancyError("跳跃基张成的格不是 C̄", anchor="jump_basis", details=basis.to_dict())
    logger.info("jump_basis: %r", basis)
    return basis


def _scaled_image(U: SMModule, x: Sequence[int], f: int, kappa: GroupRingElement) -> Vector:
    return scale_vec(f, U.act_ring(kappa, x))


def _top_rho(U: SMModule, coeffs: Sequence[int]) -> GroupRingElement:
    ring = U.frame.ring
    return ring.element(list(coeffs) + [0] * (ring.order - len(coeffs)))


def z_map(
    U: SMModule,
    lattices: UnitLattices,
    basis: JumpBasis,
    x: Sequence[int],
    f: int,
    kappa: GroupRingElement,
) -> GroupRingElement:
    """z(x) = (1 - σ^{p^r})·ρ，ρ 取自 (f·κ)·x 在跳跃基顶块上的坐标

    Raises:
        ModelDiscrepancyError: (f·κ)·x 不在 C̄ 中
    """
    image = _scaled_image(U, x, f, kappa)
    vectors = basis.vectors
    solution = solve_integer(transpose(vectors, U.rank), image)
    if solution is None:
        raise ModelDiscrepancyError("(f·κ)·x 不在 C̄ 中", anchor="z_map")
    top = basis.block_sizes[-1]
    rho = _top_rho(U, solution.particular[len(vectors) - top :])
    return one_minus_sigma(U.frame.ring, U.frame.p ** basis.r) * rho


def z_map_alternative(
    U: SMModule,
    lattices: UnitLattices,
    r: int,
    x: Sequence[int],
    f: int,
    kappa: GroupRingElement,
    rng: random.Random,
) -> GroupRingElement:
    """另一种分解：δ_k 的完整轨道加 C̄_sub(r) 的基，并叠加随机的核向量"""
    k = U.frame.k
    delta = lattices.level(k).delta
    top = orbit(U, delta, k)
    generators = top + lattices.Cbar_sub[r].basis
    image = _scaled_image(U, x, f, kappa)
    solution = solve_integer(transpose(generators, U.rank), image)
    if solution is None:
        raise ModelDiscrepancyError("(f·κ)·x 不在 C̄ 中", anchor="z_map")
    coords = list(solution.particular)
    for row in solution.kernel:
        coords = add_vec(coords, scale_vec(rng.randint(-3, 3), row))
    rho = _top_rho(U, coords[: len(top)])
    return one_minus_sigma(U.frame.ring, U.frame.p ** r) * rho


def annihilator_transfer(frame: GroupData, kappa: GroupRingElement) -> GroupRingElement:
    """(1 - σ^{p^r})·κ，r 由跳跃给出并与 r 的刻画交叉核对"""
    r = jump_profile(frame).r
    r_characterization(frame, check=True)
    return gr_mul(one_minus_sigma(frame.ring, frame.p ** r), kappa)


def relative_norm(U: SMModule, i: int) -> GroupRingElement:
    """ν_{i,i-1} = Σ_{a < p} ŝ^{a·p^{i-1}}"""
    p = U.frame.p
    return U.frame.ring.from_terms({a * p ** (i - 1): 1 for a in range(p)})


def norm_membership_checks(U: SMModule, lattices: UnitLattices) -> Dict[str, Any]:
    """对 1 < i ≤ k 验证 ν_{i,i-1}·δ_i 落在 δ_{i-1} 轨道的张成中，μ 相等时验证张成相等

    Raises:
        ModelDiscrepancyError: 任一检查失败
    """
    frame = U.frame
    mu = jump_profile(frame).mu
    records = []
    for i in range(2, frame.k + 1):
        upper = lattices.level(i).delta
        lower = Lattice.from_generators(orbit(U, lattices.level(i - 1).delta, i - 1), U.rank)
        image = U.act_ring(relative_norm(U, i), upper)
        record: Dict[str, Any] = {"i": i, "member": lower.contains(image), "equal_mu": mu[i - 2] == mu[i - 1]}
        if record["equal_mu"]:
            spanned = Lattice.from_generators(orbit(U, image, i - 1), U.rank)
            record["span_equal"] = spanned == lower
        records.append(record)
    failed = [r for r in records if not r["member"] or r.get("span_equal") is False]
    if failed:
        raise ModelDiscrepancyError("范关系检查失败", anchor="norm_membership_checks", details={"failed": failed})
    return {"records": records, "passed": True}


def lemma_property(
    U: SMModule,
    lattices: UnitLattices,
    r: int,
    trials: int,
    rng: random.Random,
) -> Dict[str, Any]:
    """ρ·δ_k ∈ C̄_sub(r) 蕴含 (1 - σ^{p^r})·ρ = 0

    一半试验取 ρ = N_{p^r}·ρ_0，使 (1 - σ^{p^r})·ρ = 0 的一侧也被覆盖。
    """
    frame = U.frame
    ring = frame.ring
    delta = lattices.level(frame.k).delta
    sub = lattices.Cbar_sub[r]
    factor = one_minus_sigma(ring, frame.p ** r)
    norm = norm_element(ring, frame.p ** r)
    violations = 0
    killed = 0
    for trial in range(trials):
        rho = ring.element([rng.randint(-3, 3) for _ in range(ring.order)])
        if trial % 2:
            rho = norm * rho
        is_killed = (factor * rho).is_zero()
        killed += is_killed
        if sub.contains(U.act_ring(rho, delta)) and not is_killed:
            violations += 1
    logger.info("lemma_property: %d 次试验, %d 次违反", trials, violations)
    return {"trials": trials, "killed": killed, "violations": violations, "passed": violations == 0}


def z_map_fuzz(
    U: SMModule,
    lattices: UnitLattices,
    basis: JumpBasis,
    trials: int,
    rng: random.Random,
    f: int = 1,
) -> Dict[str, Any]:
    """随机 x ∈ C̄ 与 κ 上比较两种分解给出的 z(x)，并验证 z(δ_k) = (1 - σ^{p^r})·f·κ"""
    frame = U.frame
    ring = frame.ring
    delta = lattices.level(frame.k).delta
    factor = one_minus_sigma(ring, frame.p ** basis.r)
    mismatches = 0
    exact = 0
    for _ in range(trials):
        kappa = ring.element([rng.randint(-2, 2) for _ in range(ring.order)])
        x = lattices.Cbar.vector([rng.randint(-2, 2) for _ in range(lattices.Cbar.rank)])
        first = z_map(U, lattices, basis, x, f, kappa)
        second = z_map_alternative(U, lattices, basis.r, x, f, kappa, rng)
        if first != second:
            mismatches += 1
        if z_map(U, lattices, basis, delta, f, kappa) == factor * (f * kappa):
            exact += 1
    return {"trials": trials, "mismatches": mismatches, "exact": exact, "passed": mismatches == 0 and exact == trials}


def annihilate_report(
    frame: GroupData,
    U: SMModule,
    lattices: UnitLattices,
    kappa: GroupRingElement,
    f: int = 1,
    basis: Optional[JumpBasis] = None,
) -> Dict[str, Any]:
    """annihilate 命令：转移元与 z(δ_k) 的演示"""
    basis = basis or jump_basis(frame, U, lattices)
    transfer = annihilator_transfer(frame, kappa)
    z = z_map(U, lattices, basis, lattices.level(frame.k).delta, f, kappa)
    expected = f * transfer
    if z != expected:
        raise ModelDiscrepancyError(
            "z(δ_k) ≠ (1 - σ^{p^r})·f·κ", anchor="annihilate", details={"z": str(z), "expected": str(expected)}
        )
    return {
        "kappa": str(kappa),
        "f": f,
        "r": basis.r,
        "transfer": str(transfer),
        "transfer_coeffs": transfer.to_list(),
        "z_delta_k": str(z),
        "jump_basis": basis.to_dict(),
    }
