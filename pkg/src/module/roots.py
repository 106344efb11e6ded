# -*- coding: utf-8 -*-
"""不动子格、范核与根的构造性提取

群环元素一律经提升 ŝ 作用；只在 B_i 不动的向量上使用，此时结果与提升的选择无关。
"""

import logging
import random
from typing import Any, Dict, List, Optional, Sequence

from ..errors import InternalError, InvalidInputError, ModelDiscrepancyError
from ..frame import LevelData, level_data
from ..frame.instance import Element
from ..group_ring import (
    CyclicGroupRing,
    GroupRingElement,
    QuotientRing,
    cyclic_delta,
    element_order,
    exact_quotient,
    is_nonzerodivisor,
    norm_element,
    one_minus_sigma,
    product,
)
from ..lattice import ActionLattice, HomMap, Lattice, hom_module, solve_integer
from ..lattice.matrix import Rows, identity, left_kernel, scale_vec, transpose
from .builder import SMModule, Vector

logger = logging.getLogger(__name__)


def _stack_columns(blocks: Sequence[Rows], n: int) -> Rows:
    """把若干 n×n 矩阵横向拼接"""
    return [sum((list(block[i]) for block in blocks), []) for i in range(n)]


def fixed_sublattice(U: SMModule, elements: Sequence[Element], within: Optional[Lattice] = None) -> Lattice:
    """{x ∈ within : g·x = x，g ∈ H}

    Args:
        U: 模
        elements: 子群 H 的元素（自动选取生成元）
        within: 限定的子格，默认整个 U
    """
    lattice = within if within is not None else Lattice.full(U.rank)
    gens = [g for g in U.frame.subgroup_generators(list(elements)) if any(g)]
    if not gens:
        return lattice
    eye = identity(U.rank)
    blocks = []
    for g in gens:
        A = U.action_matrix(g)
        blocks.append([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, eye)])
    return lattice.restrict(_stack_columns(blocks, U.rank))


def level_norm(level: LevelData) -> GroupRingElement:
    """N^{(i)} = Σ_{a < p^i/n} ŝ^{a·n}（在层次群环中）"""
    return norm_element(level.level_ring(), level.level_n)


def target_vector(U: SMModule, level, check: bool = True) -> Vector:
    """η_i = Σ_{b ∈ B_i/T_{I-M_i}} b·ρ_{I-M_i}

    Args:
        U: 模
        level: LevelData 或层次 i
        check: |M_i| ≥ 2 时验证 N^{(i)}·η_i = 0

    Raises:
        ModelDiscrepancyError: 范检验失败
    """
    if isinstance(level, int):
        level = level_data(U.frame, level)
    frame = U.frame
    J = U.free.full - level.M
    reps = sorted({frame.coset_rep(J, b) for b in level.B})
    position = U.free.position(J, frame.identity())
    eta = U.orbit_sum(reps, position)
    if check and len(level.M) >= 2:
        killed = U.act_ring(level_norm(level), eta)
        if any(killed):
            raise ModelDiscrepancyError(
                f"第 {level.i} 层的 η 不被 N^({level.i}) 零化",
                anchor="target_vector",
                details={"level": level.i, "level_n": level.level_n},
            )
    return eta


def assert_lift_independent(U: SMModule, vectors: Sequence[Sequence[int]], subgroup: Sequence[Element]) -> None:
    """对 subgroup 中的每个 b，验证 (ŝ + b)·x = ŝ·x"""
    frame = U.frame
    gens = [g for g in frame.subgroup_generators(list(subgroup)) if any(g)]
    for x in vectors:
        base = U.act(frame.lift, x)
        for b in gens:
            if U.act(frame.add(frame.lift, b), x) != base:
                raise ModelDiscrepancyError(
                    "ŝ 的作用依赖于提升的选择", anchor="assert_lift_independent"
                )


def kernel_of_norm(
    U: SMModule,
    W: Lattice,
    n: int,
    level: Optional[int] = None,
    subgroup: Optional[Sequence[Element]] = None,
) -> Lattice:
    """{x ∈ W : N_n·x = 0}，N_n = Σ_{a < p^level/n} ŝ^{a·n}

    Args:
        U: 模
        W: 在 ŝ 下稳定的子格
        n: 范参数（整除 p^level）
        level: 层次，默认 k
        subgroup: 给出时验证结果在该子群上与提升无关
    """
    level = U.frame.k if level is None else level
    ring = CyclicGroupRing(U.frame.p, level)
    if not ring.contains_divisor(n):
        raise InvalidInputError(f"{n} 不整除 p^{level}", anchor="kernel_of_norm")
    N = norm_element(ring, n)
    result = W.restrict(U.ring_matrix(N))
    if subgroup is not None:
        assert_lift_independent(U, result.basis, subgroup)
    logger.debug("kernel_of_norm: rank %d -> %d", W.rank, result.rank)
    return result


def norm_kernel_module(U: SMModule, level: LevelData) -> Lattice:
    """M_i = {x ∈ Ψ(P)^{B_i} : N^{(i)}·x = 0}"""
    fixed = fixed_sublattice(U, level.B, U.psi_part())
    return kernel_of_norm(U, fixed, level.level_n, level.i, subgroup=level.B)


class HomSweepReport:
    """hom_sweep 的结果：每个 Hom 生成元的整除见证"""

    def __init__(self, divisor: GroupRingElement, records: List[Dict[str, Any]], hom_count: int):
        self.divisor = divisor
        self.records = records
        self.hom_count = hom_count

    @property
    def passed(self) -> bool:
        return all(r["passed"] for r in self.records)

    def require(self) -> "HomSweepReport":
        if not self.passed:
            raise ModelDiscrepancyError(
                "存在 Hom 生成元的像不在理想中", anchor="hom_sweep", details=self.to_dict()
            )
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            "divisor": str(self.divisor),
            "hom_count": self.hom_count,
            "passed": self.passed,
            "records": self.records,
        }


def hom_sweep(U: SMModule, subgroup: Sequence[Element], w: Sequence[int], n: Sequence[int]) -> HomSweepReport:
    """对 Hom_{Z[Γ]}(U^B, Z[Γ]) 的每个生成元 φ 验证 (1-σ)·φ(w) ∈ ∏(1-σ^{n_i})·Z[Γ]

    Args:
        U: 模
        subgroup: B 的元素
        w: B 不动向量
        n: 分解指数 n_1..n_s
    """
    ring = U.frame.ring
    divisor = product(ring, (one_minus_sigma(ring, x) for x in n))
    fixed = fixed_sublattice(U, subgroup)
    if not fixed.contains(w):
        raise InvalidInputError("w 不是 B 不动向量", anchor="hom_sweep")
    homs = hom_module(ActionLattice(fixed, [U.sigma_matrix()]), ring)
    factor = one_minus_sigma(ring, 1)
    records = []
    for index, phi in enumerate(homs):
        value = factor * phi.apply(w)
        quotient = exact_quotient(value, divisor)
        records.append({
            "hom": index,
            "value": str(value),
            "passed": quotient is not None,
            "witness": None if quotient is None else str(quotient),
        })
    report = HomSweepReport(divisor, records, len(homs))
    logger.info("hom_sweep: %d 个生成元, passed=%s", len(homs), report.passed)
    return report


class RootCertificate:
    """y·δ = target 的解及 Hom 判据证据"""

    def __init__(
        self,
        level: int,
        y: GroupRingElement,
        target: Vector,
        delta: Vector,
        hom_evidence: List[Dict[str, Any]],
        unique: bool = True,
    ):
        self.level = level
        self.y = y
        self.target = target
        self.delta = delta
        self.hom_evidence = hom_evidence
        self.unique = unique
        self.checks: Dict[str, Any] = {}

    def __repr__(self) -> str:
        return f"RootCertificate(level={self.level}, y={self.y})"

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "level": self.level,
            "y": str(self.y),
            "y_coeffs": self.y.to_list(),
            "target": self.target,
            "delta": self.delta,
            "unique": self.unique,
            "hom_evidence": self.hom_evidence,
        }
        if self.checks:
            data["checks"] = self.checks
        return data


def _multiplication_on(U: SMModule, M: Lattice, y: GroupRingElement) -> Rows:
    """y 在 M 的坐标下的矩阵（行 i 为 y·b_i 的坐标）"""
    rows = []
    for b in M.basis:
        coords = M.coordinates(U.act_ring(y, b))
        if coords is None:
            raise InvalidInputError("y 的作用不保持 M", anchor="solve_root")
        rows.append(coords)
    return rows


def acts_injectively(U: SMModule, M: Lattice, y: GroupRingElement) -> bool:
    """y 在 M 上的乘法是否为单射（乘法矩阵的左核为零）"""
    return not left_kernel(_multiplication_on(U, M, y), M.rank)


def _direct_solve(U: SMModule, M: Lattice, y: GroupRingElement, target: Sequence[int]):
    """返回 (δ 的 M 坐标 或 None, y 在 M 上是否单射)"""
    coords = M.coordinates(target)
    if coords is None:
        raise InvalidInputError("target 不在 M 中", anchor="solve_root")
    Y = _multiplication_on(U, M, y)
    injective = not left_kernel(Y, M.rank)
    solution = solve_integer(transpose(Y, M.rank), coords)
    if solution is None:
        return None, injective
    return solution.particular, injective


def _quotient_for(ring: CyclicGroupRing, n: int) -> Optional[QuotientRing]:
    if (ring.order // ring.p) % n:
        return None
    return QuotientRing(ring, n)


def hom_certificate(
    homs: Sequence[HomMap],
    quotient: QuotientRing,
    y: GroupRingElement,
    target: Sequence[int],
) -> List[Dict[str, Any]]:
    """对每个 φ ∈ Hom_R(M, R) 判断 φ(target) ∈ y·R，并给出商见证"""
    y_bar = quotient.reduce(y.to_level(quotient.ring) if y.ring != quotient.ring else y)
    Y = transpose(y_bar.multiplication_matrix(), quotient.dimension)
    evidence = []
    for index, phi in enumerate(homs):
        value = phi.apply(target)
        solution = solve_integer(Y, list(value.coeffs))
        evidence.append({
            "hom": index,
            "value": str(value),
            "passed": solution is not None,
            "witness": None if solution is None else str(quotient.element(solution.particular)),
        })
    return evidence


def solve_root(
    U: SMModule,
    M: Lattice,
    y: GroupRingElement,
    target: Sequence[int],
    n: int,
    level: Optional[int] = None,
    homs: Optional[Sequence[HomMap]] = None,
) -> Optional[RootCertificate]:
    """在 M 中求唯一的 δ 使 y·δ = target

    Args:
        U: 模
        M: 范核子格
        y: 群环元素（在 Z[Γ] 或层次群环中）
        target: M 中的向量
        n: R = Z[Γ_level]/N_n 的参数
        level: 层次，默认 k
        homs: 预先计算的 Hom_R(M, R) 生成元

    Returns:
        RootCertificate；无解时返回 None

    Raises:
        ModelDiscrepancyError: 解不唯一，或 δ 不是单位
        InternalError: 直接求解与 Hom 判据不一致
    """
    level = U.frame.k if level is None else level
    ring = CyclicGroupRing(U.frame.p, level)
    y_level = y.to_level(ring) if y.ring != ring else y
    quotient = _quotient_for(ring, n)
    if quotient is not None and M.rank and not is_nonzerodivisor(quotient.reduce(y_level)):
        raise InvalidInputError(f"{y} 在 R 中是零因子", anchor="solve_root")

    coords, unique = _direct_solve(U, M, y_level, target)
    evidence: List[Dict[str, Any]] = []
    if quotient is not None and M.rank:
        if homs is None:
            homs = hom_module(ActionLattice(M, [U.sigma_matrix()]), quotient)
        evidence = hom_certificate(homs, quotient, y_level, target)
    criterion = all(e["passed"] for e in evidence)
    if quotient is not None and M.rank and criterion != (coords is not None):
        raise InternalError(
            "直接求解与 Hom 判据不一致",
            anchor="solve_root",
            details={"direct": coords is not None, "criterion": criterion},
        )
    if coords is None:
        logger.info("solve_root: 第 %d 层无解", level)
        return None
    if not unique:
        raise ModelDiscrepancyError("y 在 M 上不是单射，根不唯一", anchor="solve_root")
    delta = M.vector(coords)
    if U.act_ring(y_level, delta) != list(target):
        raise InternalError("y·δ ≠ target", anchor="solve_root")
    if not U.kills_e and not U.is_unit(delta):
        raise ModelDiscrepancyError("δ 不是单位", anchor="solve_root", details={"valuations": U.valuations(delta)})
    return RootCertificate(level, y_level, list(target), delta, evidence, unique)


def verify_delta_identity(U: SMModule, cert: RootCertificate, level: LevelData, strict: bool = True) -> bool:
    """验证 (∏ Δ_{e_j})·target = (-1)^{|M_i|}·(∏ o_j)·δ

    e_j = c_j·n_j 取遍 M_i 的中间下标，o_j 为 σ^{e_j} 在 Γ_i 中的阶；|M_i| = 2 时化为 target = δ。
    """
    ring = level.level_ring()
    exponents = [level.c[j - 1] * level.n[j - 1] for j in level.middle()]
    deltas = product(ring, (cyclic_delta(ring, e) for e in exponents))
    r = 1
    for e in exponents:
        r *= element_order(ring, e)
    sign = -1 if len(level.M) % 2 else 1
    lhs = U.act_ring(deltas, cert.target)
    rhs = scale_vec(sign * r, cert.delta)
    ok = lhs == rhs
    cert.checks["delta_identity"] = {"r": r, "sign": sign, "passed": ok}
    if not ok and strict:
        raise ModelDiscrepancyError("Δ 恒等式不成立", anchor="verify_delta_identity", details={"level": level.i})
    return ok


def oracle_agreement(
    U: SMModule,
    M: Lattice,
    n: int,
    level: int,
    trials: int,
    rng: random.Random,
) -> Dict[str, Any]:
    """随机 (y, target) 上比较直接求解与 Hom 判据

    一半的试验取 target = y·m（可解），其余取 M 中的随机向量。
    y 均为 R 中的非零因子，injective 统计 y 在 M 上为单射的次数。
    """
    ring = CyclicGroupRing(U.frame.p, level)
    quotient = _quotient_for(ring, n)
    if quotient is None or M.rank == 0:
        return {"trials": 0, "agree": 0, "skipped": True}
    homs = hom_module(ActionLattice(M, [U.sigma_matrix()]), quotient)
    agree = 0
    solvable = 0
    injective = 0
    for trial in range(trials):
        while True:
            y = ring.element([rng.randint(-2, 2) for _ in range(ring.order)])
            if is_nonzerodivisor(quotient.reduce(y)):
                break
        base = M.vector([rng.randint(-3, 3) for _ in range(M.rank)])
        target = U.act_ring(y, base) if trial % 2 == 0 else base
        coords, one_to_one = _direct_solve(U, M, y, target)
        injective += one_to_one
        evidence = hom_certificate(homs, quotient, y, target)
        criterion = all(e["passed"] for e in evidence)
        if criterion == (coords is not None):
            agree += 1
        if coords is not None:
            solvable += 1
    logger.info("oracle_agreement: %d/%d", agree, trials)
    return {"trials": trials, "agree": agree, "solvable": solvable, "injective": injective, "skipped": False}

