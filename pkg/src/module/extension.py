# -*- coding: utf-8 -*-
"""添加辅助素理想 q 后的模 U_q、嵌入 χ、χ' 与 β 的构造

G_q = G × C_m，T_{s+1} = C_m，λ_{s+1} 取自 B，原有的 λ_j 补零；G 以 G × 0 嵌入 G_q。
"""

import logging
from typing import Any, Dict, List, Optional, Sequence

from ..errors import InvalidInputError, ModelDiscrepancyError
from ..frame import GroupData, decomposition_indices
from ..frame.instance import is_power_of
from ..group_ring import (
    CyclicGroupRing,
    delta_element,
    one_minus_sigma,
    product,
)
from ..lattice.matrix import Rows, add_vec, matmul, scale_vec
from .builder import SMModule, build_U, project_Uprime, matrix_rank
from .roots import RootCertificate, fixed_sublattice, kernel_of_norm, solve_root

logger = logging.getLogger(__name__)


def build_Uq(frame: GroupData, m: int, lambda_extra: Sequence[int], strict_m: bool = False) -> SMModule:
    """构造 (s+1) 个素理想的模 U_q

    Args:
        frame: 原框架
        m: T_{s+1} 的阶（p 的正幂）
        lambda_extra: λ_{s+1}，必须属于 B
        strict_m: 为真时 p^{ks} ∤ m 视为错误

    Raises:
        InvalidInputError: m 不是 p 的正幂，或 λ_{s+1} ∉ B
    """
    p = frame.p
    if m < p or not is_power_of(m, p):
        raise InvalidInputError(f"m = {m} 必须是 p 的正幂", anchor="build_Uq")
    if len(lambda_extra) != frame.s:
        raise InvalidInputError("λ_{s+1} 的长度必须为 s", anchor="build_Uq")
    if frame.res(lambda_extra) != 0:
        raise InvalidInputError("λ_{s+1} 不属于 B", anchor="build_Uq")
    required = p ** (frame.k * frame.s)
    if m % required:
        message = f"p^(ks) = {required} 不整除 m = {m}"
        if strict_m:
            raise InvalidInputError(message, anchor="build_Uq")
        logger.warning("%s（桌面规模下放宽）", message)
    Uq = build_U(frame.extend(m, lambda_extra))
    Uq.base_frame = frame
    Uq.m = m
    return Uq


def _embedded(frame: GroupData, g: Sequence[int]) -> tuple:
    return tuple(g) + (0,)


def _chi_positions(U: SMModule, Uq: SMModule, prime: bool) -> List[Optional[int]]:
    """χ_F（prime=False）或 χ'_F（prime=True）在 F 基上的像位置，None 表示映为 0"""
    frame = U.frame
    extra = frame.s + 1
    out: List[Optional[int]] = []
    for kind, data in U.free.labels:
        if kind == "x":
            J, rep = data
            J_new = J if prime else J | {extra}
            out.append(Uq.free.position(frozenset(J_new), _embedded(frame, rep)))
        elif kind == "x_I":
            if prime:
                out.append(Uq.free.position(U.free.full, Uq.frame.identity()))
            else:
                out.append(Uq.free.x_full)
        else:
            out.append(None if prime else Uq.free.e_positions[data])
    return out


def _map_matrix(source: SMModule, Uq: SMModule, positions: List[Optional[int]]) -> Rows:
    """L·χ_F·C_q"""
    rows = []
    for lrow in source.L:
        acc = [0] * Uq.rank
        for a, x in enumerate(lrow):
            if x and positions[a] is not None:
                acc = add_vec(acc, scale_vec(x, Uq.C[positions[a]]))
        rows.append(acc)
    return rows


def _relations_vanish(source: SMModule, Uq: SMModule, positions: List[Optional[int]]) -> bool:
    for row in source.relations:
        acc = [0] * Uq.rank
        for a, x in enumerate(row):
            if x and positions[a] is not None:
                acc = add_vec(acc, scale_vec(x, Uq.C[positions[a]]))
        if any(acc):
            return False
    return True


def _equivariant(source: SMModule, Uq: SMModule, X: Rows) -> bool:
    frame = source.frame
    for j in range(1, frame.s + 1):
        g = frame.generator(j)
        lhs = matmul(source.action_matrix(g), X, Uq.rank)
        rhs = matmul(X, Uq.action_matrix(_embedded(frame, g)), Uq.rank)
        if lhs != rhs:
            return False
    return True


class EmbeddingReport:
    """χ、χ' 的矩阵与三项检查"""

    def __init__(self, chi: Rows, chi_prime: Rows, checks: Dict[str, Dict[str, bool]], ranks: Dict[str, int]):
        self.chi = chi
        self.chi_prime = chi_prime
        self.checks = checks
        self.ranks = ranks

    @property
    def passed(self) -> bool:
        return all(all(v.values()) for v in self.checks.values())

    def to_dict(self) -> Dict[str, Any]:
        return {"checks": self.checks, "ranks": self.ranks, "passed": self.passed}


def chi_embeddings(U: SMModule, Uprime: SMModule, Uq: SMModule) -> EmbeddingReport:
    """构造 χ: U → U_q 与 χ': U' → U_q 并验证良定、单射与 G-等变

    Raises:
        ModelDiscrepancyError: 任一检查失败
    """
    positions = _chi_positions(U, Uq, prime=False)
    positions_prime = _chi_positions(Uprime, Uq, prime=True)
    chi = _map_matrix(U, Uq, positions)
    chi_prime = _map_matrix(Uprime, Uq, positions_prime)
    checks = {
        "chi": {
            "well_defined": _relations_vanish(U, Uq, positions),
            "injective": matrix_rank(chi, Uq.rank) == U.rank,
            "equivariant": _equivariant(U, Uq, chi),
        },
        "chi_prime": {
            "well_defined": _relations_vanish(Uprime, Uq, positions_prime),
            "injective": matrix_rank(chi_prime, Uq.rank) == Uprime.rank,
            "equivariant": _equivariant(Uprime, Uq, chi_prime),
        },
    }
    m = Uq.m or Uq.frame.orders[-1]
    ranks = {
        "U": U.rank,
        "Uprime": Uprime.rank,
        "Uq": Uq.rank,
        "predicted_Uq": U.rank + 1 + (m - 1) * Uprime.rank,
    }
    checks["rank_rule"] = {"matches": ranks["Uq"] == ranks["predicted_Uq"]}
    report = EmbeddingReport(chi, chi_prime, checks, ranks)
    if not report.passed:
        raise ModelDiscrepancyError("χ/χ' 检查失败", anchor="chi_embeddings", details=report.to_dict())
    return report


def solve_beta(Uq: SMModule, frame: GroupData, m: Optional[int] = None) -> RootCertificate:
    """在 M_q 中解 (1-σ)·y·δ = s(B)·ρ̃_∅ 并验证两条 Δ 恒等式

    y = ∏_{i=2}^{s-1} (1 - σ^{n_i})，n = n_s；B 为原框架的 B 经 G × 0 嵌入。

    Raises:
        ModelDiscrepancyError: 无解或任一恒等式不成立
    """
    if m is not None and Uq.m is not None and m != Uq.m:
        raise InvalidInputError(f"m = {m} 与 U_q 的 m = {Uq.m} 不符", anchor="solve_beta")
    ring: CyclicGroupRing = frame.ring
    n = decomposition_indices(frame)
    top = max(n)
    s = frame.s
    middle = n[1 : s - 1]
    y = product(ring, (one_minus_sigma(ring, x) for x in middle))
    y_beta = one_minus_sigma(ring, 1) * y

    B = [_embedded(frame, b) for b in frame.B_elements()]
    origin = Uq.free.position(frozenset(), Uq.frame.identity())
    target = Uq.orbit_sum(B, origin)
    fixed = fixed_sublattice(Uq, B, Uq.psi_part())
    M_q = kernel_of_norm(Uq, fixed, top, frame.k, subgroup=B)
    if not M_q.contains(target):
        raise ModelDiscrepancyError("s(B)·ρ̃_∅ 不在 M_q 中", anchor="solve_beta")
    cert = solve_root(Uq, M_q, y_beta, target, top, frame.k)
    if cert is None:
        raise ModelDiscrepancyError("β 方程无解", anchor="solve_beta")

    r = 1
    for x in middle:
        r *= ring.order // x
    sign = -1 if s % 2 else 1
    deltas = product(ring, (delta_element(ring, x) for x in middle))
    lhs = Uq.act_ring(deltas, target)
    root_image = Uq.act_ring(one_minus_sigma(ring, 1), cert.delta)
    cert.checks["beta_identity"] = lhs == scale_vec(sign * r, root_image)

    deltas_full = product(ring, (delta_element(ring, x) for x in n[: s - 1]))
    box_lhs = scale_vec(ring.order * r, cert.delta)
    box_rhs = scale_vec(-sign, Uq.act_ring(deltas_full, target))
    cert.checks["box_identity"] = box_lhs == box_rhs

    extra = Uq.frame.s
    T_extra = [Uq.frame.scale(a, Uq.frame.generator(extra)) for a in range(Uq.frame.orders[-1])]
    cert.checks["norm_descent_target"] = not any(Uq.group_sum(T_extra, target))
    cert.checks["norm_descent_delta"] = not any(Uq.group_sum(T_extra, cert.delta))
    witness = root_image
    cert.checks["semispecial_unit"] = Uq.is_unit(witness)
    cert.checks["semispecial_norm"] = not any(Uq.group_sum(T_extra, witness))
    cert.checks["y"] = str(y_beta)
    cert.checks["r"] = r

    failed = [key for key, value in cert.checks.items() if value is False]
    if failed:
        raise ModelDiscrepancyError(
            f"β 证书检查失败: {', '.join(failed)}", anchor="solve_beta", details=cert.checks
        )
    logger.info("solve_beta: 通过 %d 项检查", len(cert.checks))
    return cert


def extension_report(
    frame: GroupData, U: SMModule, m: int, lambda_extra: Sequence[int], strict_m: bool = False
) -> Dict[str, Any]:
    """extend 命令的完整流程"""
    Uprime = project_Uprime(U)
    Uq = build_Uq(frame, m, lambda_extra, strict_m)
    embeddings = chi_embeddings(U, Uprime, Uq)
    cert = solve_beta(Uq, frame, m)
    return {
        "m": m,
        "lambda_extra": list(lambda_extra),
        "Uq": Uq.summary(),
        "embeddings": embeddings.to_dict(),
        "beta": cert.to_dict(),
    }
