# -*- coding: utf-8 -*-
"""指数公式：ν、φ_L、[L:L̃] 与单位指数的解析值"""

import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional

from ..errors import ModelDiscrepancyError, ValidationError, ValidationIssue
from ..frame import GroupData, decomposition_indices, jump_profile, ramified_sets
from ..frame.instance import AnalyticData
from ..lattice import INFINITE, lattice_index
from ..lattice.lattice import IndexValue
from .levels import UnitLattices

logger = logging.getLogger(__name__)


def compute_nu(frame: GroupData) -> int:
    """ν = Σ_{j=1}^k Σ_{i ∈ M_j, 1 < i < max M_j} n_i"""
    n = decomposition_indices(frame)
    total = 0
    for M in ramified_sets(frame):
        top = max(M)
        total += sum(n[i - 1] for i in M if 1 < i < top)
    return total


def compute_phi(frame: GroupData) -> int:
    """φ_L = ∏ t_i^{n_i} / ∏_{j=1}^k p^{μ_j}

    Raises:
        ModelDiscrepancyError: 结果不是整数
    """
    n = decomposition_indices(frame)
    numerator = 1
    for t, nj in zip(frame.orders, n):
        numerator *= t ** nj
    mu = jump_profile(frame).mu
    value = Fraction(numerator, frame.p ** sum(mu))
    if value.denominator != 1:
        raise ModelDiscrepancyError(f"φ_L = {value} 不是整数", anchor="compute_phi")
    return value.numerator


def field_degree_ratio(frame: GroupData) -> int:
    """[F_I : L] = ∏ t_i / p^k"""
    return frame.group_order // frame.pk


class IndexReport:
    """ν、φ_L、[L:L̃] 与格指数的对照"""

    def __init__(
        self,
        nu: int,
        phi_L: int,
        L_index: int,
        FI_over_L: int,
        lattice_index_Cbar_C: Optional[int],
        degree_relation: Dict[str, bool],
        formulas: Optional[Dict[str, Any]] = None,
    ):
        self.nu = nu
        self.phi_L = phi_L
        self.L_index = L_index
        self.FI_over_L = FI_over_L
        self.lattice_index_Cbar_C = lattice_index_Cbar_C
        self.degree_relation = degree_relation
        self.formulas = formulas
        self.diagnostics: List[str] = []

    def __repr__(self) -> str:
        return f"IndexReport(nu={self.nu}, phi_L={self.phi_L}, L_index={self.L_index})"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "nu": self.nu,
            "phi_L": self.phi_L,
            "L_index": self.L_index,
            "FI_over_L": self.FI_over_L,
            "lattice_index_Cbar_C": self.lattice_index_Cbar_C,
            "degree_relation": self.degree_relation,
            "formulas": self.formulas,
            "diagnostics": self.diagnostics,
        }


def index_check(frame: GroupData, lattices: Optional[UnitLattices] = None) -> IndexReport:
    """计算 ν、φ_L、[L:L̃] 并验证 p^ν = φ_L/[L:L̃] 与 [C̄:C] = p^ν

    lattices 为 None 时只做公式部分（derive 命令）。

    Raises:
        ModelDiscrepancyError: 任一断言失败
    """
    p = frame.p
    nu = compute_nu(frame)
    phi = compute_phi(frame)
    profile = jump_profile(frame)
    L_index = profile.L_index
    if phi % L_index or phi // L_index != p ** nu:
        raise ModelDiscrepancyError(
            f"p^ν = {p ** nu} ≠ φ_L/[L:L̃] = {phi}/{L_index}",
            anchor="index_check",
            details={"nu": nu, "phi_L": phi, "L_index": L_index},
        )

    ratio = field_degree_ratio(frame)
    n = decomposition_indices(frame)
    equality_expected = all(x == 1 for x in n[:-1])
    degree_relation = {
        "divides": phi % ratio == 0,
        "equality": phi == ratio,
        "equality_expected": equality_expected,
    }
    if not degree_relation["divides"] or degree_relation["equality"] != equality_expected:
        raise ModelDiscrepancyError(
            f"[F_I:L] = {ratio} 与 φ_L = {phi} 的关系不符", anchor="index_check", details=degree_relation
        )

    measured = None
    if lattices is not None:
        measured = lattice_index(lattices.C, lattices.Cbar)
        if measured != p ** nu:
            raise ModelDiscrepancyError(
                f"[C̄:C] = {measured} ≠ p^ν = {p ** nu}",
                anchor="index_check",
                details={"nu": nu, "lattice_index": str(measured)},
            )
    logger.info("index_check: ν=%d, φ_L=%d, [L:L̃]=%d", nu, phi, L_index)
    return IndexReport(nu, phi, L_index, ratio, measured, degree_relation)


def _exact(value: Fraction, name: str, issues: List[ValidationIssue]) -> Optional[int]:
    if value.denominator != 1:
        issues.append(ValidationIssue("non_integral_index", f"{name} = {value} 不是整数", "index_formulas"))
        return None
    return value.numerator


def index_formulas(
    frame: GroupData, analytic: Optional[AnalyticData], measured_index: Optional[IndexValue] = None
) -> Dict[str, Any]:
    """单位指数 [O×_{F_I}:C]、[O×_L:C_L]、[O×_L:C̄_L] 的精确值

    大整数以十进制字符串返回；缺少解析数据时返回 available = False。
    两个解析指数之比即公式给出的 [C̄_L:C_L]；给出 measured_index 时与格上实测的指数比对。

    Args:
        frame: 验证后的框架
        analytic: 解析数据
        measured_index: lattice_index(C, C̄)

    Raises:
        ValidationError: 解析数据给出非整数的指数
        ModelDiscrepancyError: 公式之比与实测的 [C̄:C] 不符
    """
    if analytic is None or not analytic.has("h", "w_K", "f_I", "h_L"):
        return {"available": False}
    p = frame.p
    phi = compute_phi(frame)
    L_index = jump_profile(frame).L_index
    base = 12 * analytic.w_K * analytic.f_I
    power = base ** (frame.pk - 1)
    issues: List[ValidationIssue] = []

    C_L = _exact(Fraction(power * analytic.h_L, analytic.h * L_index), "[O×_L:C_L]", issues)
    Cbar_L = _exact(Fraction(power * analytic.h_L, analytic.h * phi), "[O×_L:C̄_L]", issues)
    result: Dict[str, Any] = {"available": True, "base": base}
    if analytic.has("h_FI"):
        value = Fraction(base ** (frame.group_order - 1) * analytic.h_FI, analytic.h)
        C_FI = _exact(value, "[O×_F_I:C_F_I]", issues)
        result["units_FI_over_C"] = None if C_FI is None else str(C_FI)
    if issues:
        raise ValidationError(issues)

    ratio = Fraction(C_L, Cbar_L)
    result["units_L_over_C"] = str(C_L)
    result["units_L_over_Cbar"] = str(Cbar_L)
    result["Cbar_over_C"] = ratio.numerator if ratio.denominator == 1 else str(ratio)
    if measured_index is not None:
        if measured_index is INFINITE or ratio != measured_index:
            raise ModelDiscrepancyError(
                "[O×_L:C_L]/[O×_L:C̄_L] ≠ [C̄_L:C_L]",
                anchor="index_formulas",
                details={"formula": str(ratio), "measured": str(measured_index)},
            )
        result["consistent_with_lattices"] = True
    if p > 3:
        divides = analytic.h_L % phi == 0
        result["phi_divides_h_L"] = divides
        if not divides:
            logger.warning("p > 3 但 φ_L = %d 不整除 h_L = %d", phi, analytic.h_L)
    return result
