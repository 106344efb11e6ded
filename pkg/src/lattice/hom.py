# -*- coding: utf-8 -*-
"""等变同态模 Hom(M, A) 的计算

未知量为格基向量的像，约束为等变性 S·Φ = Φ·T，
其中 S 为 σ 在 M 坐标下的矩阵，T 为 σ 在目标环上的乘法矩阵。
整数核给出 Hom 的一组 Z-基，它也生成 Hom 作为 A-模。
"""

import logging
from typing import List, Sequence, Union

from ..errors import InvalidInputError
from ..group_ring import CyclicGroupRing, GroupRingElement, QuotientRing, QuotientRingElement
from .lattice import ActionLattice
from .matrix import Rows, identity, integer_kernel, matmul, vec_mat

logger = logging.getLogger(__name__)

HomTarget = Union[CyclicGroupRing, QuotientRing]


class HomMap:
    """一个等变同态 φ: M → A，以像矩阵表示"""

    def __init__(self, module: ActionLattice, target: HomTarget, matrix: Rows):
        """
        Args:
            module: 定义域
            target: 目标环 Z[Γ] 或 R
            matrix: 第 i 行为第 i 个基向量的像的系数
        """
        self.module = module
        self.target = target
        self.matrix = matrix

    def __repr__(self) -> str:
        return f"HomMap(rank={len(self.matrix)}, target={self.target!r})"

    def apply_coords(self, coords: Sequence[int]) -> Union[GroupRingElement, QuotientRingElement]:
        values = vec_mat(coords, self.matrix, self.target.dimension)
        if isinstance(self.target, QuotientRing):
            return self.target.element(values)
        return GroupRingElement(self.target, values)

    def apply(self, v: Sequence[int]) -> Union[GroupRingElement, QuotientRingElement]:
        """作用于环境向量（必须落在定义域格中）"""
        coords = self.module.lattice.coordinates(v)
        if coords is None:
            raise InvalidInputError("向量不在同态定义域中", anchor="HomMap.apply")
        return self.apply_coords(coords)

    def is_equivariant(self) -> bool:
        S = self.module.restricted_matrix(0)
        T = self.target.shift_matrix()
        return matmul(S, self.matrix, self.target.dimension) == matmul(
            self.matrix, T, self.target.dimension
        )


def _matrix_power_sum(S: Rows, step: int, count: int) -> Rows:
    """Σ_{i<count} S^{i·step}"""
    m = len(S)
    power = identity(m)
    base = identity(m)
    for _ in range(step):
        base = matmul(base, S, m)
    total = [[0] * m for _ in range(m)]
    for _ in range(count):
        total = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(total, power)]
        power = matmul(power, base, m)
    return total


def _check_compatible(S: Rows, target: HomTarget) -> None:
    m = len(S)
    if isinstance(target, QuotientRing):
        ring = target.ring
        relation = _matrix_power_sum(S, target.n, ring.order // target.n)
        if any(any(row) for row in relation):
            raise InvalidInputError("N_n 在模上不为零，无法视为 R-模", anchor="hom_module")
        return
    power = identity(m)
    for _ in range(target.order):
        power = matmul(power, S, m)
    if power != identity(m):
        raise InvalidInputError("σ 的作用阶与目标群环不符", anchor="hom_module")


def hom_module(M: ActionLattice, target: HomTarget) -> List[HomMap]:
    """计算 Hom(M, A) 的生成元

    Args:
        M: 只带一个生成元（σ）的作用格
        target: 目标环 Z[Γ] 或商环 R

    Returns:
        HomMap 列表（Hom 的 Z-基）；M = 0 时为空
    """
    if M.rank == 0:
        return []
    if len(M.generators) != 1:
        raise InvalidInputError("hom_module 只接受循环作用", anchor="hom_module")
    S = M.restricted_matrix(0)
    _check_compatible(S, target)
    T = target.shift_matrix()
    m, d = len(S), target.dimension
    logger.debug("hom_module: m=%d, d=%d", m, d)

    # 方程 (i, b): Σ_l S[i][l]·Φ[l][b] - Σ_a Φ[i][a]·T[a][b] = 0
    equations = []
    for i in range(m):
        for b in range(d):
            row = [0] * (m * d)
            for l in range(m):
                if S[i][l]:
                    row[l * d + b] += S[i][l]
            for a in range(d):
                if T[a][b]:
                    row[i * d + a] -= T[a][b]
            equations.append(row)
    kernel = integer_kernel(equations, m * d)
    maps = []
    for vec in kernel:
        matrix = [vec[i * d:(i + 1) * d] for i in range(m)]
        phi = HomMap(M, target, matrix)
        if not phi.is_equivariant():
            raise InvalidInputError("求得的映射不是等变的", anchor="hom_module")
        maps.append(phi)
    return maps
