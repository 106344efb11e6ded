# -*- coding: utf-8 -*-
"""椭圆数关系模 U 的构造

U 取为自由模
    F = (⊕_{J⊊I} Z[G/T_J]·x_J) ⊕ Z·x_I ⊕ (⊕_j Z·e_j)
模去关系
    (R1) s(T_j)·x_J = (1 - λ_j^{-1})·x_{J∪{j}}    (J ⊊ I, j ∉ J, J∪{j} ≠ I)
    (R2) s(T_j)·x_{I-{j}} = t_j·e_j
之后的无挠商。记 C 为关系矩阵的整数右核（N × rank），则 f ↦ f·C 把 F 满射到
Z^rank，核恰为关系的饱和化；U 的坐标即 Z^rank。L 为 C 的左逆（L·C = I），
u 的一个原像为 u·L，群作用为 u ↦ (u·L)·P_g·C。
"""

import logging
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

from ..errors import ErrorKind, InternalError, InvalidInputError, ModelDiscrepancyError
from ..frame import GroupData, iter_subsets
from ..frame.instance import Element
from ..group_ring import GroupRingElement
from ..lattice import ActionLattice, Lattice, hnf, integer_kernel, rank
from ..lattice.matrix import Rows, add_vec, identity, matmul, scale_vec, transpose, vec_mat

logger = logging.getLogger(__name__)

Vector = List[int]


class FreeModuleIndex:
    """F 的基向量编号：[J, h]（h 为 G/T_J 的代表元）、x_I 与 e_j"""

    def __init__(self, frame: GroupData):
        self.frame = frame
        self.full = frozenset(range(1, frame.s + 1))
        self.subsets: List[FrozenSet[int]] = list(iter_subsets(self.full, proper=True))
        self.index: Dict[Tuple[FrozenSet[int], Element], int] = {}
        self.labels: List[Tuple[str, Any]] = []
        for J in self.subsets:
            for rep in frame.coset_reps(J):
                self.index[(J, rep)] = len(self.labels)
                self.labels.append(("x", (J, rep)))
        self.x_full = len(self.labels)
        self.labels.append(("x_I", None))
        self.e_positions: Dict[int, int] = {}
        for j in range(1, frame.s + 1):
            self.e_positions[j] = len(self.labels)
            self.labels.append(("e", j))
        self._perms: Dict[Element, List[int]] = {}

    @property
    def size(self) -> int:
        return len(self.labels)

    def position(self, J: FrozenSet[int], g: Sequence[int]) -> int:
        """g·x_J 的位置"""
        return self.index[(J, self.frame.coset_rep(J, g))]

    def x_positions(self) -> List[int]:
        return list(range(self.x_full))

    def permutation(self, g: Sequence[int]) -> List[int]:
        """perm[a] 为 g·(第 a 个基向量) 的位置"""
        g = self.frame.reduce(g)
        if g not in self._perms:
            perm = []
            for kind, data in self.labels:
                if kind == "x":
                    J, rep = data
                    perm.append(self.position(J, self.frame.add(g, rep)))
                else:
                    perm.append(len(perm))
            self._perms[g] = perm
        return self._perms[g]


def presentation_relations(free: FreeModuleIndex) -> Rows:
    """关系族 (R1) 与 (R2) 的行"""
    frame = free.frame
    N = free.size
    rows: Rows = []
    for J in free.subsets:
        for j in sorted(free.full - J):
            Jj = J | {j}
            if Jj == free.full:
                continue
            g_j = frame.generator(j)
            lam_inv = frame.neg(frame.lambdas[j - 1])
            for h in frame.coset_reps(Jj):
                row = [0] * N
                for a in range(frame.orders[j - 1]):
                    row[free.position(J, frame.add(h, frame.scale(a, g_j)))] += 1
                row[free.position(Jj, h)] -= 1
                row[free.position(Jj, frame.add(h, lam_inv))] += 1
                rows.append(row)
    for j in range(1, frame.s + 1):
        row = [0] * N
        rest = free.full - {j}
        g_j = frame.generator(j)
        for a in range(frame.orders[j - 1]):
            row[free.position(rest, frame.scale(a, g_j))] += 1
        row[free.e_positions[j]] -= frame.orders[j - 1]
        rows.append(row)
    return rows


class SMModule:
    """由表现构造的无挠 Z[G]-格

    使用方式：
        ```python
        U = build_U(frame)
        print(U.rank)                       # |G| + s
        rho = U.rho(frozenset())            # ρ_∅
        print(U.is_unit(U.act_sigma(1, rho)))
        ```
    """

    def __init__(self, frame: GroupData, free: FreeModuleIndex, relations: Rows, kills_e: bool = False):
        """
        Args:
            frame: 群框架
            free: 自由模 F 的编号
            relations: 关系行（F 坐标）
            kills_e: 是否同时模去 e_j（用于 U'）
        """
        self.frame = frame
        self.free = free
        self.relations = relations
        self.kills_e = kills_e
        N = free.size
        kernel = integer_kernel(relations, N)
        self.rank = len(kernel)
        self.C: Rows = transpose(kernel, N) if kernel else [[] for _ in range(N)]
        result = hnf(self.C) if kernel else None
        if result is not None:
            top = result.H.rows[: self.rank]
            if top != identity(self.rank):
                raise InternalError("表现核的行不生成 Z^rank", anchor="SMModule")
            self.L: Rows = result.U.rows[: self.rank]
        else:
            self.L = []
        self._matrices: Dict[Element, Rows] = {}
        self._valuations: Optional[List[Vector]] = None
        self.projection: Optional[Rows] = None
        self.base_frame: Optional[GroupData] = None
        self.m: Optional[int] = None
        logger.info("SMModule: ambient F=%d, rank=%d, relations=%d", N, self.rank, len(relations))

    def __repr__(self) -> str:
        return f"SMModule(rank={self.rank}, s={self.frame.s}, kills_e={self.kills_e})"

    # 向量

    @property
    def ambient_rank(self) -> int:
        return self.rank

    def zero(self) -> Vector:
        return [0] * self.rank

    def image(self, f: Sequence[int]) -> Vector:
        """F 中向量在 U 中的像 f·C"""
        return vec_mat(f, self.C, self.rank)

    def basis_image(self, position: int) -> Vector:
        return list(self.C[position])

    def rho(self, J) -> Vector:
        """ρ_J；J = I 时为 s(G)"""
        J = frozenset(J)
        if J == self.free.full:
            return self.basis_image(self.free.x_full)
        return self.basis_image(self.free.position(J, self.frame.identity()))

    @property
    def sG(self) -> Vector:
        return self.basis_image(self.free.x_full)

    def e(self, j: int) -> Vector:
        return self.basis_image(self.free.e_positions[j])

    def lift_to_free(self, u: Sequence[int]) -> Vector:
        return vec_mat(u, self.L, self.free.size)

    # 群作用

    def act(self, g: Sequence[int], u: Sequence[int]) -> Vector:
        """g·u"""
        return vec_mat(u, self.action_matrix(g), self.rank)

    def act_on_basis(self, g: Sequence[int], position: int) -> Vector:
        """g 作用于 F 的第 position 个基向量的像"""
        return self.basis_image(self.free.permutation(g)[position])

    def action_matrix(self, g: Sequence[int]) -> Rows:
        """L·P_g·C（行向量约定）"""
        g = self.frame.reduce(g)
        if g not in self._matrices:
            perm = self.free.permutation(g)
            permuted = [self.C[perm[a]] for a in range(self.free.size)]
            self._matrices[g] = matmul(self.L, permuted, self.rank)
        return self._matrices[g]

    def generator_matrices(self) -> List[Rows]:
        return [self.action_matrix(self.frame.generator(j)) for j in range(1, self.frame.s + 1)]

    def sigma_matrix(self) -> Rows:
        """提升 ŝ 的作用矩阵"""
        return self.action_matrix(self.frame.lift)

    def act_sigma(self, e: int, u: Sequence[int]) -> Vector:
        """ŝ^e·u"""
        return self.act(self.frame.lift_power(e), u)

    def act_ring(self, element: GroupRingElement, u: Sequence[int]) -> Vector:
        """群环元素经 ŝ 作用：Σ c_e·ŝ^e·u"""
        result = self.zero()
        current = list(u)
        S = self.sigma_matrix()
        last = 0
        for e, c in element.terms():
            while last < e:
                current = vec_mat(current, S, self.rank)
                last += 1
            result = add_vec(result, scale_vec(c, current))
        return result

    def ring_matrix(self, element: GroupRingElement) -> Rows:
        """群环元素经 ŝ 作用的矩阵"""
        return [self.act_ring(element, row) for row in identity(self.rank)]

    def group_sum(self, elements: Sequence[Element], u: Sequence[int]) -> Vector:
        result = self.zero()
        for g in elements:
            result = add_vec(result, self.act(g, u))
        return result

    def orbit_sum(self, elements: Sequence[Element], position: int) -> Vector:
        """Σ_g g·(F 的第 position 个基向量的像)，无需作用矩阵"""
        result = self.zero()
        for g in elements:
            result = add_vec(result, self.act_on_basis(g, position))
        return result

    def action_lattice(self) -> ActionLattice:
        return ActionLattice(Lattice.full(self.rank), self.generator_matrices())

    # 赋值泛函

    def valuation_vectors(self) -> List[Vector]:
        """v_1..v_s 在 U 坐标下的表示"""
        if self.kills_e:
            raise InvalidInputError("U' 上没有赋值泛函", anchor="valuation_functionals")
        if self._valuations is None:
            self._valuations = [
                [sum(row[a] * x for a, x in enumerate(v) if x) for row in self.L]
                for v in free_valuations(self.free)
            ]
        return self._valuations

    def valuations(self, u: Sequence[int]) -> List[int]:
        return [sum(a * b for a, b in zip(u, v)) for v in self.valuation_vectors()]

    def is_unit(self, u: Sequence[int]) -> bool:
        return not any(self.valuations(u))

    # 子格与诊断

    def psi_part(self) -> Lattice:
        """Ψ 部分：span(G·ρ_J : J ⊊ I)"""
        vectors = [self.C[a] for a in self.free.x_positions()]
        return Lattice.from_generators(vectors, self.rank)

    def expected_rank(self) -> int:
        if self.kills_e:
            return self.frame.group_order
        return self.frame.group_order + self.frame.s

    def rank_diagnostic(self) -> Dict[str, Any]:
        expected = self.expected_rank()
        ok = expected == self.rank
        if not ok:
            logger.warning("秩诊断: rank=%d，期望 %d（退化的 λ）", self.rank, expected)
        return {"rank": self.rank, "expected": expected, "ok": ok}

    def checksum(self) -> str:
        """表现核 HNF 基的摘要"""
        return Lattice(self.free.size, transpose(self.C, self.rank) if self.rank else []).checksum()

    def summary(self) -> Dict[str, Any]:
        return {
            "free_rank": self.free.size,
            "relations": len(self.relations),
            "rank": self.rank,
            "rank_diagnostic": self.rank_diagnostic(),
            "checksum": self.checksum(),
        }


def free_valuations(free: FreeModuleIndex) -> List[Vector]:
    """F 上的 v_j：[I-{j}, ·] 与 e_j 取 1，其余为 0"""
    vectors = []
    for j in range(1, free.frame.s + 1):
        rest = free.full - {j}
        v = [0] * free.size
        for rep in free.frame.coset_reps(rest):
            v[free.index[(rest, rep)]] = 1
        v[free.e_positions[j]] = 1
        vectors.append(v)
    return vectors


def build_U(frame: GroupData) -> SMModule:
    """构造 U

    Args:
        frame: 验证后的框架（也可以是扩张后的框架）

    Returns:
        SMModule；秩与 |G| + s 不符时只记录诊断
    """
    free = FreeModuleIndex(frame)
    relations = presentation_relations(free)
    U = SMModule(frame, free, relations)
    U.rank_diagnostic()
    return U


def project_Uprime(U: SMModule) -> SMModule:
    """U' = π(U)：U 模去 span{e_j} 的饱和化

    返回的模带有 projection 矩阵 π = L·C'（U 坐标 → U' 坐标）。
    """
    free = U.free
    kill = []
    for j in range(1, U.frame.s + 1):
        row = [0] * free.size
        row[free.e_positions[j]] = 1
        kill.append(row)
    Uprime = SMModule(U.frame, free, U.relations + kill, kills_e=True)
    Uprime.projection = matmul(U.L, Uprime.C, Uprime.rank)
    return Uprime


def project(U: SMModule, Uprime: SMModule, u: Sequence[int]) -> Vector:
    if Uprime.projection is None:
        raise InvalidInputError("该模不是 project_Uprime 的结果", anchor="project")
    return vec_mat(u, Uprime.projection, Uprime.rank)


def relation_defects(U: SMModule) -> List[Dict[str, Any]]:
    """在 U 中逐条验证 (R1)、(R2)，返回不成立的关系"""
    frame = U.frame
    full = U.free.full
    defects = []
    for J in U.free.subsets:
        pos_J = U.free.position(J, frame.identity())
        for j in sorted(full - J):
            Jj = J | {j}
            if Jj == full:
                continue
            g_j = frame.generator(j)
            norm = U.orbit_sum([frame.scale(a, g_j) for a in range(frame.orders[j - 1])], pos_J)
            pos_Jj = U.free.position(Jj, frame.identity())
            moved = U.act_on_basis(frame.neg(frame.lambdas[j - 1]), pos_Jj)
            twisted = [a - b for a, b in zip(U.basis_image(pos_Jj), moved)]
            if norm != twisted:
                defects.append({"relation": "R1", "J": sorted(J), "j": j})
    if not U.kills_e:
        for j in range(1, frame.s + 1):
            g_j = frame.generator(j)
            t = frame.orders[j - 1]
            pos = U.free.position(full - {j}, frame.identity())
            norm = U.orbit_sum([frame.scale(a, g_j) for a in range(t)], pos)
            if norm != scale_vec(t, U.e(j)):
                defects.append({"relation": "R2", "j": j})
    return defects


def valuation_defects(U: SMModule) -> List[int]:
    """v_j 在关系行上的取值必须为 0；返回违反的行号"""
    functionals = free_valuations(U.free)
    bad = []
    for i, row in enumerate(U.relations):
        if any(sum(a * b for a, b in zip(row, v)) for v in functionals):
            bad.append(i)
    return bad


def direct_sum_check(U: SMModule) -> Dict[str, Any]:
    """span(G·ρ_J : J ⊊ I) ∩ Z·s(G) = 0"""
    psi = U.psi_part()
    joined = Lattice.from_generators(psi.basis + [U.sG], U.rank)
    ok = joined.rank == psi.rank + 1
    if not ok:
        logger.warning("直和检查失败: rank(Ψ)=%d", psi.rank)
    return {"psi_rank": psi.rank, "joined_rank": joined.rank, "ok": ok}


def require_rank(U: SMModule) -> None:
    """秩诊断失败时抛出 DEGENERATE_LAMBDA"""
    diag = U.rank_diagnostic()
    if not diag["ok"]:
        raise ModelDiscrepancyError(
            f"rank(U) = {diag['rank']} ≠ |G| + s = {diag['expected']}",
            anchor="build_U",
            details=diag,
            kind=ErrorKind.DEGENERATE_LAMBDA,
        )


def matrix_rank(rows: Rows, cols: int) -> int:
    return rank(rows, cols) if rows else 0


def valuation_functionals(U: SMModule) -> List[Vector]:
    """v_1..v_s（U 坐标下的行向量）"""
    return U.valuation_vectors()


def is_unit(U: SMModule, x: Sequence[int]) -> bool:
    return U.is_unit(x)
