# -*- coding: utf-8 -*-
"""由框架导出的组合量：n_j、M_i、μ_i、跳跃、r、c_j 与各层数据"""

import logging
from math import gcd
from typing import Any, Dict, FrozenSet, List, Optional

from ..errors import ModelDiscrepancyError
from ..group_ring import (
    CyclicGroupRing,
    GroupRingElement,
    exact_quotient,
    one_minus_sigma,
    product,
)
from .instance import Element, GroupData, log_p

logger = logging.getLogger(__name__)


def decomposition_index(frame: GroupData, j: int) -> int:
    """n_j = [Z/p^k : ⟨res λ_j, res T_j⟩]（j 从 1 开始）"""
    return level_decomposition_index(frame, j, frame.k)


def level_decomposition_index(frame: GroupData, j: int, i: int) -> int:
    """第 i 层的分解指数 gcd(res λ_j, p^k/t_j, p^i)"""
    res_lambda = frame.res(frame.lambdas[j - 1])
    return gcd(gcd(res_lambda, frame.pk // frame.orders[j - 1]), frame.p ** i)


def decomposition_indices(frame: GroupData) -> List[int]:
    return [decomposition_index(frame, j) for j in range(1, frame.s + 1)]


def ramified_set(frame: GroupData, i: int) -> FrozenSet[int]:
    """M_i = {j : t_j > p^{k-i}}，M_0 为空集"""
    bound = frame.p ** (frame.k - i)
    return frozenset(j for j, t in enumerate(frame.orders, start=1) if t > bound)


def ramified_sets(frame: GroupData) -> List[FrozenSet[int]]:
    """(M_1, …, M_k)"""
    return [ramified_set(frame, i) for i in range(1, frame.k + 1)]


class JumpProfile:
    """μ_i、跳跃、r、i* 与 [L:L̃]"""

    def __init__(self, mu: List[int], jumps: List[int], r: int, i_star: int, L_index: int):
        self.mu = mu
        self.jumps = jumps
        self.r = r
        self.i_star = i_star
        self.L_index = L_index

    def __repr__(self) -> str:
        return f"JumpProfile(mu={self.mu}, jumps={self.jumps}, r={self.r})"

    def block_sizes(self, p: int) -> List[int]:
        """跳跃基中各块的大小 p^{s_t} - p^{s_{t-1}}"""
        return [p ** b - p ** a for a, b in zip(self.jumps, self.jumps[1:])]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "mu": self.mu,
            "jumps": self.jumps,
            "r": self.r,
            "i_star": self.i_star,
            "L_index": self.L_index,
        }


def jump_profile(frame: GroupData) -> JumpProfile:
    n = decomposition_indices(frame)
    sets = ramified_sets(frame)
    mu = [n[max(M) - 1] for M in sets]
    jumps = {0, frame.k}
    for i in range(1, frame.k):
        if mu[i - 1] < mu[i]:
            jumps.add(i)
    ordered = sorted(jumps)
    r = max(j for j in ordered if j < frame.k)
    i_star = max(i for i in range(frame.k + 1) if len(ramified_set(frame, i)) <= 1)
    profile = JumpProfile(mu, ordered, r, i_star, frame.p ** (frame.k - i_star))
    logger.debug("jump_profile: %r", profile)
    return profile


def r_characterization(frame: GroupData, check: bool = True) -> int:
    """r' = k - log_p max{t_j : n_j = n_s}

    Raises:
        ModelDiscrepancyError: 与跳跃给出的 r 不一致
    """
    n = decomposition_indices(frame)
    top = max(n)
    largest = max(t for t, nj in zip(frame.orders, n) if nj == top)
    r_prime = frame.k - log_p(largest, frame.p)
    if check:
        r = jump_profile(frame).r
        if r != r_prime:
            raise ModelDiscrepancyError(
                f"r 的两种计算不一致: 跳跃给出 {r}，刻画给出 {r_prime}",
                anchor="r_characterization",
                details={"r_jumps": r, "r_characterization": r_prime},
            )
    return r_prime


def compute_c(frame: GroupData, j: int) -> int:
    """最小的 c ≥ 1 使 -c·n_j ≡ res λ_j (mod p^i)，i = k - log_p t_j"""
    i = frame.k - log_p(frame.orders[j - 1], frame.p)
    if i == 0:
        return 1
    modulus = frame.p ** i
    n = decomposition_index(frame, j)
    target = frame.res(frame.lambdas[j - 1]) % modulus
    for c in range(1, modulus + 1):
        if (-c * n - target) % modulus == 0:
            if c % frame.p == 0:
                raise ModelDiscrepancyError(
                    f"c_{j} = {c} 被 p 整除", anchor="compute_c", details={"j": j, "c": c}
                )
            return c
    raise ModelDiscrepancyError(
        f"c_{j} 无解", anchor="compute_c", details={"j": j, "n": n, "res_lambda": target}
    )


class LevelData:
    """第 i 层 L_i 的数据

    y 仅在 |M_i| ≥ 2 时有定义（|M_i| = 2 时为空积 1）。
    """

    def __init__(
        self,
        i: int,
        M: FrozenSet[int],
        B: List[Element],
        level_n: int,
        y: Optional[GroupRingElement],
        z: GroupRingElement,
        c: List[int],
        n: List[int],
    ):
        self.i = i
        self.M = M
        self.B = B
        self.level_n = level_n
        self.y = y
        self.z = z
        self.c = c
        self.n = n

    @property
    def singleton(self) -> bool:
        return len(self.M) == 1

    @property
    def ring(self) -> CyclicGroupRing:
        return self.z.ring

    def level_ring(self) -> CyclicGroupRing:
        """Z[Gal(L_i/K)]"""
        return CyclicGroupRing(self.ring.p, self.i)

    def middle(self) -> List[int]:
        """M_i 中去掉 1 与 max M_i 后的下标"""
        top = max(self.M)
        return sorted(j for j in self.M if 1 < j < top)

    def __repr__(self) -> str:
        return f"LevelData(i={self.i}, M={sorted(self.M)}, level_n={self.level_n})"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "i": self.i,
            "M": sorted(self.M),
            "order_B_i": len(self.B),
            "level_n": self.level_n,
            "y": None if self.y is None else str(self.y),
            "z": str(self.z),
            "singleton": self.singleton,
        }


def level_data(frame: GroupData, i: int) -> LevelData:
    if not 1 <= i <= frame.k:
        raise ModelDiscrepancyError(f"层次 {i} 超出 1..{frame.k}", anchor="level_data")
    M = ramified_set(frame, i)
    n = decomposition_indices(frame)
    c = [compute_c(frame, j) for j in range(1, frame.s + 1)]
    ring = frame.ring
    level_n = max(level_decomposition_index(frame, j, i) for j in M)
    top = max(M)
    y = None
    if len(M) >= 2:
        y = product(
            ring, (one_minus_sigma(ring, c[j - 1] * n[j - 1]) for j in sorted(M) if 1 < j < top)
        )
    z = one_minus_sigma(ring, c[top - 1] * n[top - 1])
    return LevelData(i, M, frame.level_kernel(i), level_n, y, z, c, n)


def associate_witnesses(frame: GroupData) -> List[Dict[str, Any]]:
    """(1 - σ^{c_j n_j}) 与 (1 - σ^{n_j}) 互相整除的商见证

    Raises:
        ModelDiscrepancyError: 某一方向不可整除
    """
    ring = frame.ring
    records = []
    for j in range(1, frame.s + 1):
        n = decomposition_index(frame, j)
        c = compute_c(frame, j)
        a = one_minus_sigma(ring, c * n)
        b = one_minus_sigma(ring, n)
        forward = exact_quotient(a, b)
        backward = exact_quotient(b, a)
        if forward is None or backward is None:
            raise ModelDiscrepancyError(
                f"1 - σ^{c * n} 与 1 - σ^{n} 不相伴", anchor="associate_witnesses", details={"j": j}
            )
        records.append({"j": j, "c": c, "n": n, "forward": str(forward), "backward": str(backward)})
    return records


def frame_summary(frame: GroupData) -> Dict[str, Any]:
    """derive 命令使用的汇总"""
    profile = jump_profile(frame)
    return {
        "n": decomposition_indices(frame),
        "M": [sorted(M) for M in ramified_sets(frame)],
        "c": [compute_c(frame, j) for j in range(1, frame.s + 1)],
        "jump_profile": profile.to_dict(),
        "r_characterization": r_characterization(frame),
        "levels": [level_data(frame, i).to_dict() for i in range(1, frame.k + 1)],
    }
