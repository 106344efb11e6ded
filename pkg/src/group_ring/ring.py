# -*- coding: utf-8 -*-
"""循环群群环 Z[Γ] 的精确运算

Γ = ⟨σ⟩ 为 p^k 阶循环群，元素以长度 p^k 的整数系数向量表示，
第 i 个分量为 σ^i 的系数。
"""

import logging
from enum import Enum
from math import gcd
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from sympy import isprime

from ..errors import InvalidInputError

logger = logging.getLogger(__name__)


class SpecialKind(Enum):
    """特殊群环元素类型"""
    NORM = "norm"
    DELTA = "delta"


class CyclicGroupRing:
    """p^k 阶循环群的整群环

    使用方式：
        ```python
        ring = CyclicGroupRing(3, 2)
        a = ring.sigma(3)
        b = ring.one() - a
        print(b)  # 1 - s^3
        ```
    """

    def __init__(self, p: int, k: int):
        """
        Args:
            p: 奇素数
            k: 正整数指数
        """
        if p < 3 or not isprime(p):
            raise InvalidInputError(f"p 必须是奇素数: {p}", anchor="CyclicGroupRing.p")
        if k < 1:
            raise InvalidInputError(f"k 必须为正整数: {k}", anchor="CyclicGroupRing.k")
        self.p = p
        self.k = k
        self.order = p ** k

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclicGroupRing) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash((self.p, self.k))

    def __repr__(self) -> str:
        return f"CyclicGroupRing(p={self.p}, k={self.k})"

    @property
    def dimension(self) -> int:
        """作为 Z-模的秩"""
        return self.order

    def element(self, coeffs: Sequence[int]) -> "GroupRingElement":
        """由系数向量构造元素"""
        return GroupRingElement(self, coeffs)

    def zero(self) -> "GroupRingElement":
        return GroupRingElement(self, [0] * self.order)

    def one(self) -> "GroupRingElement":
        return self.sigma(0)

    def scalar(self, c: int) -> "GroupRingElement":
        return self.sigma(0) * c

    def sigma(self, e: int) -> "GroupRingElement":
        """返回 σ^e（指数按 p^k 取模）"""
        coeffs = [0] * self.order
        coeffs[e % self.order] = 1
        return GroupRingElement(self, coeffs)

    def from_terms(self, terms: Dict[int, int]) -> "GroupRingElement":
        """由 {指数: 系数} 构造元素，指数按 p^k 取模"""
        coeffs = [0] * self.order
        for e, c in terms.items():
            coeffs[e % self.order] += c
        return GroupRingElement(self, coeffs)

    def shift_matrix(self) -> List[List[int]]:
        """σ 左乘的矩阵（行向量约定：r ↦ r·S 给出 σ·r 的系数）"""
        return self.sigma(1).multiplication_matrix()

    def contains_divisor(self, d: int) -> bool:
        """判断 d 是否整除 p^k"""
        return d > 0 and self.order % d == 0


class GroupRingElement:
    """Z[Γ] 中的元素（不可变）"""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: CyclicGroupRing, coeffs: Sequence[int]):
        """
        Args:
            ring: 所属群环
            coeffs: 长度恰为 p^k 的整数系数
        """
        if len(coeffs) != ring.order:
            raise InvalidInputError(
                f"系数长度 {len(coeffs)} 与群阶 {ring.order} 不符",
                anchor="GroupRingElement.coeffs",
            )
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("GroupRingElement is immutable")

    def _check(self, other: "GroupRingElement"):
        if not isinstance(other, GroupRingElement) or other.ring != self.ring:
            raise InvalidInputError("群环不一致", anchor="gr_mul")

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._check(other)
        return GroupRingElement(self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._check(other)
        return GroupRingElement(self.ring, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement(self.ring, [-a for a in self.coeffs])

    def __mul__(self, other) -> "GroupRingElement":
        if isinstance(other, int):
            return GroupRingElement(self.ring, [a * other for a in self.coeffs])
        return gr_mul(self, other)

    def __rmul__(self, other) -> "GroupRingElement":
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, exponent: int) -> "GroupRingElement":
        result = self.ring.one()
        base = self
        while exponent > 0:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupRingElement)
            and other.ring == self.ring
            and other.coeffs == self.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.ring, self.coeffs))

    def __repr__(self) -> str:
        return f"GroupRingElement({format_terms(self.coeffs)!r}, order={self.ring.order})"

    def __str__(self) -> str:
        return format_terms(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def augmentation(self) -> int:
        """系数和"""
        return sum(self.coeffs)

    def terms(self) -> Iterator[Tuple[int, int]]:
        """遍历非零项 (指数, 系数)"""
        for e, c in enumerate(self.coeffs):
            if c:
                yield e, c

    def multiplication_matrix(self) -> List[List[int]]:
        """乘以该元素的矩阵，第 i 行为 σ^i·a 的系数"""
        order = self.ring.order
        return [
            [self.coeffs[(j - i) % order] for j in range(order)]
            for i in range(order)
        ]

    def to_level(self, level_ring: CyclicGroupRing) -> "GroupRingElement":
        """沿商映射 Γ → Γ/Γ^{p^i} 把元素投到低阶群环"""
        if level_ring.p != self.ring.p or level_ring.k > self.ring.k:
            raise InvalidInputError("层次群环与原群环不兼容", anchor="to_level")
        return level_ring.from_terms(dict(self.terms()))

    def to_list(self) -> List[int]:
        return list(self.coeffs)


def gr_mul(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    """群环乘法（模 σ^{p^k} = 1 的循环卷积）

    Args:
        a: 左因子
        b: 右因子

    Returns:
        乘积 a·b
    """
    if not isinstance(a, GroupRingElement) or not isinstance(b, GroupRingElement):
        raise InvalidInputError("gr_mul 需要两个群环元素", anchor="gr_mul")
    if a.ring != b.ring:
        raise InvalidInputError(f"群环不一致: {a.ring} 与 {b.ring}", anchor="gr_mul")
    order = a.ring.order
    out = [0] * order
    b_terms = list(b.terms())
    for i, ca in a.terms():
        for j, cb in b_terms:
            out[(i + j) % order] += ca * cb
    return GroupRingElement(a.ring, out)


def special_element(ring: CyclicGroupRing, kind: SpecialKind, d: int) -> GroupRingElement:
    """范元素 N_d 与 Δ_d

    N_d = Σ_{i=1}^{p^k/d} σ^{id}，Δ_d = Σ_{i=1}^{p^k/d - 1} i·σ^{id}。

    Args:
        ring: 群环
        kind: NORM 或 DELTA
        d: p^k 的因子

    Returns:
        对应的群环元素
    """
    if not ring.contains_divisor(d):
        raise InvalidInputError(f"{d} 不整除 {ring.order}", anchor="special_element")
    count = ring.order // d
    if kind == SpecialKind.NORM:
        return ring.from_terms({i * d: 1 for i in range(1, count + 1)})
    return ring.from_terms({i * d: i for i in range(1, count)})


def norm_element(ring: CyclicGroupRing, d: int) -> GroupRingElement:
    return special_element(ring, SpecialKind.NORM, d)


def delta_element(ring: CyclicGroupRing, d: int) -> GroupRingElement:
    return special_element(ring, SpecialKind.DELTA, d)


def element_order(ring: CyclicGroupRing, e: int) -> int:
    """σ^e 在 Γ 中的阶"""
    return ring.order // gcd(e % ring.order, ring.order) if e % ring.order else 1


def cyclic_delta(ring: CyclicGroupRing, e: int) -> GroupRingElement:
    """任意指数的 Δ：Σ_{i=1}^{o-1} i·σ^{ie}，o 为 σ^e 的阶

    满足 (1 - σ^e)·cyclic_delta(e) = N_{gcd(e, p^k)} - o；e | p^k 时与 Δ_e 一致。
    """
    o = element_order(ring, e)
    terms: Dict[int, int] = {}
    for i in range(1, o):
        key = (i * e) % ring.order
        terms[key] = terms.get(key, 0) + i
    return ring.from_terms(terms)


def one_minus_sigma(ring: CyclicGroupRing, e: int) -> GroupRingElement:
    """1 - σ^e"""
    return ring.one() - ring.sigma(e)


def product(ring: CyclicGroupRing, factors: Iterable[GroupRingElement]) -> GroupRingElement:
    """群环元素之积，空积为 1"""
    result = ring.one()
    for f in factors:
        result = result * f
    return result


def exact_quotient(b: GroupRingElement, a: GroupRingElement) -> Optional[GroupRingElement]:
    """在 Z[Γ] 中求 q 使 a·q = b，不存在时返回 None"""
    from ..lattice.matrix import solve_integer, transpose

    if a.ring != b.ring:
        raise InvalidInputError("群环不一致", anchor="exact_quotient")
    solution = solve_integer(transpose(a.multiplication_matrix()), list(b.coeffs))
    if solution is None:
        return None
    return GroupRingElement(a.ring, solution.particular)


def format_terms(coeffs: Sequence[int], symbol: str = "s") -> str:
    """把系数向量格式化为升幂多项式字符串，如 2 + s - 2*s^3 - s^4"""
    pieces: List[str] = []
    for e, c in enumerate(coeffs):
        if c == 0:
            continue
        magnitude = abs(c)
        if e == 0:
            body = str(magnitude)
        else:
            power = symbol if e == 1 else f"{symbol}^{e}"
            body = power if magnitude == 1 else f"{magnitude}*{power}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces) if pieces else "0"
