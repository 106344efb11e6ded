# -*- coding: utf-8 -*-
"""商环 R = Z[Γ]/N_n·Z[Γ]

R ≅ Z[X]/(f)，f(X) = Σ_{i=0}^{p^k/n - 1} X^{in} 为首一多项式，
元素的规范代表元为对 f 做带余除法后的余式（次数 < p^k - n）。
"""

import logging
from typing import List, Sequence

from sympy import Poly, QQ, Symbol, ZZ

from ..errors import InvalidInputError
from .ring import CyclicGroupRing, GroupRingElement

logger = logging.getLogger(__name__)

X = Symbol("X")


class QuotientRing:
    """商环 Z[Γ]/N_n

    使用方式：
        ```python
        ring = CyclicGroupRing(3, 2)
        quotient = QuotientRing(ring, 3)
        x = quotient.reduce(ring.sigma(6))
        print(x)  # -1 - s^3
        ```
    """

    def __init__(self, ring: CyclicGroupRing, n: int):
        """
        Args:
            ring: 群环 Z[Γ]
            n: p^{k-1} 的因子
        """
        if n < 1 or (ring.order // ring.p) % n != 0:
            raise InvalidInputError(
                f"n={n} 不整除 p^(k-1)={ring.order // ring.p}", anchor="quotient_reduce"
            )
        self.ring = ring
        self.n = n
        self.dimension = ring.order - n
        self.modulus = Poly.from_dict(
            {(i * n,): 1 for i in range(ring.order // n)}, X, domain=ZZ
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, QuotientRing) and (self.ring, self.n) == (other.ring, other.n)

    def __hash__(self) -> int:
        return hash((self.ring, self.n))

    def __repr__(self) -> str:
        return f"QuotientRing(order={self.ring.order}, n={self.n})"

    def _poly(self, coeffs: Sequence[int]) -> Poly:
        return Poly.from_dict(
            {(e,): int(c) for e, c in enumerate(coeffs) if c}, X, domain=ZZ
        )

    def _from_poly(self, poly: Poly) -> "QuotientRingElement":
        remainder = poly.rem(self.modulus)
        coeffs = [0] * self.dimension
        for (e,), c in remainder.terms():
            coeffs[e] = int(c)
        return QuotientRingElement(self, coeffs)

    def reduce(self, a: GroupRingElement) -> "QuotientRingElement":
        """把 Z[Γ] 元素约化为规范代表元"""
        if a.ring != self.ring:
            raise InvalidInputError("群环不一致", anchor="quotient_reduce")
        return self._from_poly(self._poly(a.coeffs))

    def element(self, coeffs: Sequence[int]) -> "QuotientRingElement":
        return self._from_poly(self._poly(coeffs))

    def one(self) -> "QuotientRingElement":
        return self.reduce(self.ring.one())

    def shift_matrix(self) -> List[List[int]]:
        """σ 乘法在基 1, X, …, X^{d-1} 下的矩阵（行向量约定）"""
        return self.reduce(self.ring.sigma(1)).multiplication_matrix()


class QuotientRingElement:
    """R 中的元素，系数为规范代表元"""

    __slots__ = ("quotient", "coeffs")

    def __init__(self, quotient: QuotientRing, coeffs: Sequence[int]):
        if len(coeffs) != quotient.dimension:
            raise InvalidInputError("代表元长度与 p^k - n 不符", anchor="QuotientRingElement")
        object.__setattr__(self, "quotient", quotient)
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("QuotientRingElement is immutable")

    @property
    def ring(self) -> CyclicGroupRing:
        return self.quotient.ring

    @property
    def n(self) -> int:
        return self.quotient.n

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QuotientRingElement)
            and other.quotient == self.quotient
            and other.coeffs == self.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.quotient, self.coeffs))

    def __repr__(self) -> str:
        return f"QuotientRingElement({self.lift()!s}, n={self.n})"

    def __str__(self) -> str:
        return str(self.lift())

    def __add__(self, other: "QuotientRingElement") -> "QuotientRingElement":
        return QuotientRingElement(
            self.quotient, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __sub__(self, other: "QuotientRingElement") -> "QuotientRingElement":
        return QuotientRingElement(
            self.quotient, [a - b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __mul__(self, other: "QuotientRingElement") -> "QuotientRingElement":
        if other.quotient != self.quotient:
            raise InvalidInputError("商环不一致", anchor="quotient_mul")
        q = self.quotient
        return q._from_poly(q._poly(self.coeffs) * q._poly(other.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def lift(self) -> GroupRingElement:
        """规范代表元在 Z[Γ] 中的提升"""
        padded = list(self.coeffs) + [0] * self.n
        return GroupRingElement(self.ring, padded)

    def multiplication_matrix(self) -> List[List[int]]:
        """乘以该元素的矩阵，第 i 行为 X^i·a 的规范系数"""
        q = self.quotient
        rows = []
        current = self
        shift = q.reduce(q.ring.sigma(1))
        for _ in range(q.dimension):
            rows.append(list(current.coeffs))
            current = current * shift
        return rows


def quotient_reduce(a: GroupRingElement, n: int) -> QuotientRingElement:
    """把 a 约化到 R = Z[Γ]/N_n

    Args:
        a: Z[Γ] 中的元素
        n: p^{k-1} 的因子

    Returns:
        规范代表元
    """
    return QuotientRing(a.ring, n).reduce(a)


def is_nonzerodivisor(a: QuotientRingElement) -> bool:
    """在 Q 上计算 gcd(a(X), f(X))，等于 1 时 a 为非零因子"""
    q = a.quotient
    if a.is_zero():
        return False
    g = q._poly(a.coeffs).set_domain(QQ).gcd(q.modulus.set_domain(QQ))
    return g.degree() == 0
