# -*- coding: utf-8 -*-
"""以 HNF 为规范表示的整数格

两个格相等当且仅当其 HNF 基矩阵相等。
"""

import hashlib
import json
import logging
from typing import List, Optional, Sequence, Union

from ..errors import InvalidInputError, NotSublatticeError
from .matrix import (
    Rows,
    determinant_abs,
    hnf_basis,
    integer_kernel,
    left_kernel,
    matmul,
    vec_mat,
)

logger = logging.getLogger(__name__)


class InfiniteIndex:
    """秩下降时的格指数"""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITE"

    def __str__(self) -> str:
        return "INFINITE"


INFINITE = InfiniteIndex()

IndexValue = Union[int, InfiniteIndex]


class Lattice:
    """Z^n 中的子格

    使用方式：
        ```python
        big = Lattice.full(2)
        small = Lattice.from_generators([[3, 0], [0, 3]], 2)
        print(lattice_index(small, big))  # 9
        ```
    """

    def __init__(self, ambient_rank: int, basis: Sequence[Sequence[int]]):
        """
        Args:
            ambient_rank: 环境空间维数
            basis: 已是 HNF 的基（行向量）
        """
        self.ambient_rank = ambient_rank
        self.basis: Rows = [list(row) for row in basis]
        self._pivots = [next(j for j, x in enumerate(row) if x) for row in self.basis]

    @classmethod
    def from_generators(cls, vectors: Sequence[Sequence[int]], ambient_rank: int) -> "Lattice":
        """由任意生成元构造（自动化为 HNF）"""
        vectors = [list(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_rank:
                raise InvalidInputError("生成元维数与环境空间不符", anchor="Lattice")
        return cls(ambient_rank, hnf_basis(vectors, ambient_rank) if vectors else [])

    @classmethod
    def full(cls, n: int) -> "Lattice":
        return cls(n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> "Lattice":
        return cls(n, [])

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Lattice)
            and self.ambient_rank == other.ambient_rank
            and self.basis == other.basis
        )

    def __repr__(self) -> str:
        return f"Lattice(rank={self.rank}, ambient_rank={self.ambient_rank})"

    def coordinates(self, v: Sequence[int]) -> Optional[List[int]]:
        """v 在 HNF 基下的整数坐标，v 不在格中时返回 None"""
        if len(v) != self.ambient_rank:
            raise InvalidInputError("向量维数与环境空间不符", anchor="Lattice.coordinates")
        rest = list(v)
        coords = []
        for row, c in zip(self.basis, self._pivots):
            if rest[c] % row[c]:
                return None
            q = rest[c] // row[c]
            coords.append(q)
            if q:
                rest = [a - q * b for a, b in zip(rest, row)]
        if any(rest):
            return None
        return coords

    def contains(self, v: Sequence[int]) -> bool:
        return self.coordinates(v) is not None

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(self.contains(v) for v in other.basis)

    def vector(self, coords: Sequence[int]) -> List[int]:
        """由坐标还原环境向量"""
        return vec_mat(coords, self.basis, self.ambient_rank)

    def __add__(self, other: "Lattice") -> "Lattice":
        return Lattice.from_generators(self.basis + other.basis, self.ambient_rank)

    def checksum(self) -> str:
        """HNF 基的 sha256 摘要，用于回归比对"""
        payload = json.dumps(
            {"ambient_rank": self.ambient_rank, "basis": self.basis}, separators=(",", ":")
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    def restrict(self, condition_columns: Sequence[Sequence[int]]) -> "Lattice":
        """{x ∈ L : x·C = 0}，C 为 ambient_rank × t 的条件矩阵"""
        if not self.basis:
            return self
        images = matmul(self.basis, condition_columns)
        t = len(condition_columns[0]) if condition_columns else 0
        if t == 0:
            return self
        kernel = left_kernel(images, t)
        vectors = [vec_mat(c, self.basis, self.ambient_rank) for c in kernel]
        return Lattice.from_generators(vectors, self.ambient_rank)

    def to_dict(self) -> dict:
        return {
            "ambient_rank": self.ambient_rank,
            "rank": self.rank,
            "basis": self.basis,
            "checksum": self.checksum(),
        }


class ActionLattice:
    """带有限交换群作用的格

    作用采用行向量约定 x ↦ x·A。
    """

    def __init__(self, lattice: Lattice, generators: Sequence[Sequence[Sequence[int]]]):
        """
        Args:
            lattice: 承载格
            generators: 环境空间上的作用矩阵列表
        """
        self.lattice = lattice
        self.generators = [[list(row) for row in g] for g in generators]

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def __repr__(self) -> str:
        return f"ActionLattice(rank={self.rank}, generators={len(self.generators)})"

    def act(self, index: int, v: Sequence[int]) -> List[int]:
        return vec_mat(v, self.generators[index], self.lattice.ambient_rank)

    def restricted_matrix(self, index: int) -> Rows:
        """第 index 个生成元在格坐标下的矩阵"""
        rows = []
        for b in self.lattice.basis:
            coords = self.lattice.coordinates(self.act(index, b))
            if coords is None:
                raise InvalidInputError("作用不保持格", anchor="ActionLattice")
            rows.append(coords)
        return rows

    def is_stable(self) -> bool:
        return all(
            self.lattice.contains(self.act(i, b))
            for i in range(len(self.generators))
            for b in self.lattice.basis
        )


def saturate(L: Lattice) -> Lattice:
    """饱和化：{x : 存在 m ≥ 1 使 m·x ∈ L}

    取两次整数核，结果与 L 同秩且商无挠。
    """
    n = L.ambient_rank
    if L.rank == 0:
        return Lattice.zero(n)
    orthogonal = integer_kernel(L.basis, n)
    if not orthogonal:
        return Lattice.full(n)
    return Lattice(n, integer_kernel(orthogonal, n))


def lattice_index(L1: Lattice, L2: Lattice) -> IndexValue:
    """[L2 : L1]

    Args:
        L1: 子格
        L2: 母格

    Returns:
        正整数指数；秩下降时返回 INFINITE
    """
    if L1.ambient_rank != L2.ambient_rank:
        raise InvalidInputError("两格的环境空间不同", anchor="lattice_index")
    coords = []
    for v in L1.basis:
        c = L2.coordinates(v)
        if c is None:
            raise NotSublatticeError("L1 不包含于 L2", anchor="lattice_index")
        coords.append(c)
    if L1.rank < L2.rank:
        return INFINITE
    if L1.rank == 0:
        return 1
    return determinant_abs(coords)


def intersect(L1: Lattice, L2: Lattice) -> Lattice:
    """两格之交"""
    n = L1.ambient_rank
    if L1.rank == 0 or L2.rank == 0:
        return Lattice.zero(n)
    stacked = L1.basis + [[-x for x in row] for row in L2.basis]
    kernel = left_kernel(stacked, n)
    vectors = [vec_mat(c[: L1.rank], L1.basis, n) for c in kernel]
    return Lattice.from_generators(vectors, n)
