# -*- coding: utf-8 -*-
"""整数矩阵与格的单元测试"""

import itertools
import random

import pytest

from src.errors import InvalidInputError, NotSublatticeError
from src.group_ring import CyclicGroupRing, QuotientRing
from src.lattice import (
    INFINITE,
    ActionLattice,
    Lattice,
    determinant_abs,
    hnf,
    hom_module,
    integer_kernel,
    intersect,
    lattice_index,
    saturate,
    snf,
    solve_integer,
)
from src.lattice.matrix import matmul


def _apply(A, x):
    return [sum(a * v for a, v in zip(row, x)) for row in A]


def _random_unimodular(rng, n):
    """单位阵经随机的行加法、交换与取负得到的幺模矩阵"""
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(8):
        i, j = rng.sample(range(n), 2)
        move = rng.randrange(3)
        if move == 0:
            q = rng.randint(-3, 3)
            U[i] = [a + q * b for a, b in zip(U[i], U[j])]
        elif move == 1:
            U[i], U[j] = U[j], U[i]
        else:
            U[i] = [-a for a in U[i]]
    return U


class TestHNF:
    """Hermite 正规形测试"""

    def test_small_example(self):
        """测试 [[2,4],[0,3]] 的 HNF"""
        result = hnf([[2, 4], [0, 3]])
        assert result.H.to_list() == [[2, 1], [0, 3]]
        assert result.rank == 2

    def test_transform(self):
        """测试 H = U·M"""
        M = [[3, 6, 1], [1, 2, 0], [4, 8, 1]]
        result = hnf(M)
        assert matmul(result.U.to_list(), M, 3) == result.H.to_list()
        assert result.rank == 2

    def test_zero_rows_at_bottom(self):
        """测试零行位于底部"""
        H = hnf([[0, 0], [1, 1], [2, 2]]).H.to_list()
        assert H[0] == [1, 1]
        assert H[1:] == [[0, 0], [0, 0]]

    def test_row_swap(self):
        """测试 [[0,1],[1,0]] 的 HNF 为单位阵"""
        assert hnf([[0, 1], [1, 0]]).H.to_list() == [[1, 0], [0, 1]]

    def test_unimodular_invariance(self):
        """测试 hnf(M) = hnf(U·M)，U 为随机幺模矩阵"""
        rng = random.Random(31)
        for _ in range(100):
            M = [[rng.randint(-5, 5) for _ in range(4)] for _ in range(3)]
            U = _random_unimodular(rng, 3)
            assert determinant_abs(U) == 1
            assert hnf(matmul(U, M, 4)).H.to_list() == hnf(M).H.to_list()


class TestSNF:
    """Smith 正规形测试"""

    def test_diagonal(self):
        """测试 diag(2, 4) 与整除链"""
        result = snf([[2, 0], [0, 4]])
        assert result.diagonal == [2, 4]

    def test_divisibility_chain(self):
        """测试 diag(4, 6) 化为 (2, 12)"""
        result = snf([[4, 0], [0, 6]])
        assert result.diagonal == [2, 12]

    def test_transform(self):
        """测试 D = P·M·Q"""
        M = [[2, 3, 1], [4, 1, 5]]
        result = snf(M)
        assert matmul(matmul(result.P.to_list(), M, 3), result.Q.to_list(), 3) == result.D.to_list()

    def test_singular_rank(self):
        """测试奇异矩阵的秩"""
        assert snf([[1, 2], [2, 4]]).rank == 1

    def test_non_diagonal_matrix(self):
        """测试 [[2,4],[6,8]] 化为 diag(2, 4)"""
        assert snf([[2, 4], [6, 8]]).diagonal == [2, 4]

    def test_random_unimodular_transforms(self):
        """测试 |det P| = |det Q| = 1、D 为对角阵且 d_i | d_{i+1}"""
        rng = random.Random(41)
        for _ in range(60):
            M = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]
            result = snf(M)
            P, Q, D = result.P.to_list(), result.Q.to_list(), result.D.to_list()
            assert determinant_abs(P) == 1
            assert determinant_abs(Q) == 1
            assert matmul(matmul(P, M, 3), Q, 3) == D
            assert all(D[i][j] == 0 for i in range(3) for j in range(3) if i != j)
            d = result.diagonal
            assert all(x >= 0 for x in d)
            for a, b in zip(d, d[1:]):
                assert b == 0 or (a != 0 and b % a == 0)


class TestSolveInteger:
    """整数方程组测试"""

    def test_solvable(self):
        """测试 2x + 4y = 6"""
        solution = solve_integer([[2, 4]], [6])
        assert solution is not None
        x, y = solution.particular
        assert 2 * x + 4 * y == 6
        assert len(solution.kernel) == 1

    def test_not_integral(self):
        """测试 2x = 3 无整数解"""
        assert solve_integer([[2]], [3]) is None

    def test_inconsistent(self):
        """测试 x = 1, 2x = 3 无解"""
        assert solve_integer([[1], [2]], [1, 3]) is None

    def test_dimension_mismatch(self):
        """测试维数不匹配报错"""
        with pytest.raises(InvalidInputError):
            solve_integer([[1, 0]], [1, 2])

    def test_kernel(self):
        """测试 integer_kernel 给出的向量确实在核中"""
        A = [[1, 1, 1]]
        for v in integer_kernel(A):
            assert sum(v) == 0

    def test_agrees_with_search(self):
        """测试与 [-4,4]³ 内的穷举一致"""
        rng = random.Random(53)
        box = range(-4, 5)
        for trial in range(80):
            A = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]
            if trial % 2 == 0:
                x0 = [rng.randint(-3, 3) for _ in range(3)]
                b = _apply(A, x0)
            else:
                b = [rng.randint(-5, 5) for _ in range(3)]
            found = any(_apply(A, xs) == b for xs in itertools.product(box, repeat=3))
            solution = solve_integer(A, b)
            if found:
                assert solution is not None
            if solution is not None:
                assert _apply(A, solution.particular) == b
                assert all(_apply(A, v) == [0, 0, 0] for v in solution.kernel)
                assert found or any(abs(x) > 4 for x in solution.particular)


class TestLattice:
    """格运算测试"""

    def test_canonical_equality(self):
        """测试不同生成元给出同一个格"""
        a = Lattice.from_generators([[1, 1], [0, 2]], 2)
        b = Lattice.from_generators([[1, -1], [2, 0], [1, 1]], 2)
        assert a == b

    def test_index(self):
        """测试 [Z² : 3Z²] = 9"""
        small = Lattice.from_generators([[3, 0], [0, 3]], 2)
        assert lattice_index(small, Lattice.full(2)) == 9

    def test_index_equals_det(self):
        """测试指数等于坐标矩阵行列式"""
        rows = [[2, 1, 0], [0, 3, 1], [1, 0, 2]]
        L = Lattice.from_generators(rows, 3)
        assert lattice_index(L, Lattice.full(3)) == determinant_abs(rows) == 13

    def test_infinite_index(self):
        """测试秩下降时返回 INFINITE"""
        line = Lattice.from_generators([[1, 0]], 2)
        assert lattice_index(line, Lattice.full(2)) is INFINITE

    def test_not_sublattice(self):
        """测试非子格报错"""
        a = Lattice.from_generators([[1, 0]], 2)
        b = Lattice.from_generators([[2, 0]], 2)
        with pytest.raises(NotSublatticeError):
            lattice_index(a, b)

    def test_coordinates(self):
        """测试坐标与还原"""
        L = Lattice.from_generators([[2, 0], [0, 3]], 2)
        coords = L.coordinates([4, -3])
        assert coords is not None
        assert L.vector(coords) == [4, -3]
        assert L.coordinates([1, 0]) is None

    def test_saturate(self):
        """测试饱和化"""
        L = Lattice.from_generators([[2, 2, 0]], 3)
        assert saturate(L) == Lattice.from_generators([[1, 1, 0]], 3)

    def test_saturate_idempotent(self):
        """测试 saturate 幂等、同秩且 L 在其中指数有限"""
        rng = random.Random(61)
        for _ in range(60):
            gens = [[rng.randint(-6, 6) for _ in range(4)] for _ in range(rng.randint(1, 3))]
            L = Lattice.from_generators(gens, 4)
            S = saturate(L)
            assert saturate(S) == S
            assert S.rank == L.rank
            assert S.contains_lattice(L)
            assert lattice_index(L, S) is not INFINITE

    def test_index_multiplicative(self):
        """测试 [L3:L1] = [L3:L2]·[L2:L1]"""
        rng = random.Random(67)
        full = Lattice.full(3)
        checked = 0
        while checked < 40:
            A = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)]
            R = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)]
            if not determinant_abs(A) or not determinant_abs(R):
                continue
            L2 = Lattice.from_generators(A, 3)
            L1 = Lattice.from_generators(matmul(R, L2.basis, 3), 3)
            assert lattice_index(L1, L2) * lattice_index(L2, full) == lattice_index(L1, full)
            assert lattice_index(L1, L2) == determinant_abs(R)
            checked += 1

    def test_intersect(self):
        """测试 2Z ∩ 3Z = 6Z"""
        a = Lattice.from_generators([[2]], 1)
        b = Lattice.from_generators([[3]], 1)
        assert intersect(a, b) == Lattice.from_generators([[6]], 1)

    def test_restrict(self):
        """测试限制到 x_0 = x_1 的子格"""
        L = Lattice.full(3)
        restricted = L.restrict([[1], [-1], [0]])
        assert restricted.rank == 2
        assert restricted.contains([1, 1, 0])
        assert not restricted.contains([1, 0, 0])

    def test_checksum_stable(self):
        """测试摘要只依赖 HNF 基"""
        a = Lattice.from_generators([[1, 1], [0, 2]], 2)
        b = Lattice.from_generators([[1, -1], [0, 2]], 2)
        assert a.checksum() == b.checksum()


class TestHomModule:
    """Hom(M, A) 测试"""

    def test_regular_module(self):
        """测试 Hom(Z[Γ], Z[Γ]) 的秩为 p^k"""
        ring = CyclicGroupRing(3, 1)
        M = ActionLattice(Lattice.full(3), [ring.shift_matrix()])
        maps = hom_module(M, ring)
        assert len(maps) == 3
        assert all(phi.is_equivariant() for phi in maps)

    def test_zero_module(self):
        """测试 M = 0 时 Hom 为空"""
        ring = CyclicGroupRing(3, 1)
        M = ActionLattice(Lattice.zero(3), [ring.shift_matrix()])
        assert hom_module(M, ring) == []

    def test_incompatible_quotient(self):
        """测试 N_n 不零化 M 时报错"""
        ring = CyclicGroupRing(3, 1)
        M = ActionLattice(Lattice.full(3), [ring.shift_matrix()])
        with pytest.raises(InvalidInputError):
            hom_module(M, QuotientRing(ring, 1))

    def test_apply(self):
        """测试同态作用于格向量"""
        ring = CyclicGroupRing(3, 1)
        M = ActionLattice(Lattice.full(3), [ring.shift_matrix()])
        phi = hom_module(M, ring)[0]
        assert phi.apply([1, 0, 0]).ring == ring
