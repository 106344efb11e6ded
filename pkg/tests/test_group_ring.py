# -*- coding: utf-8 -*-
"""群环与商环单元测试"""

import random
from math import gcd

import pytest

from src.errors import InvalidInputError
from src.group_ring import (
    CyclicGroupRing,
    QuotientRing,
    cyclic_delta,
    delta_element,
    element_order,
    exact_quotient,
    format_terms,
    gr_mul,
    is_nonzerodivisor,
    norm_element,
    one_minus_sigma,
    quotient_reduce,
)
from src.lattice import determinant_abs


class TestCyclicGroupRing:
    """群环 Z[Γ] 测试"""

    def test_identity(self):
        """测试单位元"""
        ring = CyclicGroupRing(3, 2)
        a = ring.element([1, -2, 0, 4, 0, 0, 0, 5, 0])
        assert gr_mul(ring.one(), a) == a

    def test_norm_absorbs_augmentation(self):
        """测试 N_1 吸收增广：(1+σ)(1+σ+σ²) = 2(1+σ+σ²)"""
        ring = CyclicGroupRing(3, 1)
        product = gr_mul(ring.element([1, 1, 0]), ring.element([1, 1, 1]))
        assert product.to_list() == [2, 2, 2]

    def test_distribute_without_wraparound(self):
        """测试 (1-σ³)(2+σ) = 2+σ-2σ³-σ⁴"""
        ring = CyclicGroupRing(3, 2)
        product = one_minus_sigma(ring, 3) * ring.from_terms({0: 2, 1: 1})
        assert product.to_list() == [2, 1, 0, -2, -1, 0, 0, 0, 0]
        assert str(product) == "2 + s - 2*s^3 - s^4"

    def test_wraparound(self):
        """测试 σ^{p^k} = 1"""
        ring = CyclicGroupRing(3, 1)
        assert ring.sigma(2) * ring.sigma(2) == ring.sigma(1)

    def test_ring_mismatch(self):
        """测试不同群环的元素相乘报错"""
        with pytest.raises(InvalidInputError):
            gr_mul(CyclicGroupRing(3, 1).one(), CyclicGroupRing(3, 2).one())

    def test_coefficient_length(self):
        """测试系数长度必须为 p^k"""
        with pytest.raises(InvalidInputError):
            CyclicGroupRing(3, 1).element([1, 2])

    def test_immutable(self):
        """测试元素不可变"""
        a = CyclicGroupRing(3, 1).one()
        with pytest.raises(AttributeError):
            a.coeffs = (0, 0, 0)


class TestSpecialElements:
    """N_d、Δ_d 与广义 Δ 测试"""

    @pytest.mark.parametrize("p,k", [(3, 1), (3, 2), (5, 1)])
    def test_norm_and_delta_identities(self, p, k):
        """测试 (1-σ^d)N_d = 0 与 (1-σ^d)Δ_d = N_d - p^k/d"""
        ring = CyclicGroupRing(p, k)
        for i in range(k + 1):
            d = p ** i
            factor = one_minus_sigma(ring, d)
            N = norm_element(ring, d)
            assert (factor * N).is_zero()
            assert factor * delta_element(ring, d) == N - ring.scalar(ring.order // d)

    def test_norm_factoring(self):
        """测试 N_1 = N_3·(1+σ+σ²)"""
        ring = CyclicGroupRing(3, 2)
        inner = ring.from_terms({0: 1, 1: 1, 2: 1})
        assert norm_element(ring, 1) == norm_element(ring, 3) * inner

    def test_norm_terms(self):
        """测试 N_3 = 1+σ³+σ⁶"""
        ring = CyclicGroupRing(3, 2)
        assert norm_element(ring, 3).to_list() == [1, 0, 0, 1, 0, 0, 1, 0, 0]

    def test_not_a_divisor(self):
        """测试 d ∤ p^k 报错"""
        with pytest.raises(InvalidInputError):
            norm_element(CyclicGroupRing(3, 2), 2)

    def test_cyclic_delta_identity(self):
        """测试 p ∤ c 时 (1-σ^e)·Δ(e) = N_gcd - o"""
        ring = CyclicGroupRing(3, 2)
        for e in (2, 6, 4):
            o = element_order(ring, e)
            lhs = one_minus_sigma(ring, e) * cyclic_delta(ring, e)
            assert lhs == norm_element(ring, gcd(e, 9)) - ring.scalar(o)

    def test_cyclic_delta_matches_delta(self):
        """测试 e | p^k 时广义 Δ 与 Δ_e 一致"""
        ring = CyclicGroupRing(3, 2)
        assert cyclic_delta(ring, 3) == delta_element(ring, 3)

    def test_element_order(self):
        """测试 σ^e 的阶"""
        ring = CyclicGroupRing(3, 2)
        assert element_order(ring, 3) == 3
        assert element_order(ring, 2) == 9
        assert element_order(ring, 0) == 1


class TestDivisibility:
    """精确除法测试"""

    def test_exact_quotient(self):
        """测试 (1-σ³)/(1-σ) = 1+σ+σ²"""
        ring = CyclicGroupRing(3, 2)
        q = exact_quotient(one_minus_sigma(ring, 3), one_minus_sigma(ring, 1))
        assert q is not None
        assert q * one_minus_sigma(ring, 1) == one_minus_sigma(ring, 3)

    def test_not_divisible(self):
        """测试 1-σ 不是 1-σ³ 的倍数"""
        ring = CyclicGroupRing(3, 2)
        assert exact_quotient(one_minus_sigma(ring, 1), one_minus_sigma(ring, 3)) is None

    def test_to_level(self):
        """测试投到低阶群环"""
        ring = CyclicGroupRing(3, 2)
        assert ring.sigma(4).to_level(CyclicGroupRing(3, 1)) == CyclicGroupRing(3, 1).sigma(1)

    def test_format_terms(self):
        """测试多项式格式化"""
        assert format_terms([0, 0, 0]) == "0"
        assert format_terms([1, -1, 0]) == "1 - s"
        assert format_terms([0, 0, -3]) == "-3*s^2"


class TestQuotientRing:
    """商环 R = Z[Γ]/N_n 测试"""

    def test_reduce(self):
        """测试 σ⁶ ≡ -1-σ³ (mod N_3)"""
        ring = CyclicGroupRing(3, 2)
        x = QuotientRing(ring, 3).reduce(ring.sigma(6))
        assert list(x.coeffs) == [-1, 0, 0, -1, 0, 0]

    def test_norm_is_zero(self):
        """测试 N_n 在 R 中为零"""
        ring = CyclicGroupRing(3, 2)
        assert quotient_reduce(norm_element(ring, 3), 3).is_zero()

    def test_invalid_modulus(self):
        """测试 n ∤ p^{k-1} 报错"""
        with pytest.raises(InvalidInputError):
            QuotientRing(CyclicGroupRing(3, 2), 9)

    def test_nonzerodivisor(self):
        """测试 1-σ、1-σ³ 在 Z[Γ_9]/N_3 中不是零因子"""
        ring = CyclicGroupRing(3, 2)
        q = QuotientRing(ring, 3)
        assert is_nonzerodivisor(q.reduce(one_minus_sigma(ring, 1)))
        assert is_nonzerodivisor(q.reduce(one_minus_sigma(ring, 3)))

    def test_zero_divisor(self):
        """测试 1-σ³ 在 Z[Γ_9]/N_1 中是零因子"""
        ring = CyclicGroupRing(3, 2)
        q = QuotientRing(ring, 1)
        assert not is_nonzerodivisor(q.reduce(one_minus_sigma(ring, 3)))
        assert not is_nonzerodivisor(q.reduce(ring.zero()))

    def test_lift_roundtrip(self):
        """测试规范代表元的提升再约化不变"""
        ring = CyclicGroupRing(3, 2)
        q = QuotientRing(ring, 3)
        x = q.reduce(ring.from_terms({7: 2, 1: -1}))
        assert q.reduce(x.lift()) == x

    @pytest.mark.parametrize("p, k, n", [(3, 2, 3), (3, 2, 1), (5, 1, 1)])
    def test_reduce_multiplicative(self, p, k, n):
        """测试约化保持乘法：reduce(a·b) = reduce(a)·reduce(b)"""
        ring = CyclicGroupRing(p, k)
        q = QuotientRing(ring, n)
        rng = random.Random(2024)
        for _ in range(100):
            a = ring.element([rng.randint(-4, 4) for _ in range(ring.order)])
            b = ring.element([rng.randint(-4, 4) for _ in range(ring.order)])
            assert q.reduce(a * b) == q.reduce(a) * q.reduce(b)

    def test_nonzerodivisor_injective(self):
        """测试非零因子的乘法矩阵非奇异，且不把非零元映为零"""
        ring = CyclicGroupRing(3, 2)
        q = QuotientRing(ring, 1)
        rng = random.Random(7)
        for _ in range(50):
            y = q.reduce(ring.element([rng.randint(-2, 2) for _ in range(ring.order)]))
            regular = is_nonzerodivisor(y)
            assert (determinant_abs(y.multiplication_matrix()) != 0) == regular
            if regular:
                x = q.reduce(ring.element([rng.randint(-2, 2) for _ in range(ring.order)]))
                assert x.is_zero() or not (y * x).is_zero()

    def test_zero_divisor_matrix_singular(self):
        """测试零因子 1-σ³ 在 Z[Γ_9]/N_1 中的乘法矩阵奇异"""
        ring = CyclicGroupRing(3, 2)
        q = QuotientRing(ring, 1)
        y = q.reduce(one_minus_sigma(ring, 3))
        assert determinant_abs(y.multiplication_matrix()) == 0
        witness = q.reduce(norm_element(ring, 3))
        assert not witness.is_zero()
        assert (y * witness).is_zero()
