# -*- coding: utf-8 -*-
"""框架校验与导出量单元测试"""

import pytest

from src.errors import ValidationError
from src.frame import (
    AnalyticData,
    RamificationInstance,
    associate_witnesses,
    collect_issues,
    compute_c,
    decomposition_indices,
    frame_summary,
    jump_profile,
    level_data,
    r_characterization,
    ramified_sets,
    validate,
)
from src.parser import load_instance


def _codes(inst):
    return {issue.code for issue in collect_issues(inst)}


class TestValidation:
    """实例结构性假设测试"""

    def test_valid_instances(self, frame_A, frame_B):
        """测试 A、B 通过校验"""
        assert frame_A.order_B == 3
        assert frame_B.order_B == 9
        assert frame_B.group_order == 81

    def test_no_full_inertia(self, instances_dir):
        """测试缺少 t_j = p^k 时报 no_full_inertia"""
        inst = load_instance(instances_dir / "invalid_no_full_inertia.json")
        with pytest.raises(ValidationError) as exc:
            validate(inst)
        assert "no_full_inertia" in {issue.code for issue in exc.value.issues}

    def test_p_not_prime(self):
        """测试 p 不是奇素数"""
        assert "p_not_odd_prime" in _codes(RamificationInstance(4, 1, [4, 4], [[0, 0], [0, 0]]))
        assert "p_not_odd_prime" in _codes(RamificationInstance(2, 1, [2, 2], [[0, 0], [0, 0]]))

    def test_s_too_small(self):
        """测试 s < 2"""
        assert "s_too_small" in _codes(RamificationInstance(3, 1, [3], [[0]]))

    def test_lambda_not_trivial_on_own_factor(self):
        """测试 λ_j 在 F_j 上不平凡"""
        inst = RamificationInstance(3, 1, [3, 3], [[1, 1], [1, 0]])
        assert "lambda_not_trivial_on_Fj" in _codes(inst)

    def test_t_not_power(self):
        """测试 t_j 不是 p 的幂"""
        assert "t_not_p_power" in _codes(RamificationInstance(3, 1, [3, 6], [[0, 1], [1, 0]]))

    def test_res_unit(self):
        """测试 u_j 被 p 整除"""
        inst = RamificationInstance(3, 1, [3, 3], [[0, 1], [1, 0]], res_units=[1, 3])
        assert "res_unit_not_unit" in _codes(inst)

    def test_analytic_constraints(self):
        """测试 p | h 与 p | w_K"""
        analytic = AnalyticData(h=3, w_K=6)
        inst = RamificationInstance(3, 1, [3, 3], [[0, 1], [1, 0]], analytic=analytic)
        assert {"p_divides_h", "p_divides_wK"} <= _codes(inst)

    def test_norm_congruence(self):
        """测试 N(℘_j) ≢ 1 mod t_j"""
        analytic = AnalyticData(q=[7, 5])
        inst = RamificationInstance(3, 1, [3, 3], [[0, 1], [1, 0]], analytic=analytic)
        assert "norm_not_1_mod_t" in _codes(inst)

    def test_all_issues_reported(self):
        """测试一次报告全部问题"""
        inst = RamificationInstance(3, 1, [3, 3], [[1, 1], [1, 0]], res_units=[1, 3])
        assert {"lambda_not_trivial_on_Fj", "res_unit_not_unit"} <= _codes(inst)

    def test_canonical_order(self):
        """测试按 n_j 升序、t_j 降序重排"""
        inst = RamificationInstance(3, 2, [3, 9, 3], [[0, 0, 1], [0, 0, 1], [1, 0, 0]])
        frame = validate(inst)
        assert frame.orders[0] == 9
        ns = decomposition_indices(frame)
        assert ns == sorted(ns)

    def test_lift(self, frame_A, frame_B):
        """测试 res(ŝ) = 1"""
        assert frame_A.res(frame_A.lift) == 1
        assert frame_B.res(frame_B.lift) == 1


class TestDerivedA:
    """实例 A 的导出量"""

    def test_decomposition(self, frame_A):
        """测试 n = (1, 1)，M_1 = {1, 2}"""
        assert decomposition_indices(frame_A) == [1, 1]
        assert [sorted(M) for M in ramified_sets(frame_A)] == [[1, 2]]

    def test_jumps(self, frame_A):
        """测试跳跃 (0, 1)，r = 0，[L:L̃] = 3"""
        profile = jump_profile(frame_A)
        assert profile.jumps == [0, 1]
        assert profile.r == 0
        assert profile.L_index == 3
        assert r_characterization(frame_A) == 0

    def test_level(self, frame_A):
        """测试第 1 层：y 为空积，z = 1 - s"""
        level = level_data(frame_A, 1)
        assert not level.singleton
        assert level.y == frame_A.ring.one()
        assert str(level.z) == "1 - s"
        assert level.level_n == 1


class TestDerivedB:
    """实例 B 的导出量"""

    def test_decomposition(self, frame_B):
        """测试 n = (1, 1, 3)，M = ({1}, {1, 2, 3})"""
        assert decomposition_indices(frame_B) == [1, 1, 3]
        assert [sorted(M) for M in ramified_sets(frame_B)] == [[1], [1, 2, 3]]

    def test_jumps(self, frame_B):
        """测试跳跃 (0, 1, 2)，r = 1，块大小 (2, 6)"""
        profile = jump_profile(frame_B)
        assert profile.mu == [1, 3]
        assert profile.jumps == [0, 1, 2]
        assert profile.r == 1
        assert profile.L_index == 3
        assert profile.block_sizes(3) == [2, 6]

    def test_c(self, frame_B):
        """测试 c = (1, 2, 1)"""
        assert [compute_c(frame_B, j) for j in (1, 2, 3)] == [1, 2, 1]

    def test_levels(self, frame_B):
        """测试第 1 层为单点，第 2 层 y = 1 - s^2，z = 1 - s^3"""
        assert level_data(frame_B, 1).singleton
        level = level_data(frame_B, 2)
        assert str(level.y) == "1 - s^2"
        assert str(level.z) == "1 - s^3"
        assert level.level_n == 3
        assert level.middle() == [2]

    def test_associates(self, frame_B):
        """测试 1 - σ^{c n} 与 1 - σ^n 相伴"""
        records = associate_witnesses(frame_B)
        assert [r["j"] for r in records] == [1, 2, 3]

    def test_summary(self, frame_B):
        """测试 derive 汇总"""
        summary = frame_summary(frame_B)
        assert summary["n"] == [1, 1, 3]
        assert summary["jump_profile"]["r"] == 1
        assert len(summary["levels"]) == 2


class TestExtend:
    """添加 T_{s+1} 的框架"""

    def test_extend(self, frame_A):
        """测试扩张后的阶与 λ"""
        extended = frame_A.extend(3, [0, 1])
        assert extended.orders == [3, 3, 3]
        assert extended.lambdas[2] == (0, 1, 0)
        assert extended.res(extended.lift) == 1
