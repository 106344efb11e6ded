# -*- coding: utf-8 -*-
"""模 U、U'、根与 q 扩张的单元测试"""

import random

import pytest

from src.errors import ErrorKind, InvalidInputError, ModelDiscrepancyError
from src.frame import decomposition_indices, level_data, validate
from src.group_ring import QuotientRing, is_nonzerodivisor, norm_element
from src.module import (
    SMModule,
    acts_injectively,
    build_U,
    build_Uq,
    chi_embeddings,
    direct_sum_check,
    extension_report,
    fixed_sublattice,
    hom_sweep,
    norm_kernel_module,
    oracle_agreement,
    project,
    project_Uprime,
    relation_defects,
    require_rank,
    solve_root,
    target_vector,
    valuation_defects,
)
from src.parser import load_instance


class TestBuildU:
    """U 的构造"""

    def test_rank_A(self, U_A):
        """测试 rank(U) = |G| + s = 11"""
        assert U_A.free.size == 18
        assert U_A.rank == 11
        assert U_A.rank_diagnostic()["ok"]

    def test_rank_B(self, U_B):
        """测试 rank(U) = 81 + 3 = 84"""
        assert U_B.rank == 84

    def test_relations_hold(self, U_A, U_B):
        """测试 (R1)、(R2) 在 U 中成立"""
        assert relation_defects(U_A) == []
        assert relation_defects(U_B) == []

    def test_valuations(self, U_A):
        """测试 v_j 在关系上为零、v_i(e_j) = δ_ij"""
        assert valuation_defects(U_A) == []
        assert U_A.valuations(U_A.e(1)) == [1, 0]
        assert U_A.valuations(U_A.e(2)) == [0, 1]
        assert U_A.is_unit(U_A.rho(frozenset()))

    def test_direct_sum(self, U_A):
        """测试 Ψ 部分与 Z·s(G) 成直和"""
        assert direct_sum_check(U_A)["ok"]

    def test_action(self, U_A, frame_A):
        """测试群作用保持格且与群运算相容"""
        assert U_A.action_lattice().is_stable()
        g, h = frame_A.generator(1), frame_A.generator(2)
        u = U_A.rho(frozenset())
        assert U_A.act(g, U_A.act(h, u)) == U_A.act(frame_A.add(g, h), u)

    def test_norm_of_rho_empty(self, U_A, frame_A):
        """测试 s(G)·ρ_∅ = 0"""
        assert not any(U_A.group_sum(frame_A.elements(), U_A.rho(frozenset())))

    def test_checksum_stable(self, frame_A, U_A):
        """测试同一框架的摘要不变"""
        assert build_U(frame_A).checksum() == U_A.checksum()


class TestUprime:
    """U' = U/span{e_j} 的饱和化"""

    def test_rank(self, U_A, U_B):
        """测试 rank(U') = |G|"""
        assert project_Uprime(U_A).rank == 9
        assert project_Uprime(U_B).rank == 81

    def test_projection_kills_e(self, U_A):
        """测试 π(e_j) = 0"""
        Uprime = project_Uprime(U_A)
        assert not any(project(U_A, Uprime, U_A.e(1)))
        assert any(project(U_A, Uprime, U_A.rho(frozenset())))

    def test_no_valuations(self, U_A):
        """测试 U' 上没有赋值泛函"""
        with pytest.raises(InvalidInputError):
            project_Uprime(U_A).valuation_vectors()


class TestRankDiagnostic:
    """秩诊断"""

    def test_degenerate_lambda_accepted(self, instances_dir):
        """测试 λ 全为零的实例仍满足秩规则"""
        U = build_U(validate(load_instance(instances_dir / "degenerate_lambda.json")))
        assert U.rank == 11
        require_rank(U)

    def test_overconstrained_presentation(self, U_A):
        """测试额外关系使秩下降时报 DEGENERATE_LAMBDA"""
        extra = [0] * U_A.free.size
        extra[U_A.free.x_full] = 1
        U = SMModule(U_A.frame, U_A.free, U_A.relations + [extra])
        assert U.rank == 10
        assert not U.rank_diagnostic()["ok"]
        with pytest.raises(ModelDiscrepancyError) as exc:
            require_rank(U)
        assert exc.value.kind == ErrorKind.DEGENERATE_LAMBDA


class TestRoots:
    """不动子格、范核与根"""

    def test_fixed_sublattice(self, U_A, frame_A):
        """测试 B 不动子格包含 s(B)·ρ_∅"""
        B = frame_A.B_elements()
        fixed = fixed_sublattice(U_A, B)
        origin = U_A.free.position(frozenset(), frame_A.identity())
        assert fixed.contains(U_A.orbit_sum(B, origin))

    def test_hom_sweep(self, U_A, frame_A):
        """测试 (1-σ)·φ(w) 落在 ∏(1-σ^{n_i}) 生成的理想中"""
        B = frame_A.B_elements()
        origin = U_A.free.position(frozenset(), frame_A.identity())
        w = U_A.orbit_sum(B, origin)
        report = hom_sweep(U_A, B, w, decomposition_indices(frame_A))
        assert report.hom_count > 0
        assert report.passed
        assert report.require() is report

    def test_hom_sweep_rejects_non_fixed(self, U_A, frame_A):
        """测试 w 不是 B 不动向量时报错"""
        with pytest.raises(InvalidInputError):
            hom_sweep(U_A, frame_A.B_elements(), U_A.rho(frozenset()), [1, 1])

    def test_trivial_root_A(self, U_A, frame_A):
        """测试 |M_1| = 2 时 y = 1，δ = η"""
        level = level_data(frame_A, 1)
        M = norm_kernel_module(U_A, level)
        eta = target_vector(U_A, level)
        cert = solve_root(U_A, M, level.y, eta, level.level_n, level.i)
        assert cert is not None
        assert cert.delta == eta
        assert all(e["passed"] for e in cert.hom_evidence)

    def test_root_B_level_2(self, U_B, frame_B):
        """测试第 2 层 (1-σ²)·δ = η 有唯一解且 δ 是单位"""
        level = level_data(frame_B, 2)
        M = norm_kernel_module(U_B, level)
        eta = target_vector(U_B, level)
        assert M.contains(eta)
        cert = solve_root(U_B, M, level.y, eta, level.level_n, level.i)
        assert cert is not None
        assert str(cert.y) == "1 - s^2"
        assert U_B.act_ring(cert.y, cert.delta) == eta
        assert U_B.is_unit(cert.delta)
        assert cert.unique

    def test_nonzerodivisor_acts_injectively(self, U_B, frame_B):
        """测试 R 中的非零因子在第 2 层的 M 上是单射"""
        level = level_data(frame_B, 2)
        M = norm_kernel_module(U_B, level)
        assert M.rank > 0
        ring = level.level_ring()
        quotient = QuotientRing(ring, level.level_n)
        rng = random.Random(17)
        checked = 0
        while checked < 25:
            y = ring.element([rng.randint(-3, 3) for _ in range(ring.order)])
            if not is_nonzerodivisor(quotient.reduce(y)):
                continue
            assert acts_injectively(U_B, M, y)
            checked += 1

    def test_norm_not_injective(self, U_B, frame_B):
        """测试 N_n 零化 M，因而不是单射"""
        level = level_data(frame_B, 2)
        M = norm_kernel_module(U_B, level)
        N = norm_element(level.level_ring(), level.level_n)
        assert not acts_injectively(U_B, M, N)

    def test_oracle_agreement(self, U_A, frame_A):
        """测试直接求解与 Hom 判据一致"""
        level = level_data(frame_A, 1)
        M = norm_kernel_module(U_A, level)
        result = oracle_agreement(U_A, M, level.level_n, level.i, 10, random.Random(3))
        assert not result["skipped"]
        assert result["agree"] == result["trials"] == 10
        assert result["injective"] == 10


class TestExtension:
    """添加 T_{s+1} 后的 U_q"""

    def test_rank_Uq(self, frame_A):
        """测试 rank(U_q) = 27 + 3 = 30"""
        Uq = build_Uq(frame_A, 3, [1, 2])
        assert Uq.rank == 30

    def test_embeddings(self, frame_A, U_A):
        """测试 χ、χ' 良定、单射且等变"""
        Uq = build_Uq(frame_A, 3, [1, 2])
        report = chi_embeddings(U_A, project_Uprime(U_A), Uq)
        assert report.passed
        assert report.ranks["predicted_Uq"] == 11 + 1 + 2 * 9

    def test_extension_report(self, frame_A, U_A):
        """测试 β 证书：y = 1 时 (1-σ)·δ = s(B)·ρ̃_∅"""
        report = extension_report(frame_A, U_A, 3, [1, 2])
        assert report["Uq"]["rank"] == 30
        assert report["embeddings"]["passed"]
        assert report["beta"]["y"] == "1 - s"
        assert report["beta"]["checks"]["box_identity"]

    @pytest.mark.parametrize("m", [1, 2, 6])
    def test_bad_m(self, frame_A, m):
        """测试 m 不是 p 的正幂"""
        with pytest.raises(InvalidInputError):
            build_Uq(frame_A, m, [1, 2])

    def test_lambda_not_in_B(self, frame_A):
        """测试 λ_{s+1} ∉ B"""
        with pytest.raises(InvalidInputError):
            build_Uq(frame_A, 3, [1, 0])

    def test_strict_m(self, frame_A):
        """测试 strict_m 时 p^{ks} ∤ m 报错"""
        with pytest.raises(InvalidInputError):
            build_Uq(frame_A, 3, [1, 2], strict_m=True)
