# -*- coding: utf-8 -*-
"""全模块不变量自检

每个套件由若干检查组成，检查返回 True/False 或抛出 AlgebraError（记为失败）。
"""

import itertools
import logging
import random
from typing import Any, Callable, Dict, List, Optional

from ..annihilator import (
    annihilator_transfer,
    build_levels,
    index_check,
    jump_basis,
    lemma_property,
    norm_membership_checks,
    unit_lattices,
    z_map_fuzz,
)
from ..errors import AlgebraError
from ..frame import (
    GroupData,
    associate_witnesses,
    decomposition_indices,
    jump_profile,
    level_data,
    r_characterization,
)
from ..group_ring import (
    CyclicGroupRing,
    QuotientRing,
    delta_element,
    is_nonzerodivisor,
    norm_element,
    one_minus_sigma,
)
from ..lattice import INFINITE, Lattice, determinant_abs, hnf, lattice_index, saturate, snf, solve_integer
from ..lattice.matrix import matmul
from ..module import (
    SMModule,
    build_U,
    direct_sum_check,
    extension_report,
    hom_sweep,
    norm_kernel_module,
    oracle_agreement,
    project_Uprime,
    relation_defects,
    valuation_defects,
)

logger = logging.getLogger(__name__)

RING_CASES = ((3, 1), (3, 2), (5, 1))


class CheckRecord:
    """单项检查结果"""

    def __init__(self, name: str, passed: bool, detail: Any = None):
        self.name = name
        self.passed = passed
        self.detail = detail

    def to_dict(self) -> Dict[str, Any]:
        data = {"name": self.name, "passed": self.passed}
        if self.detail is not None:
            data["detail"] = self.detail
        return data


class SuiteResult:
    """一个套件的检查记录与计数"""

    def __init__(self, name: str):
        self.name = name
        self.records: List[CheckRecord] = []

    @property
    def passed(self) -> int:
        return sum(1 for r in self.records if r.passed)

    @property
    def failed(self) -> int:
        return len(self.records) - self.passed

    def check(self, name: str, fn: Callable[[], Any]) -> Any:
        """运行一项检查；fn 返回 bool、带 "passed" 键的字典或 (bool, detail)"""
        try:
            outcome = fn()
        except AlgebraError as e:
            logger.warning("检查 %s/%s 失败: %s", self.name, name, e)
            self.records.append(CheckRecord(name, False, e.to_dict()))
            return None
        if isinstance(outcome, tuple):
            ok, detail = outcome
        elif isinstance(outcome, dict):
            ok, detail = bool(outcome.get("passed", True)), outcome
        else:
            ok, detail = bool(outcome), None
        self.records.append(CheckRecord(name, ok, detail))
        return outcome

    def build(self, name: str, fn: Callable[[], Any], describe: Callable[[Any], Any]) -> Any:
        """运行一个构造步骤：成功即通过，返回构造结果（失败时为 None）"""
        try:
            value = fn()
        except AlgebraError as e:
            logger.warning("构造 %s/%s 失败: %s", self.name, name, e)
            self.records.append(CheckRecord(name, False, e.to_dict()))
            return None
        self.records.append(CheckRecord(name, True, describe(value)))
        return value

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "failed": self.failed,
            "records": [r.to_dict() for r in self.records],
        }


class SelfTestReport:
    def __init__(self, seed: int, suites: List[SuiteResult]):
        self.seed = seed
        self.suites = suites

    @property
    def ok(self) -> bool:
        return all(s.failed == 0 for s in self.suites)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "ok": self.ok,
            "passed": sum(s.passed for s in self.suites),
            "failed": sum(s.failed for s in self.suites),
            "suites": [s.to_dict() for s in self.suites],
        }


def _divisors(ring: CyclicGroupRing) -> List[int]:
    return [ring.p ** i for i in range(ring.k + 1)]


def _random_unimodular(rng: random.Random, n: int) -> List[List[int]]:
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


def _apply(A: List[List[int]], x: List[int]) -> List[int]:
    return [sum(a * v for a, v in zip(row, x)) for row in A]


def group_ring_suite(rng: random.Random, pairs: int) -> SuiteResult:
    suite = SuiteResult("group_ring")
    for p, k in RING_CASES:
        ring = CyclicGroupRing(p, k)
        for d in _divisors(ring):
            N = norm_element(ring, d)
            D = delta_element(ring, d)
            factor = one_minus_sigma(ring, d)
            suite.check(f"norm_killed[{p},{k},{d}]", lambda: (factor * N).is_zero())
            suite.check(
                f"delta_identity[{p},{k},{d}]",
                lambda: factor * D == N - ring.scalar(ring.order // d),
            )
        for a in _divisors(ring):
            for b in _divisors(ring):
                if b % a:
                    continue
                inner = ring.from_terms({i * a: 1 for i in range(b // a)})
                suite.check(
                    f"norm_factoring[{p},{k},{a},{b}]",
                    lambda: norm_element(ring, a) == norm_element(ring, b) * inner,
                )

    def ring_axioms() -> bool:
        ring = CyclicGroupRing(3, 2)
        for _ in range(pairs):
            x, y, z = (ring.element([rng.randint(-3, 3) for _ in range(ring.order)]) for _ in range(3))
            if x * y != y * x or (x * y) * z != x * (y * z) or x * (y + z) != x * y + x * z:
                return False
        return True

    def quotient_multiplicative() -> bool:
        ring = CyclicGroupRing(3, 2)
        for n in (1, 3):
            quotient = QuotientRing(ring, n)
            for _ in range(pairs):
                a, b = (ring.element([rng.randint(-4, 4) for _ in range(ring.order)]) for _ in range(2))
                if quotient.reduce(a * b) != quotient.reduce(a) * quotient.reduce(b):
                    return False
        return True

    def nonzerodivisor_injective() -> bool:
        # 1 - σ^3 is a zero divisor in Z[Γ_9]/N_1
        ring = CyclicGroupRing(3, 2)
        quotient = QuotientRing(ring, 1)
        for _ in range(pairs):
            y = quotient.reduce(ring.element([rng.randint(-2, 2) for _ in range(ring.order)]))
            if (determinant_abs(y.multiplication_matrix()) != 0) != is_nonzerodivisor(y):
                return False
        return True

    suite.check("ring_axioms", ring_axioms)
    suite.check("quotient_multiplicative", quotient_multiplicative)
    suite.check("nonzerodivisor_injective", nonzerodivisor_injective)
    return suite


def lattice_suite(rng: random.Random, pairs: int) -> SuiteResult:
    suite = SuiteResult("lattice")

    def random_index() -> bool:
        for _ in range(pairs):
            rows = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]
            det = determinant_abs(rows)
            L = Lattice.from_generators(rows, 3)
            index = lattice_index(L, Lattice.full(3))
            if det and index != det:
                return False
            if not det and index is not INFINITE:
                return False
        return True

    def snf_product() -> bool:
        for _ in range(pairs):
            rows = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)]
            det = determinant_abs(rows)
            result = snf(rows)
            if not det:
                if result.rank == 3:
                    return False
                continue
            value = 1
            for x in result.diagonal:
                value *= abs(x)
            if value != det:
                return False
        return True

    def saturation() -> bool:
        L = Lattice.from_generators([[2, 0, 0], [0, 4, 0]], 3)
        S = saturate(L)
        return S == Lattice.from_generators([[1, 0, 0], [0, 1, 0]], 3) and S.contains_lattice(L)

    def hnf_unimodular_invariance() -> bool:
        for _ in range(pairs):
            rows = [[rng.randint(-5, 5) for _ in range(4)] for _ in range(3)]
            U = _random_unimodular(rng, 3)
            if hnf(matmul(U, rows, 4)).H != hnf(rows).H:
                return False
        return True

    def snf_unimodular() -> bool:
        for _ in range(pairs):
            rows = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]
            result = snf(rows)
            P, Q = result.P.to_list(), result.Q.to_list()
            if determinant_abs(P) != 1 or determinant_abs(Q) != 1:
                return False
            if matmul(matmul(P, rows, 3), Q, 3) != result.D.to_list():
                return False
            d = result.diagonal
            if any(x < 0 for x in d) or any(b and (not a or b % a) for a, b in zip(d, d[1:])):
                return False
        return True

    def solve_matches_search() -> bool:
        box = range(-3, 4)
        for trial in range(pairs):
            A = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)]
            if trial % 2 == 0:
                b = _apply(A, [rng.randint(-2, 2) for _ in range(3)])
            else:
                b = [rng.randint(-4, 4) for _ in range(3)]
            found = any(_apply(A, xs) == b for xs in itertools.product(box, repeat=3))
            solution = solve_integer(A, b)
            if found and solution is None:
                return False
            if solution is not None and _apply(A, solution.particular) != b:
                return False
        return True

    def saturate_idempotent() -> bool:
        for _ in range(pairs):
            gens = [[rng.randint(-6, 6) for _ in range(4)] for _ in range(rng.randint(1, 3))]
            S = saturate(Lattice.from_generators(gens, 4))
            if saturate(S) != S:
                return False
        return True

    def index_chain() -> bool:
        full = Lattice.full(3)
        for _ in range(pairs):
            A = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)]
            R = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)]
            if not determinant_abs(A) or not determinant_abs(R):
                continue
            L2 = Lattice.from_generators(A, 3)
            L1 = Lattice.from_generators(matmul(R, L2.basis, 3), 3)
            if lattice_index(L1, L2) * lattice_index(L2, full) != lattice_index(L1, full):
                return False
        return True

    suite.check("index_equals_det", random_index)
    suite.check("snf_product", snf_product)
    suite.check("saturation", saturation)
    suite.check("hnf_unimodular_invariance", hnf_unimodular_invariance)
    suite.check("snf_unimodular", snf_unimodular)
    suite.check("solve_matches_search", solve_matches_search)
    suite.check("saturate_idempotent", saturate_idempotent)
    suite.check("index_chain", index_chain)
    return suite


def frame_suite(frame: GroupData) -> SuiteResult:
    suite = SuiteResult("frame")
    profile = jump_profile(frame)
    suite.check("r_characterization", lambda: (r_characterization(frame) == profile.r, profile.to_dict()))
    suite.check("associates", lambda: (True, associate_witnesses(frame)))
    n = decomposition_indices(frame)
    suite.check("n_ordering", lambda: (n[-1] == max(n), n))
    suite.check(
        "level_norm_parameter",
        lambda: all(level_data(frame, i).level_n <= frame.p ** i for i in range(1, frame.k + 1)),
    )
    return suite


def module_suite(U: SMModule) -> SuiteResult:
    suite = SuiteResult("module")
    suite.check("rank", lambda: (U.rank_diagnostic()["ok"], U.rank_diagnostic()))
    suite.check("relations_hold", lambda: (not relation_defects(U), relation_defects(U)))
    suite.check("valuations_vanish_on_relations", lambda: not valuation_defects(U))
    suite.check("direct_sum", lambda: (direct_sum_check(U)["ok"], direct_sum_check(U)))
    suite.check("action_stable", lambda: U.action_lattice().is_stable())
    Uprime = project_Uprime(U)
    suite.check("rank_Uprime", lambda: (Uprime.rank_diagnostic()["ok"], Uprime.rank_diagnostic()))
    return suite


def roots_suite(frame: GroupData, U: SMModule, rng: random.Random, trials: int) -> SuiteResult:
    suite = SuiteResult("roots")
    B = frame.B_elements()
    origin = U.free.position(frozenset(), frame.identity())
    w = U.orbit_sum(B, origin)
    suite.check("hom_sweep", lambda: hom_sweep(U, B, w, decomposition_indices(frame)).to_dict())
    level = level_data(frame, frame.k)
    if not level.singleton:
        M = norm_kernel_module(U, level)
        suite.check("oracle_agreement", lambda: _oracle(U, M, level, trials, rng))
    return suite


def _oracle(U, M, level, trials, rng) -> Dict[str, Any]:
    result = oracle_agreement(U, M, level.level_n, level.i, trials, rng)
    result["passed"] = result["skipped"] or result["agree"] == result["injective"] == result["trials"]
    return result


def annihilator_suite(
    frame: GroupData, U: SMModule, rng: random.Random, zmap_trials: int, lemma_trials: int
) -> SuiteResult:
    suite = SuiteResult("annihilator")
    levels = suite.build("build_levels", lambda: build_levels(frame, U), lambda ls: [s.i for s in ls])
    if levels is None:
        return suite
    suite.check(
        "singleton_eta_not_unit",
        lambda: all(not U.is_unit(s.eta) for s in levels if s.singleton),
    )
    lattices = suite.build(
        "unit_lattices",
        lambda: unit_lattices(U, levels),
        lambda L: {"rank": L.Cbar.rank, "index": str(L.index())},
    )
    if lattices is None:
        return suite
    suite.check("index_check", lambda: (True, index_check(frame, lattices).to_dict()))
    basis = suite.build("jump_basis", lambda: jump_basis(frame, U, lattices), lambda b: b.to_dict())
    suite.check("norm_membership", lambda: norm_membership_checks(U, lattices))
    r = jump_profile(frame).r
    suite.check("lemma_property", lambda: lemma_property(U, lattices, r, lemma_trials, rng))
    if basis is not None:
        suite.check("z_map_fuzz", lambda: z_map_fuzz(U, lattices, basis, zmap_trials, rng))
    ring = frame.ring
    kappa = norm_element(ring, frame.p ** r)
    suite.check(
        "transfer_of_norm_multiple",
        lambda: annihilator_transfer(frame, kappa).is_zero(),
    )
    return suite


def extension_suite(frame: GroupData, U: SMModule, m: int, lambda_extra: List[int], strict_m: bool) -> SuiteResult:
    suite = SuiteResult("extension")
    suite.check("extension_report", lambda: (True, extension_report(frame, U, m, lambda_extra, strict_m)))
    return suite


def run_selftest(
    frame: GroupData,
    seed: int = 0,
    U: Optional[SMModule] = None,
    random_pairs: int = 100,
    oracle_trials: int = 50,
    zmap_trials: int = 100,
    lemma_trials: int = 100,
    extension: Optional[Dict[str, Any]] = None,
) -> SelfTestReport:
    """运行全部套件

    Args:
        frame: 验证后的框架
        seed: 随机种子，相同种子给出相同报告
        U: 预先构造的模
        extension: 给出时追加 q 扩张套件，键为 m、lambda_extra、strict_m
    """
    rng = random.Random(seed)
    U = U or build_U(frame)
    suites = [
        group_ring_suite(rng, random_pairs),
        lattice_suite(rng, random_pairs),
        frame_suite(frame),
        module_suite(U),
        roots_suite(frame, U, rng, oracle_trials),
        annihilator_suite(frame, U, rng, zmap_trials, lemma_trials),
    ]
    if extension is not None:
        suites.append(
            extension_suite(frame, U, extension["m"], extension["lambda_extra"], extension.get("strict_m", False))
        )
    report = SelfTestReport(seed, suites)
    logger.info("selftest: ok=%s", report.ok)
    return report
