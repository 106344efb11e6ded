# -*- coding: utf-8 -*-
"""分歧实例与伽罗瓦框架

G = ∏ T_j 以各分量阶 (t_1, …, t_s) 的指数向量表示，
限制映射 res: G → Z/p^k 由 res(g_j) = u_j·p^k/t_j 决定。
"""

import itertools
import logging
from math import gcd
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from sympy import isprime

from ..errors import ValidationError, ValidationIssue
from ..group_ring import CyclicGroupRing

logger = logging.getLogger(__name__)

Element = Tuple[int, ...]


def _to_int(value: Any, field: str) -> int:
    if isinstance(value, bool):
        raise ValueError(f"{field}: 布尔值不是整数")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and value.strip().lstrip("+-").isdigit():
        return int(value.strip())
    raise ValueError(f"{field}: 无法解析为整数: {value!r}")


def is_power_of(value: int, p: int) -> bool:
    if value < 1:
        return False
    while value % p == 0:
        value //= p
    return value == 1


def log_p(value: int, p: int) -> int:
    """p 的幂次的指数"""
    e = 0
    while value > 1:
        value //= p
        e += 1
    return e


class AnalyticData:
    """解析输入：类数、单位根个数、导子等（均为普通正整数）"""

    FIELDS = ("h", "w_K", "f_I", "h_L", "h_FI")

    def __init__(
        self,
        h: Optional[int] = None,
        w_K: Optional[int] = None,
        f_I: Optional[int] = None,
        h_L: Optional[int] = None,
        h_FI: Optional[int] = None,
        q: Optional[List[int]] = None,
    ):
        self.h = h
        self.w_K = w_K
        self.f_I = f_I
        self.h_L = h_L
        self.h_FI = h_FI
        self.q = q or []

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "AnalyticData":
        values = {}
        for name in cls.FIELDS:
            if data.get(name) is not None:
                values[name] = _to_int(data[name], f"analytic.{name}")
        q = [_to_int(x, "analytic.q") for x in data.get("q", [])]
        return cls(q=q, **values)

    def to_dict(self) -> Dict[str, Any]:
        data = {name: str(getattr(self, name)) for name in self.FIELDS if getattr(self, name) is not None}
        if self.q:
            data["q"] = [str(x) for x in self.q]
        return data

    def has(self, *names: str) -> bool:
        return all(getattr(self, name) is not None for name in names)

    def __repr__(self) -> str:
        return f"AnalyticData({self.to_dict()})"


class RamificationInstance:
    """合成的分歧实例（公理化地代表真实的数域数据）"""

    def __init__(
        self,
        p: int,
        k: int,
        t: Sequence[int],
        lambdas: Sequence[Sequence[int]],
        res_units: Optional[Sequence[int]] = None,
        analytic: Optional[AnalyticData] = None,
        name: str = "",
        expect: Optional[Dict[str, Any]] = None,
    ):
        """
        Args:
            p: 奇素数
            k: L/K 的次数为 p^k
            t: 惯性群阶 t_j
            lambdas: λ_j 的指数向量
            res_units: res(g_j) 的单位乘子，默认全为 1
            analytic: 可选的解析数据
            name: 实例名称
            expect: 可选的期望值（用于回归比对）
        """
        self.p = p
        self.k = k
        self.t = list(t)
        self.lambdas = [list(row) for row in lambdas]
        self.res_units = list(res_units) if res_units is not None else [1] * len(self.t)
        self.analytic = analytic
        self.name = name
        self.expect = dict(expect or {})

    @property
    def s(self) -> int:
        return len(self.t)

    @classmethod
    def from_dict(cls, data: Dict[str, Any], name: str = "") -> "RamificationInstance":
        """由实例文件内容构造；整数可写成十进制字符串"""
        p = _to_int(data["p"], "p")
        k = _to_int(data["k"], "k")
        t = [_to_int(x, "t") for x in data["t"]]
        lambdas = [[_to_int(x, "lambda") for x in row] for row in data["lambda"]]
        res_units = None
        if data.get("res_units") is not None:
            res_units = [_to_int(x, "res_units") for x in data["res_units"]]
        analytic = AnalyticData.from_dict(data["analytic"]) if data.get("analytic") else None
        return cls(
            p, k, t, lambdas, res_units, analytic,
            name=data.get("name", name), expect=data.get("expect"),
        )

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "p": str(self.p),
            "k": self.k,
            "t": [str(x) for x in self.t],
            "res_units": [str(x) for x in self.res_units],
            "lambda": self.lambdas,
        }
        if self.analytic:
            data["analytic"] = self.analytic.to_dict()
        if self.name:
            data["name"] = self.name
        return data

    def __repr__(self) -> str:
        return f"RamificationInstance(p={self.p}, k={self.k}, t={self.t})"


class GroupData:
    """验证后的框架：G、res、B 与 σ 的提升 ŝ

    使用方式：
        ```python
        frame = validate(instance)
        print(frame.order_B)      # |B|
        print(frame.lift)         # ŝ 的指数向量
        ```
    """

    def __init__(
        self,
        p: int,
        k: int,
        orders: Sequence[int],
        res_images: Sequence[int],
        lambdas: Sequence[Sequence[int]],
        lift: Sequence[int],
        instance: Optional[RamificationInstance] = None,
        permutation: Optional[Sequence[int]] = None,
    ):
        self.p = p
        self.k = k
        self.pk = p ** k
        self.orders = list(orders)
        self.res_images = [x % self.pk for x in res_images]
        self.lambdas: List[Element] = [self.reduce(row) for row in lambdas]
        self.lift: Element = self.reduce(lift)
        self.instance = instance
        self.permutation = list(permutation) if permutation is not None else list(range(len(orders)))
        self.ring = CyclicGroupRing(p, k)
        self._elements: Optional[List[Element]] = None

    @property
    def s(self) -> int:
        return len(self.orders)

    @property
    def group_order(self) -> int:
        result = 1
        for t in self.orders:
            result *= t
        return result

    @property
    def order_B(self) -> int:
        return self.group_order // self.pk

    def __repr__(self) -> str:
        return f"GroupData(orders={self.orders}, res={self.res_images})"

    # 群运算

    def reduce(self, g: Sequence[int]) -> Element:
        return tuple(x % t for x, t in zip(g, self.orders))

    def add(self, g: Sequence[int], h: Sequence[int]) -> Element:
        return tuple((a + b) % t for a, b, t in zip(g, h, self.orders))

    def neg(self, g: Sequence[int]) -> Element:
        return tuple((-a) % t for a, t in zip(g, self.orders))

    def scale(self, c: int, g: Sequence[int]) -> Element:
        return tuple((c * a) % t for a, t in zip(g, self.orders))

    def identity(self) -> Element:
        return tuple(0 for _ in self.orders)

    def generator(self, j: int) -> Element:
        """第 j 个分量生成元 g_j（j 从 1 开始）"""
        return tuple(1 if i == j - 1 else 0 for i in range(self.s))

    def elements(self) -> List[Element]:
        """按字典序列出 G 的全部元素"""
        if self._elements is None:
            self._elements = list(itertools.product(*(range(t) for t in self.orders)))
        return self._elements

    def res(self, g: Sequence[int]) -> int:
        return sum(a * r for a, r in zip(g, self.res_images)) % self.pk

    def kernel_elements(self, modulus: Optional[int] = None) -> List[Element]:
        """ker(res mod modulus)，默认 modulus = p^k 即 B"""
        modulus = modulus or self.pk
        return [g for g in self.elements() if self.res(g) % modulus == 0]

    def B_elements(self) -> List[Element]:
        return self.kernel_elements()

    def level_kernel(self, i: int) -> List[Element]:
        """B_i = ker(res mod p^i)"""
        return self.kernel_elements(self.p ** i)

    def subgroup_generators(self, elements: Sequence[Element]) -> List[Element]:
        """贪心选取生成给定子群的元素"""
        generated = {self.identity()}
        gens: List[Element] = []
        for g in elements:
            if g in generated:
                continue
            gens.append(g)
            frontier = list(generated)
            while frontier:
                new = []
                for x in frontier:
                    for h in gens:
                        y = self.add(x, h)
                        if y not in generated:
                            generated.add(y)
                            new.append(y)
                frontier = new
        return gens

    def lift_power(self, e: int) -> Element:
        return self.scale(e, self.lift)

    def component_subgroup(self, J: Sequence[int]) -> List[Element]:
        """T_J = ∏_{j∈J} T_j 的元素"""
        ranges = [range(t) if (i + 1) in J else range(1) for i, t in enumerate(self.orders)]
        return list(itertools.product(*ranges))

    def coset_rep(self, J: Sequence[int], g: Sequence[int]) -> Element:
        """G/T_J 的代表元：把 J 中的分量置零"""
        return tuple(0 if (i + 1) in J else x % t for i, (x, t) in enumerate(zip(g, self.orders)))

    def coset_reps(self, J: Sequence[int]) -> List[Element]:
        ranges = [range(1) if (i + 1) in J else range(t) for i, t in enumerate(self.orders)]
        return list(itertools.product(*ranges))

    def extend(self, m: int, lambda_extra: Sequence[int]) -> "GroupData":
        """添加阶为 m 的循环因子 T_{s+1}，λ_{s+1} = lambda_extra，原 λ_j 补零"""
        lambdas = [list(row) + [0] for row in self.lambdas]
        lambdas.append(list(lambda_extra) + [0])
        return GroupData(
            self.p,
            self.k,
            self.orders + [m],
            self.res_images + [0],
            lambdas,
            list(self.lift) + [0],
            instance=self.instance,
        )

    def embed(self, g: Sequence[int], extra: int = 0) -> Element:
        """G → G × C_m，补 extra 个零分量"""
        return tuple(g) + (0,) * extra

    def summary(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "k": self.k,
            "s": self.s,
            "t": self.orders,
            "res_images": self.res_images,
            "lambda": [list(row) for row in self.lambdas],
            "lift": list(self.lift),
            "group_order": self.group_order,
            "order_B": self.order_B,
            "permutation": [i + 1 for i in self.permutation],
        }


def _raw_decomposition_index(pk: int, res_lambda: int, t: int) -> int:
    return gcd(gcd(res_lambda % pk, pk // t), pk)


def collect_issues(inst: RamificationInstance) -> List[ValidationIssue]:
    """检查全部结构性假设，返回问题列表"""
    issues: List[ValidationIssue] = []
    p, k = inst.p, inst.k
    if p < 3 or not isprime(p):
        issues.append(ValidationIssue("p_not_odd_prime", f"p = {p} 不是奇素数", "Γ 为奇素数幂阶循环群"))
    if k < 1:
        issues.append(ValidationIssue("k_not_positive", f"k = {k} 必须为正", "[L:K] = p^k"))
    if inst.s < 2:
        issues.append(ValidationIssue("s_too_small", f"s = {inst.s} 必须至少为 2", "s ≥ 2"))
    if issues:
        return issues
    pk = p ** k
    s = inst.s
    if len(inst.res_units) != s or len(inst.lambdas) != s:
        issues.append(ValidationIssue(
            "length_mismatch", "t、res_units、lambda 的长度必须一致", "实例文件格式"
        ))
        return issues
    for j, row in enumerate(inst.lambdas, start=1):
        if len(row) != s:
            issues.append(ValidationIssue(
                "lambda_length", f"λ_{j} 的长度应为 {s}", "λ_j ∈ G = ∏ T_j"
            ))
    if issues:
        return issues
    for j, t in enumerate(inst.t, start=1):
        if not is_power_of(t, p) or t < p or t > pk:
            issues.append(ValidationIssue(
                "t_not_p_power", f"t_{j} = {t} 不是满足 p ≤ t ≤ p^k 的 p 幂", "t_j = |T_j|"
            ))
    if not any(t == pk for t in inst.t):
        issues.append(ValidationIssue(
            "no_full_inertia", "no t_j = p^k", "至少存在一个 j_0 使 t_{j_0} = p^k"
        ))
    for j, u in enumerate(inst.res_units, start=1):
        if u % p == 0:
            issues.append(ValidationIssue(
                "res_unit_not_unit", f"u_{j} = {u} 被 p 整除", "res(g_j) = u_j·p^k/t_j"
            ))
    for j, row in enumerate(inst.lambdas, start=1):
        t = inst.t[j - 1]
        if t > 0 and row[j - 1] % t != 0:
            issues.append(ValidationIssue(
                "lambda_not_trivial_on_Fj", f"λ_{j}|_(F_{j}) = 1 violated", "λ_j|_{F_j} = 1"
            ))
    if issues:
        return issues
    res_images = [u * (pk // t) for u, t in zip(inst.res_units, inst.t)]
    for j in range(s):
        res_lambda = sum(a * r for a, r in zip(inst.lambdas[j], res_images)) % pk
        n = _raw_decomposition_index(pk, res_lambda, inst.t[j])
        if pk % (inst.t[j] * n) != 0:
            issues.append(ValidationIssue(
                "tn_not_dividing", f"t_{j + 1}·n_{j + 1} 不整除 p^k", "t_j·n_j | p^k"
            ))
    a = inst.analytic
    if a is not None:
        if a.h is not None and a.h % p == 0:
            issues.append(ValidationIssue("p_divides_h", "p | h", "p ∤ h"))
        if a.w_K is not None and a.w_K % p == 0:
            issues.append(ValidationIssue("p_divides_wK", "p | w_K", "p ∤ w_K"))
        if p > 3 and a.has("w_K", "f_I") and (12 * a.w_K * a.f_I) % p == 0:
            issues.append(ValidationIssue(
                "p_divides_12wKfI", "p | 12·w_K·f_I", "p > 3 时 p ∤ 12·w_K·f_I"
            ))
        for value in list(a.__dict__.values()):
            if isinstance(value, int) and value <= 0:
                issues.append(ValidationIssue("analytic_not_positive", "解析数据必须为正整数", "解析数据"))
                break
        if a.q:
            if len(a.q) != s:
                issues.append(ValidationIssue("q_length", "q 的长度必须为 s", "解析数据"))
            else:
                for j, (q, t) in enumerate(zip(a.q, inst.t), start=1):
                    if q % t != 1 % t:
                        issues.append(ValidationIssue(
                            "norm_not_1_mod_t", f"N(℘_{j}) = {q} ≢ 1 mod t_{j}",
                            "N_{K/Q}(℘_j) ≡ 1 (mod t_j)",
                        ))
    return issues


def canonical_order(inst: RamificationInstance) -> List[int]:
    """按 n_j 升序、t_j 降序的稳定排序（0 起始的原下标）"""
    pk = inst.p ** inst.k
    res_images = [u * (pk // t) for u, t in zip(inst.res_units, inst.t)]
    keys = []
    for j in range(inst.s):
        res_lambda = sum(a * r for a, r in zip(inst.lambdas[j], res_images)) % pk
        keys.append((_raw_decomposition_index(pk, res_lambda, inst.t[j]), -inst.t[j]))
    return sorted(range(inst.s), key=lambda j: keys[j])


def _choose_lift(p: int, k: int, orders: List[int], res_images: List[int], units: List[int]) -> Element:
    pk = p ** k
    for j, (t, u) in enumerate(zip(orders, units)):
        if t == pk and u % pk == 1:
            return tuple(1 if i == j else 0 for i in range(len(orders)))
    for g in itertools.product(*(range(t) for t in orders)):
        if sum(a * r for a, r in zip(g, res_images)) % pk == 1:
            return tuple(g)
    raise ValidationError([ValidationIssue("res_not_surjective", "res 不是满射", "G → Γ 满射")])


def validate(inst: RamificationInstance) -> GroupData:
    """验证实例并构造 GroupData

    Args:
        inst: 原始实例

    Returns:
        规范排序后的 GroupData

    Raises:
        ValidationError: 携带全部违反的假设
    """
    issues = collect_issues(inst)
    if issues:
        logger.info("实例校验失败: %d 个问题", len(issues))
        raise ValidationError(issues)
    perm = canonical_order(inst)
    pk = inst.p ** inst.k
    orders = [inst.t[j] for j in perm]
    units = [inst.res_units[j] for j in perm]
    res_images = [u * (pk // t) for u, t in zip(units, orders)]
    lambdas = [[inst.lambdas[a][b] for b in perm] for a in perm]
    lift = _choose_lift(inst.p, inst.k, orders, res_images, units)
    frame = GroupData(inst.p, inst.k, orders, res_images, lambdas, lift, inst, perm)
    if len(frame.B_elements()) != frame.order_B:
        raise ValidationError([ValidationIssue("res_not_surjective", "res 不是满射", "G → Γ 满射")])
    logger.debug("validate: orders=%s, permutation=%s", orders, perm)
    return frame


def iter_subsets(indices: Sequence[int], proper: bool = True) -> Iterator[frozenset]:
    """按大小与字典序枚举子集"""
    items = sorted(indices)
    top = len(items) if not proper else len(items) - 1
    for size in range(top + 1):
        for combo in itertools.combinations(items, size):
            yield frozenset(combo)
