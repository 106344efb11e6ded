# -*- coding: utf-8 -*-
"""ellann - 主程序入口"""

import sys
import logging
from functools import wraps
from typing import Any, Dict, List, Optional

import click

from .config import FORMATS, RunConfig, load_config
from .errors import AlgebraError, ErrorKind, InvalidInputError, ModelDiscrepancyError
from .frame import GroupData, RamificationInstance, frame_summary, validate
from .module import (
    SMModule,
    build_U,
    direct_sum_check,
    extension_report,
    project_Uprime,
    relation_defects,
    require_rank,
)
from .annihilator import (
    UnitLattices,
    annihilate_report,
    build_levels,
    index_check,
    index_formulas,
    norm_membership_checks,
    unit_lattices,
)
from .checks import run_selftest
from .parser import load_instance, parse_exponent_vector, parse_polynomial
from .ui import build_report, create_display, render, write_report


# 配置日志（输出到 stderr，stdout 只留给报告）
logging.basicConfig(
    level=logging.WARNING,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)
logger = logging.getLogger(__name__)

EXPECT_KEYS = ("rank_U", "rank_Uprime", "nu", "phi_L", "r", "lattice_index", "checksum")


class EllannApp:
    """一次命令运行：读取实例、按需构造各层对象并汇总报告段落"""

    def __init__(self, run: RunConfig):
        """
        Args:
            run: 运行选项
        """
        self.run = run
        self.instance: Optional[RamificationInstance] = None
        self.frame: Optional[GroupData] = None
        self.measured: Dict[str, Any] = {}
        self._U: Optional[SMModule] = None
        self._Uprime: Optional[SMModule] = None
        self._levels = None
        self._lattices: Optional[UnitLattices] = None

    def load(self) -> GroupData:
        """读取并校验实例文件"""
        self.instance = load_instance(self.run.instance_path)
        self.frame = validate(self.instance)
        return self.frame

    @property
    def U(self) -> SMModule:
        if self._U is None:
            self._U = build_U(self.frame)
            self.measured["rank_U"] = self._U.rank
            self.measured["checksum"] = self._U.checksum()
        return self._U

    @property
    def Uprime(self) -> SMModule:
        if self._Uprime is None:
            self._Uprime = project_Uprime(self.U)
            self.measured["rank_Uprime"] = self._Uprime.rank
        return self._Uprime

    @property
    def levels(self):
        if self._levels is None:
            require_rank(self.U)
            self._levels = build_levels(self.frame, self.U)
        return self._levels

    @property
    def lattices(self) -> UnitLattices:
        if self._lattices is None:
            self._lattices = unit_lattices(self.U, self.levels, all_J=self.run.all_J)
        return self._lattices

    # 各命令

    def cmd_validate(self) -> Dict[str, Any]:
        return {"frame": self.frame.summary()}

    def cmd_derive(self) -> Dict[str, Any]:
        summary = frame_summary(self.frame)
        report = index_check(self.frame)
        report.formulas = index_formulas(self.frame, self.instance.analytic)
        self.measured.update(nu=report.nu, phi_L=report.phi_L, r=summary["jump_profile"]["r"])
        return {"frame": self.frame.summary(), "derived": summary, "index": report.to_dict()}

    def cmd_build(self) -> Dict[str, Any]:
        U, Uprime = self.U, self.Uprime
        sections = {
            "U": U.summary(),
            "Uprime": Uprime.summary(),
            "direct_sum": direct_sum_check(U),
            "relation_defects": relation_defects(U),
        }
        require_rank(U)
        return sections

    def cmd_solve(self) -> Dict[str, Any]:
        require_rank(self.U)
        only = [self.run.level] if self.run.level else None
        solutions = self.levels if only is None else build_levels(self.frame, self.U, only)
        return {"levels": [s.to_dict() for s in solutions]}

    def cmd_extend(self) -> Dict[str, Any]:
        require_rank(self.U)
        m = self.run.m if self.run.m is not None else self.run.default_m
        if m is None:
            raise InvalidInputError("extend 需要 --m", anchor="extend")
        return {"extend": extension_report(self.frame, self.U, int(m), self._lambda_extra(), self.run.strict_m)}

    def cmd_annihilate(self) -> Dict[str, Any]:
        kappa = parse_polynomial(self.run.kappa, self.frame.ring)
        lattices = self.lattices
        report = index_check(self.frame, lattices)
        self.measured["lattice_index"] = report.lattice_index_Cbar_C
        sections = {
            "annihilate": annihilate_report(self.frame, self.U, lattices, kappa, self.run.f),
            "lattices": lattices.to_dict(),
            "norm_membership": norm_membership_checks(self.U, lattices),
        }
        return sections

    def cmd_selftest(self) -> Dict[str, Any]:
        extension = None
        if self.run.m is not None:
            extension = {"m": int(self.run.m), "lambda_extra": self._lambda_extra(), "strict_m": self.run.strict_m}
        report = run_selftest(
            self.frame,
            seed=self.run.seed,
            U=self.U,
            random_pairs=self.run.random_pairs,
            oracle_trials=self.run.oracle_trials,
            zmap_trials=self.run.zmap_trials,
            lemma_trials=self.run.lemma_trials,
            extension=extension,
        )
        sections = {"selftest": report.to_dict()}
        if not report.ok:
            raise ModelDiscrepancyError("自检未全部通过", anchor="selftest", details=sections["selftest"])
        return sections

    def cmd_report(self) -> Dict[str, Any]:
        sections: Dict[str, Any] = {}
        sections.update(self.cmd_derive())
        sections.update(self.cmd_build())
        sections.update(self.cmd_solve())
        sections.update(self.cmd_annihilate())
        index = index_check(self.frame, self.lattices)
        index.formulas = index_formulas(self.frame, self.instance.analytic, index.lattice_index_Cbar_C)
        sections["index"] = index.to_dict()
        if self.run.m is not None:
            sections.update(self.cmd_extend())
        return sections

    def _lambda_extra(self) -> List[int]:
        """--lambda-extra，缺省取 B 中第一个非单位元"""
        if self.run.lambda_extra:
            return parse_exponent_vector(self.run.lambda_extra)
        for b in self.frame.B_elements():
            if any(b):
                return list(b)
        return list(self.frame.identity())

    def check_expectations(self) -> Dict[str, Any]:
        """比对实例文件 expect 中已测得的项

        Raises:
            ModelDiscrepancyError: 任一项不符
        """
        expect = self.instance.expect if self.instance else {}
        mismatches = {}
        for key in EXPECT_KEYS:
            if key in expect and key in self.measured:
                expected = expect[key]
                actual = self.measured[key]
                if str(expected) != str(actual):
                    mismatches[key] = {"expected": expected, "actual": actual}
        if mismatches:
            raise ModelDiscrepancyError("与 expect 中的值不符", anchor="expect", details=mismatches)
        return {k: self.measured[k] for k in EXPECT_KEYS if k in expect and k in self.measured}

    def execute(self) -> Dict[str, Any]:
        self.load()
        sections = getattr(self, f"cmd_{self.run.command}")()
        checked = self.check_expectations()
        if checked:
            sections["expect"] = checked
        return build_report(self.run.command, self.instance.name, sections)


def run(config: RunConfig, display=None) -> int:
    """执行一条命令并输出报告

    Returns:
        进程退出码
    """
    display = display or create_display(config.language)
    app = EllannApp(config)
    try:
        report = app.execute()
    except AlgebraError as e:
        logger.debug("命令失败: %r", e)
        display.display_error(e)
        if config.output_format != "table":
            failure = build_report(config.command, app.instance.name if app.instance else None, {"error": e.to_dict()})
            text = render(failure, config.output_format)
            write_report(text, config.out)
        return e.kind.exit_code()

    if config.output_format == "table":
        display.display_report(report)
    else:
        text = render(report, config.output_format)
        if config.out:
            write_report(text, config.out)
        else:
            click.echo(text, nl=False)
    return 0


def common_options(fn):
    """各子命令共用的选项"""

    @click.argument("instance_path", type=click.Path())
    @click.option("--config", "-c", "config_path", default=None, help="配置文件路径")
    @click.option("--format", "output_format", type=click.Choice(FORMATS), default=None, help="输出格式")
    @click.option("--out", default=None, help="报告写入路径（默认 stdout）")
    @click.option("--seed", type=int, default=None, help="随机试验种子")
    @click.option("--verbose", "-v", is_flag=True, help="详细日志输出")
    @wraps(fn)
    def wrapper(**kwargs):
        return fn(**kwargs)

    return wrapper


def _dispatch(command: str, config_path: Optional[str], verbose: bool, **options: Any) -> None:
    try:
        config = load_config(config_path)
    except (FileNotFoundError, ValueError) as e:
        create_display().display_error(str(e), ErrorKind.IO_ERROR)
        sys.exit(ErrorKind.IO_ERROR.exit_code())

    logging.getLogger().setLevel(logging.DEBUG if verbose else config.log_level)
    try:
        run_config = RunConfig.from_dict(config._config, command=command, **options)
    except ValueError as e:
        create_display(config.language).display_error(str(e), ErrorKind.INVALID_INPUT)
        sys.exit(ErrorKind.INVALID_INPUT.exit_code())
    sys.exit(run(run_config, create_display(run_config.language)))


@click.group()
@click.version_option("1.0.0", prog_name="ellann")
def cli():
    """椭圆单位零化子：群环、模 U 与指数公式的精确验证"""


@cli.command("validate")
@common_options
def validate_instance(**kwargs):
    """校验实例并输出框架摘要"""
    _dispatch("validate", **kwargs)


@cli.command()
@common_options
def derive(**kwargs):
    """n_j、M_i、跳跃、r、ν、φ_L 与指数公式"""
    _dispatch("derive", **kwargs)


@cli.command()
@common_options
def build(**kwargs):
    """构造 U 与 U' 并给出秩诊断"""
    _dispatch("build", **kwargs)


@cli.command()
@common_options
@click.option("--level", type=int, default=None, help="只求这一层")
def solve(**kwargs):
    """求各层的根并给出证书"""
    _dispatch("solve", **kwargs)


@cli.command()
@common_options
@click.option("--m", "m", type=int, default=None, help="T_{s+1} 的阶")
@click.option("--lambda-extra", "lambda_extra", default=None, help="λ_{s+1}，如 0,1")
@click.option("--strict-m", "strict_m", is_flag=True, default=None, help="p^(ks) ∤ m 时报错")
def extend(**kwargs):
    """构造 U_q、χ、χ' 与 β 证书"""
    _dispatch("extend", **kwargs)


@cli.command()
@common_options
@click.option("--kappa", default=None, help="零化子 κ，如 \"2 + s\"")
@click.option("--f", "f", type=int, default=None, help="与 p 互素的因子 f")
@click.option("--all-J", "all_J", is_flag=True, default=None, help="加入全部 w_J 生成元")
def annihilate(**kwargs):
    """转移元 (1 - σ^{p^r})·κ 与 z(δ_k)"""
    _dispatch("annihilate", **kwargs)


@cli.command()
@common_options
@click.option("--m", "m", type=int, default=None, help="同时检查 q 扩张")
@click.option("--lambda-extra", "lambda_extra", default=None, help="λ_{s+1}")
def selftest(**kwargs):
    """运行全部不变量自检"""
    _dispatch("selftest", **kwargs)


@cli.command()
@common_options
@click.option("--kappa", default=None, help="零化子 κ")
@click.option("--f", "f", type=int, default=None, help="与 p 互素的因子 f")
@click.option("--m", "m", type=int, default=None, help="给出时包含 q 扩张")
@click.option("--lambda-extra", "lambda_extra", default=None, help="λ_{s+1}")
@click.option("--all-J", "all_J", is_flag=True, default=None, help="加入全部 w_J 生成元")
def report(**kwargs):
    """汇总 derive、build、solve、annihilate（及 extend）"""
    _dispatch("report", **kwargs)


def main():
    """主函数"""
    try:
        cli(standalone_mode=True)
    except KeyboardInterrupt:
        print("\n操作已取消", file=sys.stderr)
        sys.exit(0)


if __name__ == "__main__":
    main()
