# -*- coding: utf-8 -*-
"""命令行与报告输出的集成测试"""

import json

import pytest
from click.testing import CliRunner

from src.main import cli


@pytest.fixture
def runner():
    return CliRunner()


def _invoke(runner, tmp_path, *args):
    """运行命令并读取 --out 写出的报告"""
    out = tmp_path / "report.out"
    result = runner.invoke(cli, [*args, "--out", str(out)])
    report = out.read_text(encoding="utf-8") if out.exists() else None
    return result, report


class TestCommands:
    """各子命令的成功路径"""

    def test_validate(self, runner, tmp_path, instances_dir):
        """测试 validate 输出框架摘要"""
        result, text = _invoke(runner, tmp_path, "validate", str(instances_dir / "instanceA.json"))
        assert result.exit_code == 0
        report = json.loads(text)
        assert report["schema"] == 1
        assert report["command"] == "validate"
        assert report["instance"] == "instanceA"
        assert report["frame"]["t"] == [3, 3]

    def test_derive_B(self, runner, tmp_path, instances_dir):
        """测试 derive 给出 ν、φ_L 与 r"""
        result, text = _invoke(runner, tmp_path, "derive", str(instances_dir / "instanceB.json"))
        assert result.exit_code == 0
        report = json.loads(text)
        assert report["index"]["nu"] == 1
        assert report["index"]["phi_L"] == 9
        assert report["derived"]["jump_profile"]["r"] == 1
        assert report["expect"] == {"nu": 1, "phi_L": 9, "r": 1}

    def test_build_A(self, runner, tmp_path, instances_dir):
        """测试 build 的秩"""
        result, text = _invoke(runner, tmp_path, "build", str(instances_dir / "instanceA.json"))
        assert result.exit_code == 0
        report = json.loads(text)
        assert report["U"]["rank"] == 11
        assert report["Uprime"]["rank"] == 9
        assert report["relation_defects"] == []
        assert report["expect"]["rank_U"] == 11

    def test_annihilate_A(self, runner, tmp_path, instances_dir):
        """测试 annihilate --kappa 1 给出 1 - s"""
        result, text = _invoke(
            runner, tmp_path, "annihilate", str(instances_dir / "instanceA.json"), "--kappa", "1"
        )
        assert result.exit_code == 0
        report = json.loads(text)
        assert report["annihilate"]["transfer"] == "1 - s"
        assert report["expect"]["lattice_index"] == 1

    def test_solve_single_level(self, runner, tmp_path, instances_dir):
        """测试 solve --level"""
        result, text = _invoke(
            runner, tmp_path, "solve", str(instances_dir / "instanceB.json"), "--level", "2"
        )
        assert result.exit_code == 0
        levels = json.loads(text)["levels"]
        assert len(levels) == 1
        assert levels[0]["certificate"]["y"] == "1 - s^2"

    def test_extend_uses_config_m(self, runner, tmp_path, instances_dir):
        """测试 extend 未给 --m 时取配置中的 m"""
        result, text = _invoke(runner, tmp_path, "extend", str(instances_dir / "instanceA.json"))
        assert result.exit_code == 0
        report = json.loads(text)
        assert report["extend"]["m"] == 3
        assert report["extend"]["lambda_extra"] == [1, 2]
        assert report["extend"]["Uq"]["rank"] == 30

    def test_degenerate_lambda_accepted(self, runner, tmp_path, instances_dir):
        """测试 λ 全为零的实例通过秩诊断"""
        result, text = _invoke(runner, tmp_path, "build", str(instances_dir / "degenerate_lambda.json"))
        assert result.exit_code == 0
        report = json.loads(text)
        assert report["U"]["rank_diagnostic"]["ok"]
        assert report["expect"] == {"rank_U": 11}

    def test_markdown(self, runner, tmp_path, instances_dir):
        """测试 Markdown 报告"""
        result, text = _invoke(
            runner, tmp_path, "derive", str(instances_dir / "instanceA.json"), "--format", "markdown"
        )
        assert result.exit_code == 0
        assert text.startswith("# derive: instanceA")
        assert "## index" in text

    def test_deterministic(self, runner, tmp_path, instances_dir):
        """测试同一输入的报告逐字节一致"""
        path = str(instances_dir / "instanceB.json")
        _, first = _invoke(runner, tmp_path, "derive", path)
        _, second = _invoke(runner, tmp_path, "derive", path)
        assert first == second

    def test_stdout(self, runner, instances_dir):
        """测试未给 --out 时报告写到 stdout"""
        result = runner.invoke(cli, ["validate", str(instances_dir / "instanceA.json")])
        assert result.exit_code == 0
        assert '"command": "validate"' in result.output


class TestExitCodes:
    """错误到退出码的映射"""

    def test_validation_error(self, runner, tmp_path, instances_dir):
        """测试校验失败为 2"""
        result, _ = _invoke(runner, tmp_path, "validate", str(instances_dir / "invalid_no_full_inertia.json"))
        assert result.exit_code == 2

    def test_missing_file(self, runner, tmp_path):
        """测试文件不存在为 4"""
        result, _ = _invoke(runner, tmp_path, "validate", str(tmp_path / "missing.json"))
        assert result.exit_code == 4

    def test_bad_kappa(self, runner, tmp_path, instances_dir):
        """测试无法解析的 κ 为 4"""
        result, _ = _invoke(
            runner, tmp_path, "annihilate", str(instances_dir / "instanceA.json"), "--kappa", "x + 1"
        )
        assert result.exit_code == 4

    def test_bad_m(self, runner, tmp_path, instances_dir):
        """测试 m 不是 p 的幂为 2"""
        result, _ = _invoke(runner, tmp_path, "extend", str(instances_dir / "instanceA.json"), "--m", "4")
        assert result.exit_code == 2

    def test_expect_mismatch(self, runner, tmp_path, instances_dir):
        """测试与 expect 不符为 3"""
        data = json.loads((instances_dir / "instanceA.json").read_text(encoding="utf-8"))
        data["expect"]["rank_U"] = 12
        path = tmp_path / "pinned.json"
        path.write_text(json.dumps(data), encoding="utf-8")
        result, text = _invoke(runner, tmp_path, "build", str(path))
        assert result.exit_code == 3
        error = json.loads(text)["error"]
        assert error["kind"] == "model_discrepancy"
        assert error["details"]["rank_U"] == {"expected": 12, "actual": 11}

    def test_shipped_expect_mismatch(self, runner, tmp_path, instances_dir):
        """测试自带的 expect 不符实例退出码为 3"""
        result, text = _invoke(runner, tmp_path, "build", str(instances_dir / "expect_mismatch.json"))
        assert result.exit_code == 3
        error = json.loads(text)["error"]
        assert error["kind"] == "model_discrepancy"
        assert error["details"] == {"rank_U": {"expected": 12, "actual": 11}}

    def test_missing_config(self, runner, tmp_path, instances_dir):
        """测试配置文件不存在为 4"""
        result = runner.invoke(
            cli, ["validate", str(instances_dir / "instanceA.json"), "--config", str(tmp_path / "none.yaml")]
        )
        assert result.exit_code == 4


class TestSelftest:
    """selftest 命令"""

    def test_selftest_A(self, runner, tmp_path, instances_dir):
        """测试小试验数下全部套件通过"""
        config = tmp_path / "config.yaml"
        config.write_text(
            "selftest:\n  seed: 1\n  oracle_trials: 4\n  zmap_trials: 4\n"
            "  lemma_trials: 4\n  random_pairs: 4\n",
            encoding="utf-8",
        )
        result, text = _invoke(
            runner, tmp_path, "selftest", str(instances_dir / "instanceA.json"), "--config", str(config)
        )
        assert result.exit_code == 0
        report = json.loads(text)["selftest"]
        assert report["ok"]
        assert report["seed"] == 1
        assert report["failed"] == 0
        names = {s["name"]: {r["name"] for r in s["records"]} for s in report["suites"]}
        assert {"quotient_multiplicative", "nonzerodivisor_injective"} <= names["group_ring"]
        assert {
            "hnf_unimodular_invariance",
            "snf_unimodular",
            "solve_matches_search",
            "saturate_idempotent",
            "index_chain",
        } <= names["lattice"]
