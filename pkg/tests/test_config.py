# -*- coding: utf-8 -*-
"""配置加载单元测试"""

import pytest

from src.config import Config, RunConfig, load_config


class TestConfig:
    """配置文件与环境变量"""

    def test_defaults(self):
        """测试默认配置文件"""
        config = load_config()
        assert config.output_format == "json"
        assert config.seed == 7
        assert config.get("extend.m") == 3
        assert config.get("missing.key", "fallback") == "fallback"

    def test_env_override(self, monkeypatch):
        """测试 ELLANN_SEED 与 ELLANN_LOG_LEVEL"""
        monkeypatch.setenv("ELLANN_SEED", "42")
        monkeypatch.setenv("ELLANN_LOG_LEVEL", "debug")
        config = Config()
        assert config.seed == 42
        assert config.log_level == "DEBUG"

    def test_env_seed_not_integer(self, monkeypatch):
        """测试非整数种子"""
        monkeypatch.setenv("ELLANN_SEED", "abc")
        with pytest.raises(ValueError):
            Config()

    def test_missing_file(self, tmp_path):
        """测试配置文件不存在"""
        with pytest.raises(FileNotFoundError):
            Config(str(tmp_path / "none.yaml"))


class TestRunConfig:
    """命令行选项覆盖配置"""

    def test_options_override(self):
        """测试命令行值覆盖配置、None 不覆盖"""
        config = load_config()
        run = RunConfig.from_dict(config._config, command="selftest", seed=3, output_format=None)
        assert run.seed == 3
        assert run.output_format == "json"
        assert run.oracle_trials == 50

    def test_default_m(self):
        """测试 extend.m 只作为缺省值"""
        run = RunConfig.from_dict(load_config()._config, command="extend")
        assert run.default_m == 3
        assert run.m is None

    def test_unknown_command(self):
        with pytest.raises(ValueError):
            RunConfig.from_dict({}, command="plot")

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            RunConfig.from_dict({}, command="derive", output_format="xml")
