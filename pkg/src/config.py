# -*- coding: utf-8 -*-
"""配置文件加载器"""

import os
import yaml
from typing import Dict, Any, Optional
from pathlib import Path


COMMANDS = ("validate", "derive", "build", "solve", "extend", "annihilate", "selftest", "report")
FORMATS = ("json", "markdown", "table")


class Config:
    """配置管理类"""

    def __init__(self, config_path: Optional[str] = None):
        """
        Args:
            config_path: 配置文件路径，默认为项目根目录下的 config/config.yaml
        """
        if config_path is None:
            project_root = Path(__file__).parent.parent
            config_path = project_root / "config" / "config.yaml"

        self.config_path = Path(config_path)
        self._config: Dict[str, Any] = {}
        self._load_config()
        self._load_env()

    def _load_config(self):
        """加载配置文件"""
        if not self.config_path.exists():
            raise FileNotFoundError(f"配置文件不存在: {self.config_path}")

        with open(self.config_path, "r", encoding="utf-8") as f:
            self._config = yaml.safe_load(f) or {}

    def _load_env(self):
        """环境变量覆盖：ELLANN_LOG_LEVEL、ELLANN_SEED"""
        level = os.getenv("ELLANN_LOG_LEVEL")
        if level:
            self._config.setdefault("logging", {})["level"] = level.upper()

        seed = os.getenv("ELLANN_SEED")
        if seed:
            try:
                self._config.setdefault("selftest", {})["seed"] = int(seed)
            except ValueError:
                raise ValueError(f"ELLANN_SEED 必须是整数: {seed!r}")

    def get(self, key: str, default: Any = None) -> Any:
        """获取配置项

        Args:
            key: 配置键，支持点号分隔（如 "selftest.seed"）
            default: 默认值

        Returns:
            配置值
        """
        keys = key.split(".")
        value = self._config

        for k in keys:
            if isinstance(value, dict):
                value = value.get(k)
            else:
                return default

            if value is None:
                return default

        return value

    def get_selftest_config(self) -> Dict[str, Any]:
        """获取自检配置"""
        return self._config.get("selftest", {})

    @property
    def language(self) -> str:
        """获取语言设置"""
        return self.get("output.language", "zh")

    @property
    def output_format(self) -> str:
        return self.get("output.format", "json")

    @property
    def seed(self) -> int:
        return int(self.get("selftest.seed", 0))

    @property
    def log_level(self) -> str:
        return str(self.get("logging.level", "WARNING")).upper()


class RunConfig:
    """一次命令运行的完整选项（配置文件值被命令行覆盖）"""

    def __init__(self):
        self.command: str = "validate"
        self.instance_path: Optional[str] = None
        self.level: Optional[int] = None
        self.m: Optional[int] = None
        self.default_m: Optional[int] = None
        self.lambda_extra: Optional[str] = None
        self.strict_m: bool = False
        self.kappa: str = "1"
        self.f: int = 1
        self.all_J: bool = False
        self.output_format: str = "json"
        self.out: Optional[str] = None
        self.language: str = "zh"
        self.seed: int = 0
        self.oracle_trials: int = 50
        self.zmap_trials: int = 100
        self.lemma_trials: int = 100
        self.random_pairs: int = 100

    def __repr__(self) -> str:
        return f"RunConfig(command={self.command}, instance={self.instance_path})"

    @classmethod
    def from_dict(cls, config: Dict[str, Any], **options: Any) -> "RunConfig":
        """从配置字典与命令行选项创建

        Args:
            config: Config._config
            options: 命令行选项，值为 None 的项不覆盖配置

        Raises:
            ValueError: 命令或输出格式未知
        """
        run = cls()
        output = config.get("output", {}) or {}
        selftest = config.get("selftest", {}) or {}
        extend = config.get("extend", {}) or {}
        annihilate = config.get("annihilate", {}) or {}

        run.output_format = output.get("format", run.output_format)
        run.language = output.get("language", run.language)
        run.seed = int(selftest.get("seed", run.seed))
        run.oracle_trials = int(selftest.get("oracle_trials", run.oracle_trials))
        run.zmap_trials = int(selftest.get("zmap_trials", run.zmap_trials))
        run.lemma_trials = int(selftest.get("lemma_trials", run.lemma_trials))
        run.random_pairs = int(selftest.get("random_pairs", run.random_pairs))
        run.default_m = extend.get("m")
        run.strict_m = bool(extend.get("strict_m", run.strict_m))
        run.f = int(annihilate.get("f", run.f))

        for key, value in options.items():
            if value is not None:
                setattr(run, key, value)

        if run.command not in COMMANDS:
            raise ValueError(f"未知命令: {run.command}")
        if run.output_format not in FORMATS:
            raise ValueError(f"未知输出格式: {run.output_format}")
        return run

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "level": self.level,
            "m": self.m,
            "lambda_extra": self.lambda_extra,
            "kappa": self.kappa,
            "f": self.f,
            "all_J": self.all_J,
            "seed": self.seed,
        }


def load_config(config_path: Optional[str] = None) -> Config:
    """加载配置

    Args:
        config_path: 配置文件路径

    Returns:
        Config 实例
    """
    return Config(config_path)
