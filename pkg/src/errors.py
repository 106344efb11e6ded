# -*- coding: utf-8 -*-
"""错误分类与异常定义"""

from enum import Enum
from typing import Any, Dict, List, Optional


class ErrorKind(Enum):
    """错误类别枚举"""
    INVALID_INPUT = "invalid_input"
    NOT_SUBLATTICE = "not_sublattice"
    VALIDATION = "validation"
    MODEL_DISCREPANCY = "model_discrepancy"
    DEGENERATE_LAMBDA = "degenerate_lambda"
    INTERNAL_ERROR = "internal_error"
    IO_ERROR = "io_error"
    PARSE_ERROR = "parse_error"

    def exit_code(self) -> int:
        """获取对应的进程退出码"""
        codes = {
            self.INVALID_INPUT: 2,
            self.VALIDATION: 2,
            self.NOT_SUBLATTICE: 3,
            self.MODEL_DISCREPANCY: 3,
            self.DEGENERATE_LAMBDA: 3,
            self.IO_ERROR: 4,
            self.PARSE_ERROR: 4,
            self.INTERNAL_ERROR: 1,
        }
        return codes[self]

    def get_display_name(self, language: str = "zh") -> str:
        """获取显示名称"""
        names = {
            "zh": {
                "invalid_input": "输入无效",
                "not_sublattice": "非子格",
                "validation": "实例校验失败",
                "model_discrepancy": "模型不一致",
                "degenerate_lambda": "退化的 λ",
                "internal_error": "内部错误",
                "io_error": "读写错误",
                "parse_error": "解析错误",
            },
            "en": {
                "invalid_input": "Invalid Input",
                "not_sublattice": "Not a Sublattice",
                "validation": "Validation Failed",
                "model_discrepancy": "Model Discrepancy",
                "degenerate_lambda": "Degenerate Lambda",
                "internal_error": "Internal Error",
                "io_error": "I/O Error",
                "parse_error": "Parse Error",
            },
        }
        return names.get(language, names["zh"]).get(self.value, self.value)


class AlgebraError(Exception):
    """所有库内异常的基类"""

    kind: ErrorKind = ErrorKind.INTERNAL_ERROR

    def __init__(
        self,
        message: str,
        anchor: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
        kind: Optional[ErrorKind] = None,
    ):
        """
        Args:
            message: 错误描述
            anchor: 出错的不变量或检查项名称
            details: 附加数据（写入报告）
            kind: 覆盖默认的错误类别
        """
        super().__init__(message)
        self.message = message
        self.anchor = anchor
        self.details = details or {}
        if kind is not None:
            self.kind = kind

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典"""
        data = {"kind": self.kind.value, "message": self.message}
        if self.anchor:
            data["anchor"] = self.anchor
        if self.details:
            data["details"] = self.details
        return data

    def __repr__(self) -> str:
        return f"{type(self).__name__}(kind={self.kind.value}, message={self.message!r})"


class InvalidInputError(AlgebraError):
    kind = ErrorKind.INVALID_INPUT


class NotSublatticeError(AlgebraError):
    kind = ErrorKind.NOT_SUBLATTICE


class ModelDiscrepancyError(AlgebraError):
    kind = ErrorKind.MODEL_DISCREPANCY


class InternalError(AlgebraError):
    kind = ErrorKind.INTERNAL_ERROR


class InstanceFileError(AlgebraError):
    """实例文件读取或解析失败"""

    kind = ErrorKind.PARSE_ERROR


class ValidationIssue:
    """单条校验问题"""

    def __init__(self, code: str, message: str, anchor: str):
        """
        Args:
            code: 机器可读的问题代码
            message: 描述
            anchor: 违反的结构性假设
        """
        self.code = code
        self.message = message
        self.anchor = anchor

    def to_dict(self) -> Dict[str, str]:
        return {"code": self.code, "message": self.message, "anchor": self.anchor}

    def __repr__(self) -> str:
        return f"ValidationIssue(code={self.code!r})"


class ValidationError(AlgebraError):
    """实例校验失败，携带全部问题列表"""

    kind = ErrorKind.VALIDATION

    def __init__(self, issues: List[ValidationIssue]):
        summary = "; ".join(issue.message for issue in issues)
        super().__init__(summary or "instance validation failed", anchor="validate")
        self.issues = issues

    def to_dict(self) -> Dict[str, Any]:
        data = super().to_dict()
        data["issues"] = [issue.to_dict() for issue in self.issues]
        return data
