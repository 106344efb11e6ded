# -*- coding: utf-8 -*-
"""UI 显示模块"""

from .display import ResultDisplay, create_display
from .report import SCHEMA_VERSION, build_report, normalize, render, to_json, to_markdown, write_report

__all__ = [
    "ResultDisplay",
    "create_display",
    "SCHEMA_VERSION",
    "build_report",
    "normalize",
    "render",
    "to_json",
    "to_markdown",
    "write_report",
]
