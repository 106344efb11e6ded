# -*- coding: utf-8 -*-
"""结果展示模块"""

import sys
from typing import Any, Dict, Optional, Union

from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich import box

from ..errors import AlgebraError, ErrorKind


class ResultDisplay:
    """结果展示器

    使用 Rich 库进行格式化输出；报告写 stdout，错误与提示写 stderr。
    """

    def __init__(self, language: str = "zh", show_details: bool = True):
        """
        Args:
            language: 语言设置 ("zh" 或 "en")
            show_details: 是否展开嵌套的检查记录
        """
        # Windows 控制台强制使用 UTF-8
        if sys.platform == 'win32':
            import io
            self.console = Console(file=io.TextIOWrapper(
                sys.stdout.buffer, encoding='utf-8', errors='replace'
            ), legacy_windows=False, force_terminal=True)
        else:
            self.console = Console()
        self.err_console = Console(stderr=True)

        self.language = language
        self.show_details = show_details

    def display_report(self, report: Dict[str, Any]):
        """以表格展示报告

        Args:
            report: build_report 的结果
        """
        title = self._get_text("report", "报告", "Report")
        self.console.print(f"[bold cyan]{title}: {report.get('command')}[/bold cyan]")
        if report.get("instance"):
            self.console.print(f"[dim]{report['instance']}[/dim]")
        self.console.print()

        for key in sorted(report):
            if key in ("schema", "command", "instance"):
                continue
            value = report[key]
            if key == "selftest" and isinstance(value, dict):
                self._display_selftest(value)
            elif isinstance(value, dict):
                self.console.print(self._table(key, value))
            else:
                self.console.print(f"[bold]{key}[/bold]: {value}")
            self.console.print()

    def _table(self, title: str, data: Dict[str, Any]) -> Table:
        table = Table(title=title, box=box.ROUNDED, show_header=True)
        table.add_column(self._get_text("key", "项", "Key"), style="cyan")
        table.add_column(self._get_text("value", "值", "Value"))
        for key in sorted(data):
            value = data[key]
            if isinstance(value, (dict, list)) and not self.show_details:
                value = "…"
            table.add_row(str(key), str(value))
        return table

    def _display_selftest(self, data: Dict[str, Any]):
        """展示自检套件的通过/失败计数"""
        table = Table(
            title=self._get_text("selftest", "自检", "Self-test"), box=box.ROUNDED
        )
        table.add_column(self._get_text("suite", "套件", "Suite"), style="cyan")
        table.add_column(self._get_text("passed", "通过", "Passed"), style="green")
        table.add_column(self._get_text("failed", "失败", "Failed"), style="red")
        for suite in data.get("suites", []):
            table.add_row(suite["name"], str(suite["passed"]), str(suite["failed"]))
        self.console.print(table)
        if self.show_details:
            for suite in data.get("suites", []):
                for record in suite["records"]:
                    if not record["passed"]:
                        self.display_warning(f"{suite['name']}/{record['name']}")

    def display_error(self, error: Union[AlgebraError, str], kind: Optional[ErrorKind] = None):
        """展示错误信息"""
        if isinstance(error, AlgebraError):
            kind = error.kind
            body = f"[red]{error.message}[/red]"
            if error.anchor:
                body += f"\n[dim]{error.anchor}[/dim]"
            for issue in getattr(error, "issues", []):
                body += f"\n  • {issue.code}: {issue.message}"
        else:
            body = f"[red]{error}[/red]"
        title = self._get_text("error", "错误", "Error")
        if kind is not None:
            title = f"{title} · {kind.get_display_name(self.language)}"
        error_panel = Panel(body, title=title, border_style="red")
        self.err_console.print(error_panel)

    def display_info(self, message: str):
        """展示提示信息"""
        self.err_console.print(f"[blue]ℹ[/blue] {message}")

    def display_success(self, message: str):
        """展示成功信息"""
        self.err_console.print(f"[green]✓[/green] {message}")

    def display_warning(self, message: str):
        """展示警告信息"""
        self.err_console.print(f"[yellow]⚠[/yellow] {message}")

    def _get_text(self, key: str, zh: str, en: str) -> str:
        """根据语言获取文本

        Args:
            key: 文本键
            zh: 中文文本
            en: 英文文本

        Returns:
            对应语言的文本
        """
        return zh if self.language == "zh" else en


def create_display(language: str = "zh", show_details: bool = True) -> ResultDisplay:
    """创建展示器实例

    Args:
        language: 语言设置
        show_details: 是否展开嵌套的检查记录

    Returns:
        ResultDisplay 实例
    """
    return ResultDisplay(language, show_details)
