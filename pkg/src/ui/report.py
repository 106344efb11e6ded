# -*- coding: utf-8 -*-
"""报告的组装与序列化（JSON / Markdown）

同一实例与种子下输出逐字节一致：键排序，超过 2^53 的整数写成十进制字符串。
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

from ..lattice import INFINITE

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
SAFE_INTEGER = 2 ** 53


def normalize(value: Any) -> Any:
    """把报告内容化为可稳定序列化的结构"""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value) if abs(value) >= SAFE_INTEGER else value
    if value is INFINITE:
        return str(value)
    if isinstance(value, dict):
        return {str(k): normalize(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return [normalize(v) for v in sorted(value)]
    if isinstance(value, (list, tuple)):
        return [normalize(v) for v in value]
    if hasattr(value, "to_dict"):
        return normalize(value.to_dict())
    return str(value)


def build_report(command: str, instance: Optional[str], sections: Dict[str, Any]) -> Dict[str, Any]:
    report = {"schema": SCHEMA_VERSION, "command": command, "instance": instance}
    report.update(sections)
    return normalize(report)


def to_json(report: Dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _cell(value: Any) -> str:
    text = json.dumps(value, sort_keys=True, ensure_ascii=False) if not isinstance(value, str) else value
    return text.replace("|", "\\|")


def _section(title: str, body: Any, depth: int) -> List[str]:
    heading = "#" * min(depth, 6)
    lines = [f"{heading} {title}", ""]
    if isinstance(body, dict):
        scalars = {k: v for k, v in body.items() if not isinstance(v, (dict, list))}
        nested = {k: v for k, v in body.items() if isinstance(v, (dict, list))}
        if scalars:
            lines += ["| key | value |", "| --- | --- |"]
            lines += [f"| {k} | {_cell(v)} |" for k, v in sorted(scalars.items())]
            lines.append("")
        for key in sorted(nested):
            value = nested[key]
            if isinstance(value, dict) and depth < 3:
                lines += _section(key, value, depth + 1)
            else:
                lines += [f"**{key}**", "", "```json", json.dumps(value, sort_keys=True, indent=2, ensure_ascii=False), "```", ""]
    else:
        lines += ["```json", json.dumps(body, sort_keys=True, indent=2, ensure_ascii=False), "```", ""]
    return lines


def to_markdown(report: Dict[str, Any]) -> str:
    """每个顶层段落一个标题，标量用键值表，嵌套结构用 JSON 代码块"""
    lines = [f"# {report.get('command', 'report')}: {report.get('instance') or ''}".rstrip(), ""]
    header = {k: report[k] for k in ("schema", "command", "instance") if k in report}
    lines += ["| key | value |", "| --- | --- |"]
    lines += [f"| {k} | {_cell(v)} |" for k, v in sorted(header.items())]
    lines.append("")
    for key in sorted(k for k in report if k not in header):
        lines += _section(key, report[key], 2)
    return "\n".join(lines).rstrip() + "\n"


def render(report: Dict[str, Any], output_format: str) -> str:
    if output_format == "markdown":
        return to_markdown(report)
    return to_json(report)


def write_report(text: str, out: Optional[str]) -> None:
    """写入 --out 路径；未给出时由调用方打印到 stdout"""
    if out is None:
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info("报告已写入 %s", path)
