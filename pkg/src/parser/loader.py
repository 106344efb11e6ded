# -*- coding: utf-8 -*-
"""实例文件读取（JSON，或扩展名为 .yaml/.yml 时按 YAML 读取）"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Union

import yaml

from ..errors import ErrorKind, InstanceFileError
from ..frame import RamificationInstance

logger = logging.getLogger(__name__)


def read_instance_data(path: Union[str, Path]) -> Dict[str, Any]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InstanceFileError(
            f"无法读取实例文件: {path}", anchor="instance_path", kind=ErrorKind.IO_ERROR
        ) from e
    try:
        if path.suffix in (".yaml", ".yml"):
            data = yaml.safe_load(text)
        else:
            data = json.loads(text)
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        raise InstanceFileError(f"实例文件格式错误: {e}", anchor="instance_path") from e
    if not isinstance(data, dict):
        raise InstanceFileError("实例文件顶层必须是对象", anchor="instance_path")
    return data


def load_instance(path: Union[str, Path]) -> RamificationInstance:
    """读取并构造实例（尚未校验结构性假设）

    Raises:
        InstanceFileError: 文件缺失（IO_ERROR）或字段缺失/非整数（PARSE_ERROR）
    """
    data = read_instance_data(path)
    try:
        instance = RamificationInstance.from_dict(data, name=Path(path).stem)
    except KeyError as e:
        raise InstanceFileError(f"实例文件缺少字段: {e}", anchor="instance_schema") from e
    except (TypeError, ValueError) as e:
        raise InstanceFileError(f"实例文件字段无效: {e}", anchor="instance_schema") from e
    logger.info("已读取实例 %s: %r", instance.name, instance)
    return instance
