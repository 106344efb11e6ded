# -*- coding: utf-8 -*-
"""共享夹具：实例 A、B 的框架、模与单位格只构造一次"""

from pathlib import Path

import pytest

from src.annihilator import build_levels, unit_lattices
from src.frame import validate
from src.module import build_U
from src.parser import load_instance

INSTANCES = Path(__file__).parent.parent / "instances"


@pytest.fixture(scope="session")
def instances_dir():
    return INSTANCES


@pytest.fixture(scope="session")
def instance_A():
    return load_instance(INSTANCES / "instanceA.json")


@pytest.fixture(scope="session")
def instance_B():
    return load_instance(INSTANCES / "instanceB.json")


@pytest.fixture(scope="session")
def frame_A(instance_A):
    return validate(instance_A)


@pytest.fixture(scope="session")
def frame_B(instance_B):
    return validate(instance_B)


@pytest.fixture(scope="session")
def U_A(frame_A):
    return build_U(frame_A)


@pytest.fixture(scope="session")
def U_B(frame_B):
    return build_U(frame_B)


@pytest.fixture(scope="session")
def levels_A(frame_A, U_A):
    return build_levels(frame_A, U_A)


@pytest.fixture(scope="session")
def levels_B(frame_B, U_B):
    return build_levels(frame_B, U_B)


@pytest.fixture(scope="session")
def lattices_A(U_A, levels_A):
    return unit_lattices(U_A, levels_A)


@pytest.fixture(scope="session")
def lattices_B(U_B, levels_B):
    return unit_lattices(U_B, levels_B)
