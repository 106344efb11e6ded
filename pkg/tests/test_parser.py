# -*- coding: utf-8 -*-
"""多项式与实例文件解析单元测试"""

import json

import pytest

from src.errors import ErrorKind, InstanceFileError
from src.group_ring import CyclicGroupRing
from src.parser import PolynomialParser, load_instance, parse_exponent_vector, parse_polynomial


class TestPolynomialParser:
    """σ 多项式解析测试"""

    def test_parse_simple(self):
        """测试 2 + s"""
        parser = PolynomialParser(CyclicGroupRing(3, 2))
        assert parser.parse("2 + s").to_list() == [2, 1, 0, 0, 0, 0, 0, 0, 0]

    def test_parse_power(self):
        """测试 ^ 与 ** 两种乘方写法"""
        ring = CyclicGroupRing(3, 2)
        assert parse_polynomial("s^3", ring) == parse_polynomial("s**3", ring) == ring.sigma(3)

    def test_exponent_wraps(self):
        """测试 s^{p^k} = 1"""
        ring = CyclicGroupRing(3, 1)
        assert parse_polynomial("s^3 + s^4", ring) == ring.from_terms({0: 1, 1: 1})

    def test_parse_product(self):
        """测试括号展开"""
        ring = CyclicGroupRing(3, 2)
        assert str(parse_polynomial("(1 - s)*(1 + s)", ring)) == "1 - s^2"

    def test_roundtrip_format(self):
        """测试格式化后再解析不变"""
        ring = CyclicGroupRing(3, 2)
        x = parse_polynomial("2 + s - 2*s^3 - s^4", ring)
        assert parse_polynomial(str(x), ring) == x

    @pytest.mark.parametrize("text", ["", "   ", "1/2", "2.5", "x + 1", "s +", "import os"])
    def test_invalid(self, text):
        """测试非法多项式"""
        with pytest.raises(InstanceFileError):
            parse_polynomial(text, CyclicGroupRing(3, 1))


class TestExponentVector:
    """指数向量解析测试"""

    def test_parse(self):
        assert parse_exponent_vector("0, 1,2") == [0, 1, 2]

    def test_invalid(self):
        with pytest.raises(InstanceFileError):
            parse_exponent_vector("0,a")


class TestLoader:
    """实例文件读取测试"""

    def test_load_json(self, instance_A):
        """测试读取实例 A"""
        assert instance_A.name == "instanceA"
        assert instance_A.p == 3
        assert instance_A.t == [3, 3]
        assert instance_A.analytic.f_I == 35
        assert instance_A.expect["rank_U"] == 11

    def test_load_yaml(self, tmp_path):
        """测试 YAML 实例"""
        path = tmp_path / "inst.yaml"
        path.write_text("p: 3\nk: 1\nt: [3, 3]\nlambda: [[0, 1], [1, 0]]\n", encoding="utf-8")
        inst = load_instance(path)
        assert inst.name == "inst"
        assert inst.res_units == [1, 1]

    def test_big_integers_as_strings(self, tmp_path):
        """测试十进制字符串形式的大整数"""
        path = tmp_path / "big.json"
        data = {
            "p": "3", "k": 1, "t": ["3", "3"], "lambda": [[0, 1], [1, 0]],
            "analytic": {"h_L": "123456789012345678901234567890"},
        }
        path.write_text(json.dumps(data), encoding="utf-8")
        assert load_instance(path).analytic.h_L == 123456789012345678901234567890

    def test_missing_file(self, tmp_path):
        """测试文件不存在时为 IO_ERROR"""
        with pytest.raises(InstanceFileError) as exc:
            load_instance(tmp_path / "missing.json")
        assert exc.value.kind == ErrorKind.IO_ERROR

    def test_missing_field(self, tmp_path):
        """测试缺少字段时为 PARSE_ERROR"""
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"p": 3, "k": 1}), encoding="utf-8")
        with pytest.raises(InstanceFileError) as exc:
            load_instance(path)
        assert exc.value.kind == ErrorKind.PARSE_ERROR

    def test_not_integer(self, tmp_path):
        """测试非整数字段"""
        path = tmp_path / "bad.json"
        data = {"p": "three", "k": 1, "t": [3, 3], "lambda": [[0, 1], [1, 0]]}
        path.write_text(json.dumps(data), encoding="utf-8")
        with pytest.raises(InstanceFileError):
            load_instance(path)

    def test_malformed_json(self, tmp_path):
        """测试 JSON 语法错误"""
        path = tmp_path / "bad.json"
        path.write_text("{", encoding="utf-8")
        with pytest.raises(InstanceFileError):
            load_instance(path)
