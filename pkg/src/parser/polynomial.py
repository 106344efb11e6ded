# -*- coding: utf-8 -*-
"""σ 多项式（以 s 书写）的解析"""

import logging
import re
from tokenize import TokenError
from typing import List

from sympy import Poly, Symbol
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.polyerrors import PolynomialError

from ..errors import ErrorKind, InstanceFileError
from ..group_ring import CyclicGroupRing, GroupRingElement

logger = logging.getLogger(__name__)

S = Symbol("s")


class PolynomialParser:
    """把 "2 + s - 2*s^3" 这样的字符串解析为群环元素

    指数按 p^k 取模，即 s^{p^k} = 1。

    使用方式：
        ```python
        parser = PolynomialParser(CyclicGroupRing(3, 2))
        kappa = parser.parse("2 + s")
        print(kappa.to_list())  # [2, 1, 0, 0, 0, 0, 0, 0, 0]
        ```
    """

    # 只允许整数、s、加减乘、乘方与括号
    ALLOWED = re.compile(r"^[\s0-9s+\-*^()]+$")

    TRANSFORMATIONS = standard_transformations + (convert_xor,)

    def __init__(self, ring: CyclicGroupRing):
        self.ring = ring

    def parse(self, text: str) -> GroupRingElement:
        """
        Args:
            text: 多项式字符串

        Returns:
            对应的群环元素

        Raises:
            InstanceFileError: 字符串不是整系数的 s 多项式
        """
        if not text or not text.strip():
            raise InstanceFileError("多项式为空", anchor="polynomial")
        if not self.ALLOWED.match(text):
            raise InstanceFileError(f"多项式包含非法字符: {text!r}", anchor="polynomial")
        try:
            expr = parse_expr(text, local_dict={"s": S}, transformations=self.TRANSFORMATIONS)
            poly = Poly(expr, S)
        except (SyntaxError, TokenError, TypeError, ValueError, PolynomialError) as e:
            raise InstanceFileError(f"无法解析多项式 {text!r}: {e}", anchor="polynomial") from e
        terms = {}
        for (e,), c in poly.terms():
            if not c.is_integer:
                raise InstanceFileError(f"系数必须为整数: {c}", anchor="polynomial")
            terms[int(e)] = terms.get(int(e), 0) + int(c)
        element = self.ring.from_terms(terms)
        logger.debug("parse %r -> %s", text, element)
        return element


def parse_polynomial(text: str, ring: CyclicGroupRing) -> GroupRingElement:
    return PolynomialParser(ring).parse(text)


def parse_exponent_vector(text: str) -> List[int]:
    """解析 "0,1,2" 形式的指数向量"""
    pieces = [piece.strip() for piece in text.split(",") if piece.strip()]
    try:
        return [int(piece) for piece in pieces]
    except ValueError as e:
        raise InstanceFileError(
            f"无法解析指数向量: {text!r}", anchor="exponent_vector", kind=ErrorKind.PARSE_ERROR
        ) from e
