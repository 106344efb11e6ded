# -*- coding: utf-8 -*-
from .polynomial import PolynomialParser, parse_polynomial, parse_exponent_vector
from .loader import load_instance, read_instance_data

__all__ = [
    "PolynomialParser",
    "parse_polynomial",
    "parse_exponent_vector",
    "load_instance",
    "read_instance_data",
]
