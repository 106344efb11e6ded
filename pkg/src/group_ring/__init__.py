# -*- coding: utf-8 -*-
from .ring import (
    CyclicGroupRing,
    GroupRingElement,
    SpecialKind,
    gr_mul,
    special_element,
    norm_element,
    delta_element,
    cyclic_delta,
    element_order,
    one_minus_sigma,
    product,
    exact_quotient,
    format_terms,
)
from .quotient import QuotientRing, QuotientRingElement, quotient_reduce, is_nonzerodivisor

__all__ = [
    "CyclicGroupRing",
    "GroupRingElement",
    "SpecialKind",
    "gr_mul",
    "special_element",
    "norm_element",
    "delta_element",
    "cyclic_delta",
    "element_order",
    "one_minus_sigma",
    "product",
    "exact_quotient",
    "format_terms",
    "QuotientRing",
    "QuotientRingElement",
    "quotient_reduce",
    "is_nonzerodivisor",
]
