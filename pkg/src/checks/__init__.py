# -*- coding: utf-8 -*-
from .selftest import CheckRecord, SuiteResult, SelfTestReport, run_selftest

__all__ = ["CheckRecord", "SuiteResult", "SelfTestReport", "run_selftest"]
