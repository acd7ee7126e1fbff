from __future__ import annotations

import numpy as np
import pytest

from lieheat import build_algebra, parse_group_spec, root_system

CATALOG = ("torus:1", "torus:2", "su2", "so3", "su3")
NONABELIAN = ("su2", "so3", "su3")

# acceptance criteria append (number, passed, detail) here
ACCEPTANCE_LINES: list = []


@pytest.fixture(params=CATALOG)
def group(request):
    return request.param


@pytest.fixture(params=NONABELIAN)
def nonabelian(request):
    return request.param


def alg_and_rs(label: str, scale: float = 1.0):
    alg = build_algebra(parse_group_spec(label, scale))
    return alg, root_system(alg)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for num, ok, detail in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")
