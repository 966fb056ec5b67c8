"""Shared fixtures: cached algebras and real forms, sympy bridges for oracles."""

from __future__ import annotations

from functools import lru_cache

import pytest
import sympy

from liegcs.liealg import VoganDiagram, build_real_form, build_weyl_algebra
from liegcs.scalars import Scalar

# (type, theta, painted) for the forms used across the suite
FORMS = {
    "su2": ("A1", None, ()),
    "sl2R": ("A1", None, (0,)),
    "su3": ("A2", None, ()),
    "su12": ("A2", None, (0,)),
    "sl3R": ("A2", (1, 0), ()),
    "sl2C": ("A1+A1", (1, 0), ()),
    "so4": ("A1+A1", None, ()),
    "so5": ("B2", None, ()),
    "g2": ("G2", None, (1,)),
    "su4p": ("A3", None, (1,)),
}


@lru_cache(maxsize=None)
def weyl(cartan_type: str):
    return build_weyl_algebra(cartan_type)


@lru_cache(maxsize=None)
def form(name: str):
    t, theta, painted = FORMS[name]
    return build_real_form(weyl(t), VoganDiagram.make(t, theta=theta, painted=painted))


def to_sympy(x: Scalar):
    """Independent evaluation of a Scalar as a sympy number."""
    out = sympy.Integer(0)
    for (e, s), v in x.terms():
        q = sympy.Rational(int(v.numerator), int(v.denominator))
        out += q * (sympy.I if e else 1) * sympy.sqrt(s)
    return out


def sym_matrix(M) -> sympy.Matrix:
    return sympy.Matrix([[to_sympy(x) for x in row] for row in M])


@pytest.fixture
def su2():
    return form("su2")


@pytest.fixture
def sl2R():
    return form("sl2R")


@pytest.fixture
def su3():
    return form("su3")


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 13):
        ok, detail = mod.RESULTS.get(n, (False, "not run"))
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
