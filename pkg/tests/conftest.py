from __future__ import annotations

import random

import pytest
import sympy
from hypothesis import strategies as st

from charp_sing.poly import Polynomial, RingDescriptor


def make_ring(p: int, names) -> RingDescriptor:
    if isinstance(names, int):
        names = [f"x{i}" for i in range(1, names + 1)]
    return RingDescriptor(p, 1, tuple(names))


def rand_poly(rng: random.Random, R: RingDescriptor, max_terms=4, max_deg=3) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        d = rng.randint(0, max_deg)
        e = [0] * R.nvars
        for _ in range(d):
            e[rng.randrange(R.nvars)] += 1
        terms[tuple(e)] = rng.randrange(R.modulus)
    return Polynomial(R, terms)


def to_sympy(f: Polynomial, syms):
    expr = sympy.Integer(0)
    for m, c in f.terms.items():
        term = sympy.Integer(c)
        for s, e in zip(syms, m):
            term *= s**e
        expr += term
    return expr


def from_sympy(expr, syms, R: RingDescriptor) -> Polynomial:
    P = sympy.Poly(expr, *syms)
    return Polynomial(R, {m: int(c) % R.modulus for m, c in P.terms()})


@st.composite
def polynomials(draw, R: RingDescriptor, max_terms=5, max_exp=3):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        m = tuple(draw(st.integers(0, max_exp)) for _ in range(R.nvars))
        terms[m] = draw(st.integers(0, R.modulus - 1))
    return Polynomial(R, terms)


@pytest.fixture
def rng():
    return random.Random(20261015)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for r in sorted(results, key=lambda r: r.number):
        terminalreporter.write_line(r.line())
