from __future__ import annotations

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from charp_sing.poly import (
    DivisibilityError,
    RingDescriptor,
    RingMismatchError,
    canonical_lift,
    change_ring,
    exact_divide_by_p,
    format_polynomial,
    frobenius_pth_power,
    partial_derivative,
    poly_add,
    poly_mul,
    poly_pow,
    reduce_mod_p,
    substitute,
    witt_frobenius_endo,
)

from conftest import from_sympy, make_ring, polynomials, rand_poly, to_sympy


def test_ring_validation():
    with pytest.raises(ValueError, match="4 is not prime"):
        RingDescriptor(4, 1, ("x",))
    with pytest.raises(ValueError):
        RingDescriptor(3, 3, ("x",))
    with pytest.raises(ValueError):
        RingDescriptor(3, 1, ())
    with pytest.raises(ValueError):
        RingDescriptor(3, 1, ("x", "x"))
    with pytest.raises(OverflowError):
        RingDescriptor(65537, 2, ("x",))


def test_addition_examples():
    R = make_ring(3, "xy")
    x, y = R.gens()
    assert poly_add(x, -x).is_zero()
    R2 = make_ring(2, "xy")
    a, b = R2.gens()
    assert (a + b) + (a + b) == 0
    assert (2 * x + 1) + (x + 2) == 0


def test_mul_pow_examples():
    R = make_ring(3, "xy")
    x, y = R.gens()
    assert poly_pow(x + y, 0) == 1
    assert poly_pow(x + y, 3) == x**3 + y**3
    R9 = RingDescriptor(3, 2, ("x",))
    assert poly_pow(R9.var(0).scale(2), 3) == R9.monomial((3,), 8)


def test_cross_ring_operations_fail():
    a = make_ring(3, "x").var(0)
    b = make_ring(5, "x").var(0)
    with pytest.raises(RingMismatchError):
        poly_add(a, b)
    with pytest.raises(RingMismatchError):
        poly_mul(a, b)


def test_negative_exponent_rejected():
    with pytest.raises(ValueError):
        poly_pow(make_ring(3, "x").var(0), -1)


def test_exponent_overflow_detected():
    x = make_ring(3, "x").var(0)
    with pytest.raises(OverflowError):
        poly_pow(x ** (2**20), 2**12)


@pytest.mark.parametrize(
    "p, build, expected",
    [
        (3, lambda x, y, z: x + y, lambda x, y, z: x**3 + y**3),
        (3, lambda x, y, z: 2 * x, lambda x, y, z: 2 * x**3),
        (2, lambda x, y, z: x * y + z, lambda x, y, z: x**2 * y**2 + z**2),
    ],
)
def test_frobenius_examples(p, build, expected):
    R = make_ring(p, "xyz")
    g = R.gens()
    assert frobenius_pth_power(build(*g), check=True) == expected(*g)


def test_frobenius_needs_prime_field():
    with pytest.raises(ValueError):
        frobenius_pth_power(RingDescriptor(3, 2, ("x",)).var(0))


def test_witt_frobenius_examples():
    R = RingDescriptor(3, 2, ("x", "y"))
    x, y = R.gens()
    assert witt_frobenius_endo(x) == x**3
    assert witt_frobenius_endo(x.scale(2)) == (x**3).scale(2)
    assert witt_frobenius_endo(x + y.scale(3)) == x**3 + (y**3).scale(3)
    with pytest.raises(ValueError):
        witt_frobenius_endo(make_ring(3, "x").var(0))


def test_exact_division_examples():
    R = RingDescriptor(3, 2, ("x", "y"))
    x, y = R.gens()
    q = exact_divide_by_p(x.scale(3) + y.scale(6))
    F3 = make_ring(3, "xy")
    assert q == F3.var(0) + F3.var(1).scale(2)
    with pytest.raises(DivisibilityError):
        exact_divide_by_p(x)


def test_partial_derivative_examples():
    R = make_ring(5, "xyz")
    x, y, z = R.gens()
    assert partial_derivative(x**2 + y**3 + z**4, 0) == 2 * x
    assert partial_derivative(x**5, "x").is_zero()
    with pytest.raises(IndexError):
        partial_derivative(x, 3)


def test_substitute_specialises_f10_to_f6():
    R = make_ring(3, 10)
    X = R.gens()
    f10 = sum((X[2 * i] * X[2 * i + 1] for i in range(5)), R.zero())
    f6 = sum((X[2 * i] * X[2 * i + 1] for i in range(3)), R.zero())
    assert substitute(f10, {i: 0 for i in range(6, 10)}) == f6


def test_substitute_is_simultaneous():
    R = make_ring(7, "xy")
    x, y = R.gens()
    assert substitute(x**2 * y, {"x": y, "y": x}) == y**2 * x


def test_change_ring_by_names():
    small = make_ring(5, "xy")
    big = small.extend("t")
    x, y = small.gens()
    assert change_ring(x * y + 1, big) == big.var("x") * big.var("y") + 1
    with pytest.raises(ValueError):
        change_ring(big.var("t"), small)


def test_formatting_round_trip_shape():
    R = make_ring(5, "xy")
    x, y = R.gens()
    assert format_polynomial(2 * x**2 * y - 3) == "2x^2*y + 2"
    assert str(R.zero()) == "0"


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_frobenius_matches_power(p, data):
    R = make_ring(p, "xyz")
    f = data.draw(polynomials(R, 4, 3))
    assert frobenius_pth_power(f) == poly_pow(f, p)


@pytest.mark.parametrize("p", [2, 3, 5])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_lift_sections(p, data):
    R = make_ring(p, "xy")
    f = data.draw(polynomials(R))
    lifted = canonical_lift(f)
    assert reduce_mod_p(lifted) == f
    assert exact_divide_by_p(lifted.scale(p)) == f
    # witt Frobenius and p-th power agree modulo p
    diff = witt_frobenius_endo(lifted) - poly_pow(lifted, p)
    assert all(c % p == 0 for c in diff.terms.values())


@pytest.mark.parametrize("p, k", [(3, 1), (5, 1), (3, 2), (2, 2)])
def test_arithmetic_against_sympy(p, k, rng):
    R = RingDescriptor(p, k, ("x", "y", "z"))
    syms = sympy.symbols("x y z")
    mod = R.modulus
    for _ in range(50):
        a, b = rand_poly(rng, R), rand_poly(rng, R)
        prod = sympy.expand(to_sympy(a, syms) * to_sympy(b, syms))
        assert a * b == from_sympy(prod, syms, R)
        e = rng.randint(0, 4)
        pw = sympy.expand(to_sympy(a, syms) ** e)
        assert poly_pow(a, e) == from_sympy(pw, syms, R)
        assert all(0 < c < mod for c in (a * b).terms.values())


def test_canonical_form_never_stores_zero(rng):
    R = make_ring(3, "xy")
    for _ in range(100):
        a, b = rand_poly(rng, R), rand_poly(rng, R)
        for r in (a + b, a - b, a * b, -a, a.scale(3)):
            assert 0 not in r.terms.values()


def test_hash_and_equality():
    R = make_ring(3, "xy")
    x, y = R.gens()
    assert hash(x + y) == hash(y + x)
    assert len({x + y, y + x, x}) == 2
    assert (x - x) == 0
