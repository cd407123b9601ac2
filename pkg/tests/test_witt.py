from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from charp_sing.groebner import IdealPresentation
from charp_sing.poly import canonical_lift, poly_pow
from charp_sing.witt import (
    FlavorMismatchError,
    NonNormalizableWitnessError,
    NotAWitnessError,
    NotInvertibleError,
    QuotientAlgebra,
    classical,
    localize,
    p_element,
    psi,
    splitting_from_fedder,
    trace_extract,
    twisted,
    twisted_inv,
    verify_flatness_samples,
    verify_inverse_formula,
    verify_localization_formula,
    verify_power_formula,
    verify_prime_field_case,
    verify_quotient_hom,
    verify_twisted_ring_axioms,
    witt_neg,
    witt_one,
    witt_pow,
)

from conftest import make_ring, rand_poly


@pytest.fixture(scope="module")
def xy_split():
    R = make_ring(3, "xy")
    x, y = R.gens()
    return splitting_from_fedder(x**2 * y**2, IdealPresentation.of(x * y))


def ghost(w):
    """Injective ring map W_2(F_p[x]) -> Z/p^2[x], (a0, a1) -> lift(a0)^p + p*lift(a1)."""
    p = w.algebra.ring.p
    return poly_pow(canonical_lift(w.a0), p) + canonical_lift(w.a1).scale(p)


# -- classical ----------------------------------------------------------------


def test_classical_carry_example():
    R = make_ring(3, "xy")
    x, y = R.gens()
    A = QuotientAlgebra.polynomial_ring(R)
    s = classical(A, x) + classical(A, y)
    assert s.a0 == x + y
    assert s.a1 == -(x**2 * y + x * y**2)


def test_classical_in_quotient_drops_the_carry():
    # x^2 y + x y^2 lies in (xy)
    R = make_ring(3, "xy")
    x, y = R.gens()
    A = QuotientAlgebra(IdealPresentation.of(x * y))
    s = classical(A, x) + classical(A, y)
    assert (s.a0, s.a1) == (x + y, R.zero())


@pytest.mark.parametrize("p", [2, 3, 5])
def test_classical_units(p):
    R = make_ring(p, "xy")
    A = QuotientAlgebra.polynomial_ring(R)
    x, y = R.gens()
    w = classical(A, x + 1, y)
    assert witt_one(w) * w == w
    pp = classical(A, 0, 1)
    assert pp * pp == classical(A, 0, 0)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**6), p=st.sampled_from([2, 3, 5]))
def test_classical_matches_ghost_oracle(seed, p):
    rng = random.Random(seed)
    R = make_ring(p, "xy")
    A = QuotientAlgebra.polynomial_ring(R)
    u = classical(A, rand_poly(rng, R, 3, 2), rand_poly(rng, R, 3, 2))
    v = classical(A, rand_poly(rng, R, 3, 2), rand_poly(rng, R, 3, 2))
    assert ghost(u + v) == ghost(u) + ghost(v)
    assert ghost(u * v) == ghost(u) * ghost(v)
    assert ghost(-u) == -ghost(u)


def test_flavors_never_mix(xy_split):
    A = xy_split.algebra
    c = classical(A, 1)
    t = twisted(xy_split, 1)
    with pytest.raises(FlavorMismatchError):
        c + t
    with pytest.raises(FlavorMismatchError):
        twisted_inv(c)
    with pytest.raises(FlavorMismatchError):
        psi(t, xy_split)
    other = QuotientAlgebra(A.ideal)
    with pytest.raises(FlavorMismatchError):
        c + classical(other, 1)


# -- splittings -----------------------------------------------------------------


def test_trace_extract():
    R = make_ring(3, "xy")
    x, y = R.gens()
    assert trace_extract(x**2 * y**2) == R.one()
    assert trace_extract(x**5 * y**2 + x * y**2 + 2 * x**8 * y**5) == x + 2 * x**2 * y


def test_xy_splitting_values(xy_split):
    R = xy_split.algebra.ring
    x, y = R.gens()
    assert xy_split(1) == R.one()
    assert xy_split(x**3) == x
    assert xy_split(y**6) == y**2
    assert xy_split(x**2 * y**2) == R.zero()  # x^2 y^2 is zero in A
    assert trace_extract(xy_split.u) == R.one()


@pytest.mark.parametrize("p, n", [(2, 2), (3, 2), (5, 1), (3, 3)])
def test_standard_splitting_of_polynomial_ring(p, n, rng):
    R = make_ring(p, n)
    u = R.one()
    for v in R.gens():
        u = u * v ** (p - 1)
    phi = splitting_from_fedder(u, IdealPresentation(R), samples=50)
    for _ in range(50):
        a = tuple(rng.randint(0, 3 * p) for _ in range(n))
        expected = R.monomial(tuple(e // p for e in a)) if all(e % p == 0 for e in a) else R.zero()
        assert phi(R.monomial(a)) == expected


def test_bad_witnesses():
    R = make_ring(3, "xy")
    x, y = R.gens()
    I = IdealPresentation.of(x * y)
    with pytest.raises(NotAWitnessError):
        splitting_from_fedder(x**2, I)
    with pytest.raises(NonNormalizableWitnessError):
        splitting_from_fedder(x**3 * y**3, I)


# -- twisted ---------------------------------------------------------------------


def test_twisted_examples(xy_split, rng):
    A = xy_split.algebra
    p = p_element(xy_split)
    for _ in range(30):
        a0, a1 = A.random_element(rng), A.random_element(rng)
        w = twisted(xy_split, a0, a1)
        assert w * witt_one(w) == w
        assert p * w == twisted(xy_split, 0, a0)
        assert w + witt_neg(w) == twisted(xy_split, 0, 0)
    assert p * p == twisted(xy_split, 0, 0)


def test_power_formula_examples(xy_split):
    A = xy_split.algebra
    x, y = A.ring.gens()
    w = twisted(xy_split, x + 1, y)
    for n in range(21):
        expected = twisted(xy_split, A.pow(x + 1, n), A.mul(A.pow(x + 1, max(n - 1, 0)), y).scale(n) if n else 0)
        assert witt_pow(w, n) == expected


def test_inverse_examples():
    R = make_ring(3, "z")
    z = R.var(0)
    phi = splitting_from_fedder(z**2, IdealPresentation.of(z))
    w = twisted(phi, 2, 1)
    assert twisted_inv(w) == twisted(phi, 2, 2)
    assert twisted_inv(twisted(phi, 1, 0)) == twisted(phi, 1, 0)
    assert twisted_inv(w, inverse=R.const(2)) == twisted(phi, 2, 2)
    with pytest.raises(NotInvertibleError):
        twisted_inv(w, inverse=R.const(1))
    with pytest.raises(NotInvertibleError):
        twisted_inv(twisted(phi, 0, 1))


def test_non_unit_in_quotient(xy_split):
    x, y = xy_split.algebra.ring.gens()
    with pytest.raises(NotInvertibleError):
        twisted_inv(twisted(xy_split, x, 0))
    with pytest.raises(ValueError):
        witt_pow(classical(xy_split.algebra, 1), -1)


def test_psi_kills_kernel_of_phi(xy_split, rng):
    A = xy_split.algebra
    x, y = A.ring.gens()
    # phi(x) = 0, so (0, x) maps to zero
    assert xy_split(x) == A.zero()
    assert psi(classical(A, 0, x), xy_split) == twisted(xy_split, 0, 0)


# -- harnesses -------------------------------------------------------------------


@pytest.mark.parametrize(
    "check",
    [verify_twisted_ring_axioms, verify_quotient_hom, verify_flatness_samples, verify_power_formula, verify_inverse_formula],
)
def test_harnesses_clean(check, xy_split):
    report = check(xy_split, samples=150, seed=7)
    assert report.ok, report.violations[:3]
    assert report.to_dict()["violations"] == 0


@pytest.mark.parametrize("p", [2, 3, 5])
def test_prime_field_is_z_mod_p_squared(p):
    assert verify_prime_field_case(p).ok


def test_localization_formula():
    R = make_ring(3, "x")
    x = R.var(0)
    phi = splitting_from_fedder(x**2, IdealPresentation(R), samples=20)
    report = verify_localization_formula(phi, x, x + 1, samples=100, seed=3)
    assert report.ok, report.violations[:3]


def test_localization_on_quotient(xy_split):
    x, y = xy_split.algebra.ring.gens()
    report = verify_localization_formula(xy_split, x + y, x, samples=40, seed=1)
    assert report.ok, report.violations[:3]


def test_localization_rejects_nilpotents():
    # F-split rings are reduced, so zero is the only nilpotent available
    R = make_ring(3, "x")
    x = R.var(0)
    phi = splitting_from_fedder(x**2, IdealPresentation(R), samples=5)
    with pytest.raises(ValueError):
        localize(phi, R.zero())


def test_broken_splitting_is_detected(xy_split):
    """A harness must report violations when handed a map that is not a splitting."""

    class Identity:
        algebra = xy_split.algebra

        def apply(self, c):
            return self.algebra.reduce(c)

    assert not verify_twisted_ring_axioms(Identity(), samples=200, seed=0).ok
