from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from charp_sing.fsing import (
    NotContainedError,
    fedder_f_pure,
    frobenius_colon,
    glassbrenner_sfr,
)
from charp_sing.groebner import (
    IdealPresentation,
    bracket_power,
    buchberger,
    colon_ideal,
    ideal_member,
)
from charp_sing.poly import poly_pow
from charp_sing.witt import NonNormalizableWitnessError, NotAWitnessError, splitting_from_fedder

from conftest import make_ring, rand_poly


def monomial_oracle_split(f):
    """Principal-ideal oracle: f^(p-1) has a monomial with every exponent < p."""
    p = f.ring.p
    return any(all(e < p for e in m) for m in poly_pow(f, p - 1).terms)


def test_triple_line_not_f_pure():
    R = make_ring(3, "xy")
    x, y = R.gens()
    v = fedder_f_pure(IdealPresentation.of(x * y * (x + y)))
    assert not v.split and v.method == "principal"
    assert v.replay()


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_node_is_f_pure(p):
    R = make_ring(p, "xy")
    x, y = R.gens()
    v = fedder_f_pure(IdealPresentation.of(x * y))
    assert v.split and v.witness == x ** (p - 1) * y ** (p - 1)
    assert v.replay()
    assert v.to_dict()["verdict"] == "f-pure"


def test_zero_ideal_split():
    R = make_ring(5, "xyz")
    v = fedder_f_pure(IdealPresentation(R))
    assert v.split and v.witness == R.one() and v.replay()


def test_requires_containment():
    R = make_ring(3, "xy")
    x, y = R.gens()
    with pytest.raises(NotContainedError):
        fedder_f_pure(IdealPresentation.of(x + 1))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), p=st.sampled_from([2, 3, 5]))
def test_principal_verdict_matches_monomial_oracle(seed, p):
    rng = random.Random(seed)
    R = make_ring(p, "xyz")
    f = rand_poly(rng, R, 3, 3)
    f = f - R.const(f.constant_term())
    if f.is_zero():
        return
    v = fedder_f_pure(IdealPresentation.of(f))
    assert v.split == monomial_oracle_split(f)
    assert v.replay()


@pytest.mark.parametrize("p", [2, 3])
def test_principal_shortcut_matches_general_colon(p, rng):
    R = make_ring(p, "xy")
    for _ in range(5):
        f = rand_poly(rng, R, 3, 2)
        if f.is_zero():
            continue
        I = IdealPresentation.of(f)
        short = buchberger(frobenius_colon(I, 1)).basis
        general = buchberger(colon_ideal(bracket_power(I, 1), I)).basis
        assert set(short) == set(general)


def test_non_principal_colon_path():
    R = make_ring(3, "xyz")
    x, y, z = R.gens()
    # coordinate axes in 3-space: Stanley-Reisner, hence F-pure
    I = IdealPresentation.of(x * y, y * z, x * z)
    v = fedder_f_pure(I)
    assert v.split and v.method == "colon" and v.replay()
    splitting_from_fedder(v.witness, I, samples=20)


def test_not_split_means_no_splitting():
    R = make_ring(3, "xy")
    x, y = R.gens()
    I = IdealPresentation.of(x * y * (x + y))
    v = fedder_f_pure(I)
    for u in v.colon_generators:
        with pytest.raises((NotAWitnessError, NonNormalizableWitnessError)):
            splitting_from_fedder(u, I)


# -- strong F-regularity ---------------------------------------------------------


@pytest.mark.parametrize("s", [0, 1, 2])
def test_fermat_cubic_not_detected(s):
    R = make_ring(7, 3)
    X = R.gens()
    I = IdealPresentation.of(sum((v**3 for v in X), R.zero()))
    v = glassbrenner_sfr(I, X[s], e_max=2)
    assert v.kind == "not-detected" and v.e == 2
    assert not v.regular and not v.replay()
    # the defining reason: s f^(q-1) lies in m^[q]
    f = I.generators[0]
    for e in (1, 2):
        q = 7**e
        assert ideal_member(X[s] * poly_pow(f, q - 1), bracket_power(IdealPresentation.maximal(R), e), certificate=False)[0]


def test_a1_regular():
    R = make_ring(3, "xyz")
    x, y, z = R.gens()
    v = glassbrenner_sfr(IdealPresentation.of(x * y - z**2), x, e_max=2)
    assert v.regular and v.e <= 2 and v.replay()
    assert v.assumptions


def test_polynomial_ring_regular():
    R = make_ring(5, "xy")
    v = glassbrenner_sfr(IdealPresentation(R), R.one())
    assert v.regular and v.e == 1 and v.replay()


def test_inapplicable_cases():
    R = make_ring(3, "xy")
    x, y = R.gens()
    assert glassbrenner_sfr(IdealPresentation.of(x + 1), x).kind == "inapplicable"
    assert glassbrenner_sfr(IdealPresentation.of(x), x).kind == "inapplicable"
    with pytest.raises(ValueError):
        glassbrenner_sfr(IdealPresentation.of(x * y), x, e_max=0)


def test_capacity_guard():
    R = make_ring(7, 3)
    X = R.gens()
    I = IdealPresentation.of(sum((v**3 for v in X), R.zero()))
    with pytest.raises(OverflowError):
        glassbrenner_sfr(I, X[0], e_max=40)


def test_triple_line_not_detected():
    R = make_ring(3, "xy")
    x, y = R.gens()
    v = glassbrenner_sfr(IdealPresentation.of(x * y * (x + y)), x, e_max=2)
    assert v.kind == "not-detected"
