from __future__ import annotations

import pytest

from charp_sing.families import (
    FAMILY_NAMES,
    FamilyParameterError,
    FamilySpec,
    instantiate,
    parse_family,
    table_one,
)
from charp_sing.flift import ci_f_liftable, detect_quasi_homogeneous, quadric_family_w2_obstruction
from charp_sing.fsing import fedder_f_pure

from conftest import make_ring


@pytest.mark.parametrize(
    "text, name, params",
    [
        ("A(4)", "A", (4,)),
        ("E8", "E8", ()),
        (" D(2) ", "D", (2,)),
        ("ToricMonomial(1,1,0;0,0,2)", "ToricMonomial", ((1, 1, 0), (0, 0, 2))),
        ("TruncQuadric(6)", "TruncQuadric", (6,)),
    ],
)
def test_parse_family(text, name, params):
    spec = parse_family(text, 7)
    assert (spec.name, spec.params, spec.p) == (name, params, 7)
    assert parse_family(spec.label(), 7) == spec


@pytest.mark.parametrize("text", ["Z(3)", "A(x)", "A(", "", "ToricMonomial(1,a)"])
def test_parse_family_errors(text):
    with pytest.raises(FamilyParameterError):
        parse_family(text, 7)


@pytest.mark.parametrize(
    "spec",
    [
        FamilySpec("A", 5, (2,)),
        FamilySpec("A", 7, (0,)),
        FamilySpec("E6", 7, (1,)),
        FamilySpec("ODP", 7, (4,)),
        FamilySpec("ODP", 2, (5,)),
        FamilySpec("TruncQuadric", 3, (4,)),
        FamilySpec("ToricMonomial", 3, ((0, 0),)),
        FamilySpec("ToricMonomial", 3, ((1, 2), (1, 2))),
        FamilySpec("ToricMonomial", 3, ((1, 2), (1,))),
    ],
    ids=lambda s: f"{s.label()}@{s.p}",
)
def test_parameter_guards(spec):
    with pytest.raises(FamilyParameterError):
        instantiate(spec)


def test_every_family_has_a_claim():
    samples = {
        "A": (3,), "D": (2,), "ODP": (5,), "TruncQuadric": (5,), "ToricMonomial": ((1, 1),),
    }
    for name in FAMILY_NAMES:
        inst = instantiate(FamilySpec(name, 7, samples.get(name, ())))
        assert inst.expected and all(e.claim for e in inst.expected)
        d = inst.to_dict()
        assert d["family"] == inst.spec.label() and d["generators"]


def test_ade_models_are_quasi_homogeneous():
    for spec in table_one(7):
        f = instantiate(spec).f
        assert detect_quasi_homogeneous(f) is not None


def test_a_family_metadata():
    inst = instantiate(FamilySpec("A", 7, (6,)))
    assert any("p divides" in m for m in inst.metadata)


def test_odp_with_higher_order_term():
    R = make_ring(3, [f"x{i}" for i in range(1, 6)])
    X = R.gens()
    inst = instantiate(FamilySpec("ODP", 3, (5,), X[0] ** 3))
    assert inst.f == sum((v**2 for v in X), R.zero()) + X[0] ** 3
    with pytest.raises(FamilyParameterError):
        instantiate(FamilySpec("ODP", 3, (5,), X[0] ** 2))


@pytest.mark.parametrize("N", [5, 6, 7])
def test_truncated_quadric_obstruction(N):
    inst = instantiate(FamilySpec("TruncQuadric", 3, (N,)))
    v = quadric_family_w2_obstruction(inst.f, inst.ideal.generators[1:])
    assert v.status == "not-w2-liftable" and v.replay()


def test_fermat_cubic_expectations_depend_on_p():
    assert [e.check for e in instantiate(FamilySpec("FermatCubic", 7)).expected] == ["f-liftable", "sfr"]
    inst = instantiate(FamilySpec("FermatCubic", 5))
    assert [e.check for e in inst.expected] == ["sfr"]
    assert inst.metadata


def test_triple_line_verdicts():
    inst = instantiate(FamilySpec("TripleLine", 3))
    assert ci_f_liftable(inst.ideal.generators).liftable
    assert not fedder_f_pure(inst.ideal).split


@pytest.mark.parametrize("params", [((1, 1),), ((2, 0, 1), (0, 3, 0)), ((1, 1, 0), (0, 0, 2))])
def test_toric_entries_lift(params):
    inst = instantiate(FamilySpec("ToricMonomial", 3, params))
    v = ci_f_liftable(inst.ideal.generators)
    assert v.liftable and v.replay()
