"""Catalog of the concrete singularities and algebras used as test cases.

Each entry builds its defining ideal at a given prime and records the
verdicts the engines are expected to reproduce, together with a short
statement of the claim behind each expectation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .groebner import IdealPresentation
from .poly import Polynomial, RingDescriptor

FAMILY_NAMES = ("A", "D", "E6", "E7", "E8", "ODP", "TruncQuadric", "FermatCubic", "TripleLine", "ToricMonomial")


class FamilyParameterError(ValueError):
    pass


@dataclass(frozen=True)
class Expectation:
    check: str  # f-liftable | f-pure | w2-quadric | pd | sfr
    verdict: str
    claim: str


@dataclass(frozen=True)
class FamilySpec:
    name: str
    p: int
    params: tuple = ()
    Q: Optional[Polynomial] = None

    def label(self) -> str:
        if not self.params:
            return self.name
        inner = ";".join(",".join(map(str, x)) if isinstance(x, tuple) else str(x) for x in self.params)
        return f"{self.name}({inner})"


@dataclass
class FamilyInstance:
    spec: FamilySpec
    ring: RingDescriptor
    ideal: IdealPresentation
    expected: list = field(default_factory=list)
    metadata: list = field(default_factory=list)

    @property
    def f(self) -> Polynomial:
        return self.ideal.generators[0]

    def to_dict(self) -> dict:
        return {
            "family": self.spec.label(),
            "p": self.spec.p,
            "ring": list(self.ring.names),
            "generators": [str(g) for g in self.ideal],
            "expected": [{"check": e.check, "verdict": e.verdict, "claim": e.claim} for e in self.expected],
            "metadata": list(self.metadata),
        }


ADE_CLAIM = "models of canonical surface singularities are Frobenius liftable for p >= 7"
ODP_CLAIM = "x_1^2 + ... + x_n^2 + Q has no Frobenius-compatible W_2 lift for n >= 5, p >= 3"
QUADRIC_CLAIM = "the truncated quadric algebra A_N is not W_2-liftable for N >= 5"
PD_CLAIM = "the maximal ideal of A_N carries no PD-structure for N >= 5"
TRIPLE_CLAIM = "the triple line x_1 x_2 (x_1 + x_2) is Frobenius liftable but not F-pure"
FERMAT_CLAIM = "the cone over an ordinary elliptic curve is Frobenius liftable but not strongly F-regular"
TORIC_CLAIM = "affine toric varieties are Frobenius liftable"


def _ring(p: int, names) -> RingDescriptor:
    return RingDescriptor(p, 1, tuple(names))


def _xs(n: int) -> list:
    return [f"x{i}" for i in range(1, n + 1)]


def _need_ade_prime(spec: FamilySpec):
    if spec.p < 7:
        raise FamilyParameterError("the ADE table assumes p >= 7")


def instantiate(spec: FamilySpec) -> FamilyInstance:
    name, p, params = spec.name, spec.p, spec.params
    if name in ("A", "D", "E6", "E7", "E8"):
        _need_ade_prime(spec)
        R = _ring(p, "xyz")
        x, y, z = R.gens()
        meta = []
        if name == "A":
            (n,) = _int_params(spec, 1)
            if n < 1:
                raise FamilyParameterError("A(n) needs n >= 1")
            f = x ** (n + 1) + y**2 + z**2
            if (n + 1) % p == 0:
                meta.append("p divides n + 1: the quotient-singularity description is not tame")
        elif name == "D":
            (n,) = _int_params(spec, 1)
            if n < 1:
                raise FamilyParameterError("D(n) needs n >= 1")
            f = x**2 + y**2 * z + z ** (n + 1)
            meta.append(f"D(n) is the D_{n + 2} model")
        elif name == "E6":
            _int_params(spec, 0)
            f = x**2 + y**3 + z**4
        elif name == "E7":
            _int_params(spec, 0)
            f = x**2 + y**3 + y * z**3
        else:
            _int_params(spec, 0)
            f = x**2 + y**3 + z**5
        exp = [Expectation("f-liftable", "liftable", ADE_CLAIM)]
        return FamilyInstance(spec, R, IdealPresentation.of(f), exp, meta)

    if name == "ODP":
        (n,) = _int_params(spec, 1)
        if n < 5 or p < 3:
            raise FamilyParameterError("ODP(n) needs n >= 5 and p >= 3")
        R = _ring(p, _xs(n))
        f = sum((v**2 for v in R.gens()), R.zero())
        if spec.Q is not None:
            Q = spec.Q
            if Q.ring != R:
                raise FamilyParameterError(f"Q must live in {R}")
            if any(sum(m) < 3 for m in Q.terms):
                raise FamilyParameterError("Q must have order >= 3")
            f = f + Q
        exp = [Expectation("f-liftable", "not-liftable", ODP_CLAIM)]
        return FamilyInstance(spec, R, IdealPresentation.of(f), exp)

    if name == "TruncQuadric":
        (N,) = _int_params(spec, 1)
        if N < 5:
            raise FamilyParameterError("TruncQuadric(N) needs N >= 5")
        R = _ring(p, _xs(N))
        X = R.gens()
        f = sum((X[2 * i] * X[2 * i + 1] for i in range(N // 2)), R.zero())
        if N % 2:
            f = f + X[-1] ** 2
        gens = (f,) + tuple(v**p for v in X)
        exp = [
            Expectation("w2-quadric", "not-w2-liftable", QUADRIC_CLAIM),
            Expectation("pd", "no-pd-structure", PD_CLAIM),
        ]
        meta = ["not a regular sequence: use the quadric obstruction, not the liftability engines"]
        return FamilyInstance(spec, R, IdealPresentation(R, gens), exp, meta)

    if name == "FermatCubic":
        _int_params(spec, 0)
        R = _ring(p, _xs(3))
        f = sum((v**3 for v in R.gens()), R.zero())
        exp = [Expectation("sfr", "not-detected", FERMAT_CLAIM)]
        meta = []
        if p % 3 == 1:
            exp.insert(0, Expectation("f-liftable", "liftable", FERMAT_CLAIM))
        else:
            meta.append("p is not 1 mod 3: the elliptic curve is not ordinary, no liftability claim")
        return FamilyInstance(spec, R, IdealPresentation.of(f), exp, meta)

    if name == "TripleLine":
        _int_params(spec, 0)
        R = _ring(p, _xs(2))
        a, b = R.gens()
        f = a * b * (a + b)
        exp = [
            Expectation("f-liftable", "liftable", TRIPLE_CLAIM),
            Expectation("f-pure", "not-f-pure", TRIPLE_CLAIM),
        ]
        return FamilyInstance(spec, R, IdealPresentation.of(f), exp)

    if name == "ToricMonomial":
        if not params or len(params) > 2:
            raise FamilyParameterError("ToricMonomial takes one exponent vector (monomial) or two (binomial)")
        vecs = [tuple(v) if isinstance(v, tuple) else (v,) for v in params]
        n = len(vecs[0])
        if any(len(v) != n for v in vecs) or any(e < 0 for v in vecs for e in v) or not any(vecs[0]):
            raise FamilyParameterError("exponent vectors must be non-negative, non-constant and of equal length")
        R = _ring(p, _xs(n))
        f = R.monomial(vecs[0])
        if len(vecs) == 2:
            if vecs[0] == vecs[1]:
                raise FamilyParameterError("binomial with equal monomials is zero")
            f = f - R.monomial(vecs[1])
        exp = [Expectation("f-liftable", "liftable", TORIC_CLAIM)]
        return FamilyInstance(spec, R, IdealPresentation.of(f), exp)

    raise FamilyParameterError(f"unknown family {name!r}; known: {', '.join(FAMILY_NAMES)}")


def _int_params(spec: FamilySpec, count: int) -> tuple:
    if len(spec.params) != count or not all(isinstance(x, int) for x in spec.params):
        raise FamilyParameterError(f"{spec.name} takes {count} integer parameter(s)")
    return spec.params


_NAME_RE = re.compile(r"^\s*([A-Za-z][A-Za-z0-9]*)\s*(?:\((.*)\))?\s*$")


def parse_family(text: str, p: int, Q: Optional[Polynomial] = None) -> FamilySpec:
    """Parse catalog identifiers such as ``A(4)``, ``E8``, ``ToricMonomial(1,1,0;0,0,2)``."""
    m = _NAME_RE.match(text)
    if not m:
        raise FamilyParameterError(f"cannot parse family name {text!r}")
    name, inner = m.group(1), m.group(2)
    if name not in FAMILY_NAMES:
        raise FamilyParameterError(f"unknown family {name!r}; known: {', '.join(FAMILY_NAMES)}")
    params: tuple = ()
    if inner is not None and inner.strip():
        try:
            if name == "ToricMonomial":
                params = tuple(tuple(int(x) for x in part.split(",")) for part in inner.split(";"))
            else:
                params = tuple(int(x) for x in inner.split(","))
        except ValueError:
            raise FamilyParameterError(f"bad parameters in {text!r}") from None
    return FamilySpec(name, p, params, Q)


def table_one(p: int = 7) -> list:
    """The ADE instances covered by the reproduction suite."""
    specs = [FamilySpec("A", p, (n,)) for n in range(2, 6)]
    specs += [FamilySpec("D", p, (n,)) for n in range(1, 4)]
    specs += [FamilySpec(name, p) for name in ("E6", "E7", "E8")]
    return specs
