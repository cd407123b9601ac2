"""Fedder's F-purity test and Glassbrenner's strong F-regularity test.

Both criteria compare a colon ideal (I^[q] : I) with the Frobenius power
m^[q] of a maximal ideal.  For a principal ideal (f) with f != 0 the colon
is (f^(q-1)), which avoids a Groebner colon computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .groebner import (
    IdealPresentation,
    bracket_power,
    colon_ideal,
    ideal_member,
)
from .poly import MAX_EXPONENT, Polynomial, RingMismatchError, poly_pow


class NotContainedError(ValueError):
    """I is not contained in the maximal ideal."""


def _maximal(ideal: IdealPresentation, m: Optional[IdealPresentation]) -> IdealPresentation:
    if m is None:
        return IdealPresentation.maximal(ideal.ring)
    if m.ring != ideal.ring:
        raise RingMismatchError("ideal and maximal ideal in different rings")
    return m


def _contained(I: IdealPresentation, m: IdealPresentation) -> bool:
    return all(ideal_member(g, m, certificate=False)[0] for g in I)


def frobenius_colon(I: IdealPresentation, e: int = 1) -> IdealPresentation:
    """(I^[p^e] : I), with the principal shortcut (f^(p^e - 1))."""
    ring = I.ring
    if I.is_zero():
        return IdealPresentation(ring, (ring.one(),))
    q = ring.p**e
    if len(I) == 1:
        (f,) = I.generators
        return IdealPresentation(ring, (poly_pow(f, q - 1),))
    return colon_ideal(bracket_power(I, e), I)


@dataclass
class FPurityVerdict:
    split: bool
    ideal: IdealPresentation
    witness: Optional[Polynomial] = None
    colon_generators: tuple = ()
    # one certificate per colon generator showing it lies in m^[p]
    evidence: tuple = ()
    method: str = "colon"

    def replay(self, m: Optional[IdealPresentation] = None) -> bool:
        """Re-check the verdict using Groebner membership only."""
        m = _maximal(self.ideal, m)
        mp = bracket_power(m, 1)
        if self.split:
            u = self.witness
            if ideal_member(u, mp, certificate=False)[0]:
                return False
            if self.ideal.is_zero():
                return True
            Ip = bracket_power(self.ideal, 1)
            return all(ideal_member(u * g, Ip, certificate=False)[0] for g in self.ideal)
        return bool(self.evidence) and all(c.member and c.replay() for c in self.evidence)

    def to_dict(self) -> dict:
        out = {"verdict": "f-pure" if self.split else "not-f-pure", "method": self.method}
        if self.witness is not None:
            out["witness"] = str(self.witness)
        out["colon_generators"] = [str(g) for g in self.colon_generators]
        return out


def fedder_f_pure(I: IdealPresentation, m: Optional[IdealPresentation] = None) -> FPurityVerdict:
    """Fedder: R/I is F-pure at m iff (I^[p] : I) is not inside m^[p]."""
    m = _maximal(I, m)
    if not _contained(I, m):
        raise NotContainedError("the ideal is not contained in the maximal ideal")
    ring = I.ring
    if I.is_zero():
        return FPurityVerdict(True, I, ring.one(), (ring.one(),), method="polynomial-ring")
    method = "principal" if len(I) == 1 else "colon"
    colon = frobenius_colon(I, 1)
    mp = bracket_power(m, 1)
    certs = []
    for w in colon:
        member, cert = ideal_member(w, mp)
        if not member:
            return FPurityVerdict(True, I, w, colon.generators, method=method)
        certs.append(cert)
    return FPurityVerdict(False, I, None, colon.generators, tuple(certs), method=method)


@dataclass
class SFRVerdict:
    kind: str  # "regular-at" | "not-detected" | "inapplicable"
    s: Optional[Polynomial]
    ideal: IdealPresentation
    e: Optional[int] = None
    witness: Optional[Polynomial] = None
    reason: str = ""
    assumptions: list = field(default_factory=list)

    @property
    def regular(self) -> bool:
        return self.kind == "regular-at"

    def replay(self, m: Optional[IdealPresentation] = None) -> bool:
        """RegularAt: s*w lies outside m^[p^e] and w is in (I^[p^e] : I)."""
        if self.kind != "regular-at":
            return False
        m = _maximal(self.ideal, m)
        if ideal_member(self.s * self.witness, bracket_power(m, self.e), certificate=False)[0]:
            return False
        if self.ideal.is_zero():
            return True
        Iq = bracket_power(self.ideal, self.e)
        return all(ideal_member(self.witness * g, Iq, certificate=False)[0] for g in self.ideal)

    def to_dict(self) -> dict:
        out = {"verdict": self.kind, "s": None if self.s is None else str(self.s)}
        if self.e is not None:
            out["e"] = self.e
        if self.witness is not None:
            out["witness"] = str(self.witness)
        if self.reason:
            out["reason"] = self.reason
        out["assumptions"] = list(self.assumptions)
        return out


def glassbrenner_sfr(
    I: IdealPresentation,
    s: Polynomial,
    e_max: int = 2,
    m: Optional[IdealPresentation] = None,
) -> SFRVerdict:
    """Search e = 1..e_max for s*(I^[p^e] : I) not inside m^[p^e].

    A hit certifies strong F-regularity at m (given that R_s is regular,
    which is not checked).  No hit is reported as "not detected".
    """
    if e_max < 1:
        raise ValueError("e_max must be >= 1")
    m = _maximal(I, m)
    ring = I.ring
    if isinstance(s, int):
        s = ring.const(s)
    assumptions = ["s avoids the minimal primes of I and R_s is regular (not verified)"]
    if not _contained(I, m):
        return SFRVerdict("inapplicable", s, I, reason="ideal not contained in the maximal ideal", assumptions=assumptions)
    if not I.is_zero() and ideal_member(s, I, certificate=False)[0]:
        return SFRVerdict("inapplicable", s, I, reason="test element is zero in R/I", assumptions=assumptions)
    p = ring.p
    top = max((g.degree() for g in I), default=0) * len(I) + max(s.degree(), 0)
    if p**e_max * max(top, 1) > MAX_EXPONENT:
        raise OverflowError(f"p^{e_max} exponents exceed machine-word capacity")
    for e in range(1, e_max + 1):
        mq = bracket_power(m, e)
        for w in frobenius_colon(I, e):
            if not ideal_member(s * w, mq, certificate=False)[0]:
                return SFRVerdict("regular-at", s, I, e=e, witness=w, assumptions=assumptions)
    return SFRVerdict("not-detected", s, I, e=e_max, assumptions=assumptions)
