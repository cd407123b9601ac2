"""Length-two Witt vectors over A = F_p[x]/I, classical and twisted.

Elements of A are stored as normal forms modulo a Groebner basis of I.
A twisted Witt ring W_2^phi(A) depends on a Frobenius splitting phi of A,
which is produced here from a Fedder witness u in (I^[p] : I).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .groebner import IdealPresentation, buchberger, ideal_member, bracket_power
from .poly import (
    Polynomial,
    RingDescriptor,
    RingMismatchError,
    canonical_lift,
    change_ring,
    exact_divide_by_p,
    poly_pow,
)


class NotAWitnessError(ValueError):
    """u does not lie in (I^[p] : I)."""


class NonNormalizableWitnessError(ValueError):
    """T(u) is not a nonzero constant modulo I."""


class NotInvertibleError(ArithmeticError):
    pass


class FlavorMismatchError(ValueError):
    pass


# ---------------------------------------------------------------------------
# the base algebra


class QuotientAlgebra:
    """A = R/I with elements kept as normal forms."""

    def __init__(self, ideal: IdealPresentation):
        self.ideal = ideal
        self.ring: RingDescriptor = ideal.ring
        self.basis = None if ideal.is_zero() else buchberger(ideal)
        self._nf_cache: dict = {}

    @classmethod
    def polynomial_ring(cls, ring: RingDescriptor) -> "QuotientAlgebra":
        return cls(IdealPresentation(ring))

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.ideal) or "0"
        return f"QuotientAlgebra({self.ring} / ({gens}))"

    def reduce(self, f) -> Polynomial:
        if isinstance(f, int):
            f = self.ring.const(f)
        if f.ring != self.ring:
            raise RingMismatchError(f"{f.ring} is not {self.ring}")
        if self.basis is None:
            return f
        hit = self._nf_cache.get(f)
        if hit is None:
            rem, _ = self.basis.reducer().reduce({(0, m): c for m, c in f.terms.items()})
            hit = Polynomial(self.ring, {m: c for (_, m), c in rem.items()}, _trusted=True)
            if len(self._nf_cache) < 100_000:
                self._nf_cache[f] = hit
        return hit

    def zero(self) -> Polynomial:
        return self.ring.zero()

    def one(self) -> Polynomial:
        return self.reduce(self.ring.one())

    def mul(self, a: Polynomial, b: Polynomial) -> Polynomial:
        return self.reduce(a * b)

    def pow(self, a: Polynomial, e: int) -> Polynomial:
        result = self.one()
        base = self.reduce(a)
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def inverse(self, a: Polynomial) -> Polynomial:
        """Inverse of a in A, read off a certificate for 1 in I + (a)."""
        a = self.reduce(a)
        if a.is_zero():
            raise NotInvertibleError("zero is not invertible")
        gens = (a,) + self.ideal.generators
        member, cert = ideal_member(self.ring.one(), IdealPresentation(self.ring, gens))
        if not member:
            raise NotInvertibleError(f"{a} is not a unit modulo the ideal")
        inv = self.reduce(cert.coefficients[0])
        assert self.mul(inv, a) == self.one()
        return inv

    def is_unit(self, a: Polynomial) -> bool:
        try:
            self.inverse(a)
        except NotInvertibleError:
            return False
        return True

    def random_element(self, rng: random.Random, max_degree: int = 3, max_terms: int = 4) -> Polynomial:
        n = self.ring.nvars
        p = self.ring.p
        terms = {}
        for _ in range(rng.randint(0, max_terms)):
            d = rng.randint(0, max_degree)
            exp = [0] * n
            for _ in range(d):
                exp[rng.randrange(n)] += 1
            terms[tuple(exp)] = rng.randrange(p)
        return self.reduce(Polynomial(self.ring, terms))

    def carry(self, a: Polynomial, b: Polynomial) -> Polynomial:
        """P(a, b) = ((a+b)^p - a^p - b^p) / p, computed through Z/p^2 lifts."""
        p = self.ring.p
        la, lb = canonical_lift(a), canonical_lift(b)
        diff = poly_pow(la + lb, p) - poly_pow(la, p) - poly_pow(lb, p)
        return self.reduce(exact_divide_by_p(diff))


# ---------------------------------------------------------------------------
# splittings


def trace_extract(f: Polynomial) -> Polynomial:
    """T(sum c_a x^a) = sum over a = (p-1,...,p-1) mod p of c_a x^((a-(p-1))/p).

    Over F_p the p-th root of a coefficient is the coefficient itself.
    """
    p = f.ring.p
    out = {}
    for m, c in f.terms.items():
        if all(e % p == p - 1 for e in m):
            out[tuple((e - (p - 1)) // p for e in m)] = c
    return Polynomial(f.ring, out, _trusted=True)


@dataclass
class FrobeniusSplitting:
    """phi(c) = lam^{-1} * T(u * c) mod I."""

    algebra: QuotientAlgebra
    u: Polynomial
    lam: int
    _inv: int = field(init=False, repr=False)
    _cache: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        self._inv = pow(self.lam, -1, self.algebra.ring.p)

    def apply(self, c) -> Polynomial:
        A = self.algebra
        if isinstance(c, int):
            c = A.ring.const(c)
        hit = self._cache.get(c)
        if hit is None:
            hit = A.reduce(trace_extract(self.u * c).scale(self._inv))
            if len(self._cache) < 100_000:
                self._cache[c] = hit
        return hit

    __call__ = apply


def splitting_from_fedder(
    u: Polynomial,
    ideal: IdealPresentation,
    *,
    samples: int = 200,
    seed: int = 0,
) -> FrobeniusSplitting:
    """Build the splitting attached to a Fedder witness and check it on samples.

    Raises NotAWitnessError when u is not in (I^[p] : I) and
    NonNormalizableWitnessError when T(u) mod I is not a nonzero constant.
    """
    if u.ring != ideal.ring:
        raise RingMismatchError("witness and ideal in different rings")
    A = QuotientAlgebra(ideal)
    if not ideal.is_zero():
        Ip = bracket_power(ideal, 1)
        for g in ideal:
            if not ideal_member(u * g, Ip, certificate=False)[0]:
                raise NotAWitnessError(f"u * ({g}) is not in I^[p]")
    t = A.reduce(trace_extract(u))
    if t.is_zero() or not t.is_constant():
        raise NonNormalizableWitnessError(f"T(u) = {t} is not a nonzero constant modulo I")
    phi = FrobeniusSplitting(A, u, t.constant_term())
    if phi.apply(A.one()) != A.one():
        raise AssertionError("phi(1) != 1 after normalization")
    report = check_splitting(phi, samples=samples, seed=seed)
    if not report.ok:
        raise AssertionError(f"splitting check failed: {report.violations[:3]}")
    return phi


def check_splitting(phi, samples: int = 200, seed: int = 0) -> "PropertyReport":
    """p^{-1}-linearity phi(a^p b) = a phi(b), plus independence of representative."""
    A = phi.algebra
    p = A.ring.p
    rng = random.Random(seed)
    rep = PropertyReport("splitting", samples)
    gens = A.ideal.generators
    for i in range(samples):
        a = A.random_element(rng, 2, 3)
        b = A.random_element(rng, 4, 4)
        lhs = phi.apply(A.reduce(poly_pow(a, p) * b))
        rhs = A.mul(a, phi.apply(b))
        if lhs != rhs:
            rep.fail(i, f"phi(a^p b) != a phi(b) for a={a}, b={b}")
        if gens:
            shift = gens[rng.randrange(len(gens))] * A.random_element(rng, 2, 2)
            # evaluate on a non-reduced representative directly
            raw = A.reduce(trace_extract(phi.u * (b + shift)).scale(pow(phi.lam, -1, p)))
            if raw != phi.apply(b):
                rep.fail(i, f"phi depends on the representative of {b}")
    return rep


@dataclass
class LocalizedSplitting:
    """The induced splitting phi' on A_f = R[t]/(I, t f - 1).

    phi'(t^k c) = t^ceil(k/p) * phi(f^(p ceil(k/p) - k) * c), extended additively.
    """

    base: FrobeniusSplitting
    f: Polynomial
    algebra: QuotientAlgebra
    t_index: int

    def apply(self, c) -> Polynomial:
        A = self.algebra
        if isinstance(c, int):
            c = A.ring.const(c)
        p = A.ring.p
        base_ring = self.base.algebra.ring
        ti = self.t_index
        by_k: dict = {}
        for m, a in c.terms.items():
            k = m[ti]
            by_k.setdefault(k, {})[m[:ti] + m[ti + 1:]] = a
        out = A.ring.zero()
        for k, terms in sorted(by_k.items()):
            q = -(-k // p)
            coef = Polynomial(base_ring, terms, _trusted=True)
            val = self.base.apply(self.base.algebra.reduce(poly_pow(self.f, p * q - k) * coef))
            out = out + change_ring(val, A.ring) * A.ring.var(ti) ** q
        return A.reduce(out)

    __call__ = apply


def localize(phi: FrobeniusSplitting, f: Polynomial) -> LocalizedSplitting:
    A = phi.algebra
    f = A.reduce(f)
    name = "t"
    while name in A.ring.names:
        name = "_" + name
    big = A.ring.extend(name)
    t = big.var(A.ring.nvars)
    gens = tuple(change_ring(g, big) for g in A.ideal) + (t * change_ring(f, big) - 1,)
    Af = QuotientAlgebra(IdealPresentation(big, gens))
    if Af.basis is not None and any(b.is_constant() for b in Af.basis.basis):
        raise ValueError(f"{f} is nilpotent in A; the localization is zero")
    return LocalizedSplitting(phi, f, Af, A.ring.nvars)


# ---------------------------------------------------------------------------
# Witt pairs


@dataclass(frozen=True)
class WittPair:
    """(a0, a1) in W_2(A) (phi is None) or in W_2^phi(A)."""

    algebra: QuotientAlgebra = field(compare=False)
    a0: Polynomial
    a1: Polynomial
    phi: Optional[object] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "a0", self.algebra.reduce(self.a0))
        object.__setattr__(self, "a1", self.algebra.reduce(self.a1))

    @property
    def twisted(self) -> bool:
        return self.phi is not None

    def __eq__(self, other):
        if not isinstance(other, WittPair):
            return NotImplemented
        return (
            self.algebra is other.algebra
            and self.phi is other.phi
            and self.a0 == other.a0
            and self.a1 == other.a1
        )

    def __hash__(self):
        return hash((self.a0, self.a1))

    def __str__(self):
        return f"({self.a0}, {self.a1})"

    def __add__(self, other):
        return twisted_add(self, other) if self.twisted else witt_add(self, other)

    def __mul__(self, other):
        return twisted_mul(self, other) if self.twisted else witt_mul(self, other)

    def __neg__(self):
        return witt_neg(self)

    def __pow__(self, n: int):
        return witt_pow(self, n)


def classical(A: QuotientAlgebra, a0, a1=0) -> WittPair:
    return WittPair(A, _el(A, a0), _el(A, a1))


def twisted(phi, a0, a1=0) -> WittPair:
    A = phi.algebra
    return WittPair(A, _el(A, a0), _el(A, a1), phi)


def _el(A: QuotientAlgebra, a) -> Polynomial:
    return A.ring.const(a) if isinstance(a, int) else a


def _same(x: WittPair, y: WittPair, want_twisted: bool):
    if x.algebra is not y.algebra:
        raise FlavorMismatchError("Witt pairs over different algebras")
    if x.phi is not y.phi:
        raise FlavorMismatchError("Witt pairs of different flavors or splittings")
    if x.twisted != want_twisted:
        kind = "twisted" if want_twisted else "classical"
        raise FlavorMismatchError(f"expected {kind} Witt pairs")


def witt_add(x: WittPair, y: WittPair) -> WittPair:
    _same(x, y, False)
    A = x.algebra
    return WittPair(A, x.a0 + y.a0, x.a1 + y.a1 - A.carry(x.a0, y.a0))


def witt_mul(x: WittPair, y: WittPair) -> WittPair:
    # p * a1 * b1 vanishes because A has characteristic p
    _same(x, y, False)
    A = x.algebra
    p = A.ring.p
    a1 = A.mul(A.pow(x.a0, p), y.a1) + A.mul(A.pow(y.a0, p), x.a1)
    return WittPair(A, A.mul(x.a0, y.a0), a1)


def twisted_add(x: WittPair, y: WittPair) -> WittPair:
    _same(x, y, True)
    A = x.algebra
    return WittPair(A, x.a0 + y.a0, x.a1 + y.a1 - x.phi.apply(A.carry(x.a0, y.a0)), x.phi)


def twisted_mul(x: WittPair, y: WittPair) -> WittPair:
    _same(x, y, True)
    A = x.algebra
    return WittPair(A, A.mul(x.a0, y.a0), A.mul(x.a0, y.a1) + A.mul(y.a0, x.a1), x.phi)


def witt_neg(x: WittPair) -> WittPair:
    """Additive inverse: b0 = -a0 and b1 solves a1 + b1 - carry(a0, -a0) = 0."""
    A = x.algebra
    c = A.carry(x.a0, -x.a0)
    if x.twisted:
        c = x.phi.apply(c)
    return WittPair(A, -x.a0, c - x.a1, x.phi)


def witt_one(x: WittPair) -> WittPair:
    return WittPair(x.algebra, x.algebra.one(), x.algebra.zero(), x.phi)


def witt_zero(x: WittPair) -> WittPair:
    return WittPair(x.algebra, x.algebra.zero(), x.algebra.zero(), x.phi)


def witt_pow(x: WittPair, n: int) -> WittPair:
    if n < 0:
        if not x.twisted:
            raise ValueError("negative powers only for twisted pairs")
        return witt_pow(twisted_inv(x), -n)
    result = witt_one(x)
    base = x
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def twisted_inv(x: WittPair, inverse: Optional[Polynomial] = None) -> WittPair:
    """(f, c)^{-1} = (1/f, -c/f^2); ``inverse`` may supply 1/f."""
    if not x.twisted:
        raise FlavorMismatchError("twisted_inv expects a twisted pair")
    A = x.algebra
    inv = A.inverse(x.a0) if inverse is None else A.reduce(inverse)
    if A.mul(inv, x.a0) != A.one():
        raise NotInvertibleError("supplied inverse is wrong")
    return WittPair(A, inv, -A.mul(x.a1, A.mul(inv, inv)), x.phi)


def psi(x: WittPair, phi) -> WittPair:
    """The map W_2(A) -> W_2^phi(A), (a0, a1) -> (a0, phi(a1))."""
    if x.twisted:
        raise FlavorMismatchError("psi takes a classical pair")
    if phi.algebra is not x.algebra:
        raise FlavorMismatchError("splitting over a different algebra")
    return WittPair(x.algebra, x.a0, phi.apply(x.a1), phi)


def p_element(phi) -> WittPair:
    """p = (0, 1) in W_2^phi(A)."""
    A = phi.algebra
    return WittPair(A, A.zero(), A.one(), phi)


# ---------------------------------------------------------------------------
# sample harnesses


@dataclass
class PropertyReport:
    name: str
    samples: int
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def fail(self, i: int, msg: str):
        self.violations.append(f"sample {i}: {msg}")

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "samples": self.samples,
            "violations": len(self.violations),
            "examples": self.violations[:5],
            "notes": self.notes,
        }


def _random_pair(phi, rng, twisted_flavor=True) -> WittPair:
    A = phi.algebra
    a0 = A.random_element(rng)
    a1 = A.random_element(rng)
    return WittPair(A, a0, a1, phi if twisted_flavor else None)


def verify_twisted_ring_axioms(phi, samples: int = 1000, seed: int = 0) -> PropertyReport:
    rep = PropertyReport("twisted ring axioms", samples)
    rng = random.Random(seed)
    for i in range(samples):
        x, y, z = (_random_pair(phi, rng) for _ in range(3))
        one, zero = witt_one(x), witt_zero(x)
        checks = [
            ("additive associativity", (x + y) + z, x + (y + z)),
            ("multiplicative associativity", (x * y) * z, x * (y * z)),
            ("additive commutativity", x + y, y + x),
            ("multiplicative commutativity", x * y, y * x),
            ("distributivity", x * (y + z), x * y + x * z),
            ("additive identity", x + zero, x),
            ("multiplicative identity", x * one, x),
            ("additive inverse", x + (-x), zero),
        ]
        for name, lhs, rhs in checks:
            if lhs != rhs:
                rep.fail(i, f"{name}: x={x} y={y} z={z}")
    return rep


def verify_quotient_hom(phi, samples: int = 1000, seed: int = 0) -> PropertyReport:
    """psi respects + and *, sends 1 to 1, and kills (0, z) whenever phi(z) = 0."""
    rep = PropertyReport("psi is a ring homomorphism", samples)
    rng = random.Random(seed)
    A = phi.algebra
    hit = 0
    for i in range(samples):
        x, y = _random_pair(phi, rng, False), _random_pair(phi, rng, False)
        if psi(witt_add(x, y), phi) != twisted_add(psi(x, phi), psi(y, phi)):
            rep.fail(i, f"psi(x + y) != psi(x) + psi(y) for x={x}, y={y}")
        if psi(witt_mul(x, y), phi) != twisted_mul(psi(x, phi), psi(y, phi)):
            rep.fail(i, f"psi(x * y) != psi(x) * psi(y) for x={x}, y={y}")
        z = A.random_element(rng)
        if phi.apply(z).is_zero() and not psi(WittPair(A, A.zero(), z), phi) == witt_zero(psi(x, phi)):
            rep.fail(i, f"(0, {z}) not in the kernel")
        # surjectivity onto targets of the form (a0, phi(t))
        target = WittPair(A, x.a0, phi.apply(z), phi)
        if psi(WittPair(A, x.a0, z), phi) == target:
            hit += 1
    if psi(witt_one(_random_pair(phi, rng, False)), phi) != witt_one(_random_pair(phi, rng)):
        rep.fail(-1, "psi(1) != 1")
    rep.notes.append(f"preimages found for {hit}/{samples} sampled targets (a0, phi(t))")
    return rep


def verify_flatness_samples(phi, samples: int = 1000, seed: int = 0) -> PropertyReport:
    """p x = (0, x0); p x = 0 iff x0 = 0 iff x lies in p W_2^phi(A)."""
    rep = PropertyReport("flatness over Z/p^2", samples)
    rng = random.Random(seed)
    A = phi.algebra
    p = p_element(phi)
    zero = witt_zero(p)
    if p * p != zero:
        rep.fail(-1, "p^2 != 0")
    for i in range(samples):
        x = _random_pair(phi, rng)
        if rng.random() < 0.5:
            x = WittPair(A, A.zero(), x.a1, phi)
        px = p * x
        if px != WittPair(A, A.zero(), x.a0, phi):
            rep.fail(i, f"p * {x} = {px}")
        if (px == zero) != x.a0.is_zero():
            rep.fail(i, f"annihilator of p mismatch at {x}")
        if x.a0.is_zero() and p * WittPair(A, x.a1, A.zero(), phi) != x:
            rep.fail(i, f"{x} has zeroth coordinate 0 but is not in p W")
    return rep


def verify_power_formula(phi, samples: int = 100, max_n: int = 20, seed: int = 0) -> PropertyReport:
    """(a, b)^n = (a^n, n a^(n-1) b)."""
    rep = PropertyReport("power formula", samples)
    rng = random.Random(seed)
    A = phi.algebra
    for i in range(samples):
        x = _random_pair(phi, rng)
        acc = witt_one(x)
        for n in range(max_n + 1):
            expect_b = A.zero() if n == 0 else A.mul(A.pow(x.a0, n - 1), x.a1).scale(n)
            if acc != WittPair(A, A.pow(x.a0, n), expect_b, phi):
                rep.fail(i, f"({x})^{n} = {acc}")
            acc = acc * x
    return rep


def verify_inverse_formula(phi, samples: int = 100, seed: int = 0) -> PropertyReport:
    """x * x^{-1} = 1 and (x^{-1})^{-1} = x for x with unit zeroth coordinate."""
    rep = PropertyReport("inverse formula", samples)
    rng = random.Random(seed)
    A = phi.algebra
    p = A.ring.p
    tried = 0
    for i in range(samples):
        a0 = A.reduce(A.random_element(rng) + rng.randrange(1, p))
        if not A.is_unit(a0):
            continue
        tried += 1
        x = WittPair(A, a0, A.random_element(rng), phi)
        inv = twisted_inv(x)
        if x * inv != witt_one(x):
            rep.fail(i, f"{x} * {inv} != 1")
        if twisted_inv(inv) != x:
            rep.fail(i, f"inverse is not an involution at {x}")
    rep.notes.append(f"{tried} unit samples")
    return rep


def verify_localization_formula(phi, f: Polynomial, c: Polynomial, samples: int = 100, max_n: int = 4, seed: int = 0):
    """(a/f^n, (f b - n a c)/f^(n+1)) *_phi' (f, c)^n = (a, b) in W_2^phi'(A_f)."""
    rep = PropertyReport("localization formula", samples)
    rng = random.Random(seed)
    A = phi.algebra
    loc = localize(phi, f)
    Af = loc.algebra
    t = Af.ring.var(loc.t_index)

    def up(a):
        return Af.reduce(change_ring(a, Af.ring))

    fF, cF = up(f), up(c)
    fc = WittPair(Af, fF, cF, loc)
    one = Af.one()
    if loc.apply(one) != one:
        rep.fail(-1, "phi'(1) != 1")
    for i in range(samples):
        a, b = A.random_element(rng), A.random_element(rng)
        n = rng.randint(0, max_n)
        aF, bF = up(a), up(b)
        frac = WittPair(Af, aF * t**n, (fF * bF - aF * cF * n) * t ** (n + 1), loc)
        if frac * witt_pow(fc, n) != WittPair(Af, aF, bF, loc):
            rep.fail(i, f"formula fails for a={a}, b={b}, n={n}")
        # phi' extends phi and is p^{-1}-linear in the new variable
        if loc.apply(aF) != up(phi.apply(a)):
            rep.fail(i, f"phi' does not extend phi at {a}")
        k = rng.randint(0, 2 * A.ring.p)
        lhs = loc.apply(Af.reduce(t ** (A.ring.p * k) * bF))
        if lhs != Af.reduce(t**k * loc.apply(bF)):
            rep.fail(i, f"phi'(t^(pk) b) != t^k phi'(b) for k={k}, b={b}")
    return rep


def verify_prime_field_case(p: int, seed: int = 0) -> PropertyReport:
    """For A = F_p with phi = id, n -> n*(1, 0) is an isomorphism Z/p^2 -> W_2^phi(F_p)."""
    ring = RingDescriptor(p, 1, ("z",))
    z = ring.var(0)
    ideal = IdealPresentation(ring, (z,))
    phi = splitting_from_fedder(z ** (p - 1), ideal, samples=20, seed=seed)
    A = phi.algebra
    one = WittPair(A, A.one(), A.zero(), phi)
    images = [witt_zero(one)]
    for _ in range(p * p - 1):
        images.append(images[-1] + one)
    rep = PropertyReport("W_2^phi(F_p) = Z/p^2", p * p)
    if images[-1] + one != images[0]:
        rep.fail(-1, "p^2 * 1 != 0")
    if len(set(images)) != p * p:
        rep.fail(-1, "map from Z/p^2 is not injective")
    for a in range(p * p):
        for b in range(p * p):
            if images[a] + images[b] != images[(a + b) % (p * p)]:
                rep.fail(a, f"additivity at {a}, {b}")
            if images[a] * images[b] != images[(a * b) % (p * p)]:
                rep.fail(a, f"multiplicativity at {a}, {b}")
    return rep
