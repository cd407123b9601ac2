"""Sparse multivariate polynomials over Z/p^k for k in {1, 2}.

A polynomial is an immutable map from exponent tuples to nonzero residues
in ``[0, p^k)``.  Elements of W_2(F_p) are stored directly as residues
mod p^2, so the Witt-vector Frobenius acts trivially on coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Union

Monomial = tuple  # exponent vector, one non-negative int per variable

# exponents and coefficient moduli must fit a signed 32-bit word
MAX_EXPONENT = 2**31 - 1
MAX_MODULUS = 2**31


class RingMismatchError(ValueError):
    """Raised when an operation mixes polynomials from different rings."""


class DivisibilityError(ArithmeticError):
    """Raised by exact division by p when a coefficient is not divisible."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class RingDescriptor:
    """The ring (Z/p^k)[x_1, ..., x_n] with named variables."""

    p: int
    k: int
    names: tuple

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.k not in (1, 2):
            raise ValueError("coefficient exponent k must be 1 or 2")
        if self.p**self.k >= MAX_MODULUS:
            raise OverflowError("coefficient modulus exceeds machine word")
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("a ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def modulus(self) -> int:
        return self.p**self.k

    def __str__(self):
        base = f"F_{self.p}" if self.k == 1 else f"Z/{self.modulus}"
        return f"{base}[{','.join(self.names)}]"

    def index(self, var: Union[int, str]) -> int:
        if isinstance(var, str):
            try:
                return self.names.index(var)
            except ValueError:
                raise KeyError(f"unknown variable {var!r}") from None
        if not 0 <= var < self.nvars:
            raise IndexError(f"variable index {var} out of range")
        return var

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c: int) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def var(self, v: Union[int, str]) -> "Polynomial":
        i = self.index(v)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exp: Iterable[int], coeff: int = 1) -> "Polynomial":
        exp = tuple(exp)
        if len(exp) != self.nvars:
            raise ValueError("exponent vector has wrong length")
        return Polynomial(self, {exp: coeff})

    def with_k(self, k: int) -> "RingDescriptor":
        return RingDescriptor(self.p, k, self.names)

    def extend(self, *names: str) -> "RingDescriptor":
        """Ring with extra variables appended after the existing ones."""
        return RingDescriptor(self.p, self.k, self.names + tuple(names))


def _canon(terms: Mapping, mod: int) -> dict:
    out = {}
    for m, c in terms.items():
        c %= mod
        if c:
            out[m] = c
    return out


class Polynomial:
    """Immutable sparse polynomial.  Do not mutate ``terms``."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingDescriptor, terms: Mapping, *, _trusted: bool = False):
        self.ring = ring
        if _trusted:
            self.terms = terms
        else:
            n = ring.nvars
            for m in terms:
                if len(m) != n or any(e < 0 for e in m):
                    raise ValueError(f"bad exponent vector {m!r}")
            self.terms = _canon(terms, ring.modulus)
        self._hash = None

    # -- basic protocol -------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"Polynomial({self.ring}, {self})"

    def __str__(self):
        return format_polynomial(self)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        mod = self.ring.modulus
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % mod
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        mod = self.ring.modulus
        return Polynomial(self.ring, {m: mod - c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c: int) -> "Polynomial":
        mod = self.ring.modulus
        c %= mod
        if c == 0:
            return self.ring.zero()
        out = {}
        for m, a in self.terms.items():
            v = a * c % mod
            if v:
                out[m] = v
        return Polynomial(self.ring, out, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, _mul_terms(self.terms, other.terms, self.ring.modulus), _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return poly_pow(self, e)

    def mul_monomial(self, exp: Monomial, c: int = 1) -> "Polynomial":
        mod = self.ring.modulus
        out = {}
        for m, a in self.terms.items():
            v = a * c % mod
            if v:
                out[tuple(x + y for x, y in zip(m, exp))] = v
        return Polynomial(self.ring, out, _trusted=True)

    # -- inspection -----------------------------------------------------
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def weighted_degrees(self, weights) -> set:
        return {sum(w * e for w, e in zip(weights, m)) for m in self.terms}

    def coefficient(self, exp: Monomial) -> int:
        return self.terms.get(tuple(exp), 0)

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.ring.nvars, 0)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def sorted_terms(self, order=None) -> list:
        """Terms in descending order (grevlex unless ``order`` is given)."""
        if order is None:
            from .order import GREVLEX as order
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def variables_used(self) -> set:
        return {i for m in self.terms for i, e in enumerate(m) if e}


def _mul_terms(a: Mapping, b: Mapping, mod: int) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = (get(m, 0) + ca * cb) % mod
    return {m: c for m, c in out.items() if c}


def _check_same(a: Polynomial, b: Polynomial):
    if a.ring != b.ring:
        raise RingMismatchError(f"{a.ring} vs {b.ring}")


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    _check_same(a, b)
    return a + b


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    _check_same(a, b)
    return a * b


def poly_pow(a: Polynomial, e: int) -> Polynomial:
    """``a**e`` by repeated squaring."""
    if not isinstance(e, int) or e < 0:
        raise ValueError("exponent must be a non-negative integer")
    if e == 0:
        return a.ring.one()
    if a.degree() * e > MAX_EXPONENT:
        raise OverflowError("exponent overflow in poly_pow")
    result = None
    base = a
    while True:
        if e & 1:
            result = base if result is None else result * base
        e >>= 1
        if not e:
            return result
        base = base * base


def frobenius_pth_power(f: Polynomial, times: int = 1, *, check: bool = False) -> Polynomial:
    """f^(p^times) over F_p, computed by scaling exponents.

    Valid because c^p = c in F_p and the p-th power map is additive.
    """
    ring = f.ring
    if ring.k != 1:
        raise ValueError("frobenius_pth_power needs coefficients in F_p")
    q = ring.p**times
    if f.degree() * q > MAX_EXPONENT:
        raise OverflowError("exponent overflow in frobenius_pth_power")
    out = Polynomial(ring, {tuple(q * e for e in m): c for m, c in f.terms.items()}, _trusted=True)
    if check:
        assert out == poly_pow(f, q)
    return out


def witt_frobenius_endo(f: Polynomial) -> Polynomial:
    """Frobenius lift on (Z/p^2)[x]: x^I -> x^(pI), coefficients fixed."""
    ring = f.ring
    if ring.k != 2:
        raise ValueError("witt_frobenius_endo needs coefficients in Z/p^2")
    p = ring.p
    if f.degree() * p > MAX_EXPONENT:
        raise OverflowError("exponent overflow in witt_frobenius_endo")
    return Polynomial(ring, {tuple(p * e for e in m): c for m, c in f.terms.items()}, _trusted=True)


def canonical_lift(f: Polynomial) -> Polynomial:
    """Lift an F_p polynomial to Z/p^2 using least non-negative residues."""
    if f.ring.k != 1:
        raise ValueError("canonical_lift expects a polynomial over F_p")
    return Polynomial(f.ring.with_k(2), dict(f.terms), _trusted=True)


def reduce_mod_p(f: Polynomial) -> Polynomial:
    if f.ring.k != 2:
        raise ValueError("reduce_mod_p expects a polynomial over Z/p^2")
    return Polynomial(f.ring.with_k(1), f.terms)


def exact_divide_by_p(f: Polynomial) -> Polynomial:
    """The unique F_p polynomial q with p * lift(q) = f in Z/p^2."""
    if f.ring.k != 2:
        raise ValueError("exact_divide_by_p expects a polynomial over Z/p^2")
    p = f.ring.p
    out = {}
    for m, c in f.terms.items():
        if c % p:
            raise DivisibilityError(f"coefficient {c} of {m} is not divisible by {p}")
        out[m] = c // p
    return Polynomial(f.ring.with_k(1), out, _trusted=True)


def partial_derivative(f: Polynomial, var: Union[int, str]) -> Polynomial:
    ring = f.ring
    i = ring.index(var)
    mod = ring.modulus
    out = {}
    for m, c in f.terms.items():
        e = m[i]
        if e:
            v = c * e % mod
            if v:
                dm = list(m)
                dm[i] -= 1
                dm = tuple(dm)
                out[dm] = (out.get(dm, 0) + v) % mod
    return Polynomial(ring, out)


def substitute(f: Polynomial, assignments: Mapping) -> Polynomial:
    """Simultaneously replace variables by polynomials of the same ring."""
    ring = f.ring
    subs = {}
    for v, g in assignments.items():
        if isinstance(g, int):
            g = ring.const(g)
        _check_same(f, g)
        subs[ring.index(v)] = g
    powers: dict = {}

    def power(i, e):
        key = (i, e)
        if key not in powers:
            powers[key] = poly_pow(subs[i], e)
        return powers[key]

    result = ring.zero()
    for m, c in f.terms.items():
        keep = tuple(0 if i in subs else e for i, e in enumerate(m))
        term = ring.monomial(keep, c)
        for i, e in enumerate(m):
            if e and i in subs:
                term = term * power(i, e)
        result = result + term
    return result


def change_ring(f: Polynomial, ring: RingDescriptor, var_map: Mapping = None) -> Polynomial:
    """Move ``f`` into ``ring`` by matching variable names (or ``var_map``).

    Variables of the source absent from the target must not occur in ``f``.
    """
    src = f.ring
    if var_map is None:
        var_map = {}
        for i, name in enumerate(src.names):
            if name in ring.names:
                var_map[i] = ring.names.index(name)
    n = ring.nvars
    out = {}
    for m, c in f.terms.items():
        e = [0] * n
        for i, x in enumerate(m):
            if x:
                if i not in var_map:
                    raise ValueError(f"variable {src.names[i]} has no image in {ring}")
                e[var_map[i]] += x
        e = tuple(e)
        out[e] = out.get(e, 0) + c
    return Polynomial(ring, out)


def format_monomial(names, exp) -> str:
    parts = []
    for name, e in zip(names, exp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    """Render in the script grammar, e.g. ``2x^2*y + 3``; re-parses to ``f``."""
    if not f.terms:
        return "0"
    out = []
    for m, c in f.sorted_terms():
        mono = format_monomial(f.ring.names, m)
        if not mono:
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{c}{mono}")
    return " + ".join(out)
