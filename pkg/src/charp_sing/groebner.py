"""Buchberger's algorithm over F_p for ideals and submodules of free modules.

Ideals are handled as rank-1 modules.  Internally a term is a pair
``(position, exponent_tuple)`` and an element is a dict from terms to
residues.  Pairs are selected by sugar degree and pruned with the
Gebauer-Moeller form of Buchberger's product and chain criteria (the
product criterion only for rank 1, where it is valid).

Optionally every basis element carries its expression in terms of the
input generators, which is what membership certificates are built from.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as iproduct
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .order import GREVLEX, MonomialOrder, elimination_order
from .poly import (
    Polynomial,
    RingDescriptor,
    RingMismatchError,
    _mul_terms,
    change_ring,
    frobenius_pth_power,
)

DEFAULT_DIM_CAP = 10**6


class NotFiniteDimensionalError(ValueError):
    """The quotient ring is not visibly finite-dimensional."""


class DimensionCapError(ValueError):
    """A finite-dimensional quotient exceeds the configured cap."""


# ---------------------------------------------------------------------------
# public data types


@dataclass(frozen=True)
class IdealPresentation:
    ring: RingDescriptor
    generators: tuple = ()

    def __post_init__(self):
        if self.ring.k != 1:
            raise ValueError("ideals are only supported over F_p")
        gens = []
        for g in self.generators:
            if isinstance(g, int):
                g = self.ring.const(g)
            if g.ring != self.ring:
                raise RingMismatchError(f"generator in {g.ring}, ideal in {self.ring}")
            if not g.is_zero():
                gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))

    @classmethod
    def of(cls, *gens: Polynomial) -> "IdealPresentation":
        if not gens:
            raise ValueError("use IdealPresentation(ring) for the zero ideal")
        return cls(gens[0].ring, tuple(gens))

    @classmethod
    def maximal(cls, ring: RingDescriptor) -> "IdealPresentation":
        """The homogeneous maximal ideal (x_1, ..., x_n)."""
        return cls(ring, tuple(ring.gens()))

    def __add__(self, other: "IdealPresentation") -> "IdealPresentation":
        if other.ring != self.ring:
            raise RingMismatchError("ideals live in different rings")
        return IdealPresentation(self.ring, self.generators + other.generators)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def is_zero(self) -> bool:
        return not self.generators


@dataclass(frozen=True)
class ModuleVector:
    coords: tuple

    def __post_init__(self):
        coords = tuple(self.coords)
        if not coords:
            raise ValueError("module vectors need rank >= 1")
        ring = coords[0].ring
        for c in coords:
            if c.ring != ring:
                raise RingMismatchError("module vector coordinates in different rings")
        object.__setattr__(self, "coords", coords)

    @property
    def ring(self) -> RingDescriptor:
        return self.coords[0].ring

    @property
    def rank(self) -> int:
        return len(self.coords)

    def __add__(self, other):
        _check_rank(self, other)
        return ModuleVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        _check_rank(self, other)
        return ModuleVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __mul__(self, c):
        return ModuleVector(tuple(c * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    @classmethod
    def unit(cls, ring: RingDescriptor, rank: int, i: int, c: Polynomial = None):
        coords = [ring.zero()] * rank
        coords[i] = ring.one() if c is None else c
        return cls(tuple(coords))


def _check_rank(a: ModuleVector, b: ModuleVector):
    if a.rank != b.rank:
        raise ValueError(f"rank mismatch: {a.rank} vs {b.rank}")


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis (of an ideal, or of a submodule when ``rank`` > 1).

    ``representation[b][j]`` is the coefficient of input generator ``j`` in
    basis element ``b`` when the basis was computed with tracking.
    """

    ring: RingDescriptor
    order: MonomialOrder
    rank: int
    basis: tuple
    generators: tuple
    representation: Optional[tuple] = None
    _reducer: object = field(default=None, repr=False, compare=False)

    def leading_terms(self) -> list:
        return [_lead(_to_terms(b), self.order)[0] for b in self.basis]

    def reducer(self) -> "_Reducer":
        if self._reducer is None:
            red = _Reducer(self.ring.p, self.order, track=self.representation is not None)
            for i, b in enumerate(self.basis):
                cof = None
                if self.representation is not None:
                    cof = {j: dict(c.terms) for j, c in enumerate(self.representation[i]) if c}
                red.add(_to_terms(b), cof, 0)
            object.__setattr__(self, "_reducer", red)
        return self._reducer


@dataclass(frozen=True)
class MembershipCertificate:
    """Evidence for a membership decision.

    Positive: ``coefficients`` with sum(c_i * g_i) == target.
    Negative: the nonzero normal form ``remainder`` and the reduced ``basis``.
    """

    member: bool
    target: object
    generators: tuple
    coefficients: Optional[tuple] = None
    remainder: object = None
    basis: Optional[GroebnerBasis] = None

    def replay(self) -> bool:
        if self.member:
            if self.coefficients is None or len(self.coefficients) != len(self.generators):
                return False
            total = _zero_like(self.target)
            for c, g in zip(self.coefficients, self.generators):
                total = total + c * g
            return total == self.target
        if self.remainder is None or self.remainder.is_zero() or self.basis is None:
            return False
        lts = self.basis.leading_terms()
        for t in _to_terms(self.remainder):
            if any(_divides(lt, t) for lt in lts):
                return False
        red = _Reducer(self.basis.ring.p, self.basis.order)
        for b in self.basis.basis:
            red.add(_to_terms(b), None, 0)
        rem, _ = red.reduce(_to_terms(self.target - self.remainder))
        return not rem


def _zero_like(x):
    if isinstance(x, ModuleVector):
        return ModuleVector(tuple(c.ring.zero() for c in x.coords))
    return x.ring.zero()


# ---------------------------------------------------------------------------
# term-level helpers


def _to_terms(x) -> dict:
    if isinstance(x, ModuleVector):
        out = {}
        for pos, c in enumerate(x.coords):
            for m, a in c.terms.items():
                out[(pos, m)] = a
        return out
    return {(0, m): c for m, c in x.terms.items()}


def _from_terms(terms: dict, ring: RingDescriptor, rank: int):
    if rank == 1:
        return Polynomial(ring, {m: c for (_, m), c in terms.items()}, _trusted=True)
    buckets = [dict() for _ in range(rank)]
    for (pos, m), c in terms.items():
        buckets[pos][m] = c
    return ModuleVector(tuple(Polynomial(ring, b, _trusted=True) for b in buckets))


def _divides(a, b) -> bool:
    """Does term ``a`` divide term ``b``?"""
    if a[0] != b[0]:
        return False
    return all(x <= y for x, y in zip(a[1], b[1]))


def _exp_divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lead(terms: dict, order: MonomialOrder):
    t = max(terms, key=lambda t: order.module_key(t[0], t[1]))
    return t, terms[t]


def _add_into(acc: dict, terms: dict, c: int, shift, p: int):
    """acc += c * x^shift * terms (exponent dicts)."""
    for m, a in terms.items():
        mm = tuple(x + y for x, y in zip(m, shift)) if shift is not None else m
        v = (acc.get(mm, 0) + c * a) % p
        if v:
            acc[mm] = v
        else:
            acc.pop(mm, None)


def _cof_combine(acc: dict, cof: dict, c: int, shift, p: int):
    for j, poly in cof.items():
        tgt = acc.setdefault(j, {})
        _add_into(tgt, poly, c, shift, p)
        if not tgt:
            del acc[j]


def _cof_sub_product(acc: dict, quot: dict, cof: dict, p: int):
    """acc -= quot * cof, where quot is an exponent dict."""
    for j, poly in cof.items():
        prod = _mul_terms(quot, poly, p)
        tgt = acc.setdefault(j, {})
        _add_into(tgt, prod, -1, None, p)
        if not tgt:
            del acc[j]


def _sugar(terms: dict) -> int:
    return max(sum(m) for _, m in terms)


def _nvars_of(terms: dict) -> int:
    for _, m in terms:
        return len(m)
    return 0


class _Elt:
    __slots__ = ("lt", "pos", "exp", "tail", "sugar", "cof", "terms")

    def __init__(self, terms: dict, lt, sugar: int, cof):
        self.terms = terms
        self.lt = lt
        self.pos, self.exp = lt
        self.tail = [(t, c) for t, c in terms.items() if t != lt]
        self.sugar = sugar
        self.cof = cof


class _Reducer:
    """A growing list of monic elements used as reducers."""

    def __init__(self, p: int, order: MonomialOrder, track: bool = False):
        self.p = p
        self.order = order
        self.track = track
        self.elts: list = []
        self.by_pos: dict = {}
        self._nkeys: dict = {}
        self._divcache: dict = {}

    def nkey(self, t):
        """Negated order key: the smallest nkey is the largest term."""
        k = self._nkeys.get(t)
        if k is None:
            k = tuple(-x for x in self.order.key(t[1])) + (t[0],)
            self._nkeys[t] = k
        return k

    def lead(self, terms: dict):
        t = min(terms, key=self.nkey)
        return t, terms[t]

    def normalize(self, terms: dict, cof):
        """Make monic; returns (terms, lt, cof)."""
        lt, lc = self.lead(terms)
        if lc != 1:
            p = self.p
            inv = pow(lc, -1, p)
            terms = {t: c * inv % p for t, c in terms.items()}
            if cof is not None:
                cof = {j: {m: a * inv % p for m, a in poly.items()} for j, poly in cof.items()}
        return terms, lt, cof

    def add(self, terms: dict, cof, sugar: int) -> int:
        terms, lt, cof = self.normalize(terms, cof)
        e = _Elt(terms, lt, sugar, cof)
        idx = len(self.elts)
        self.elts.append(e)
        self.by_pos.setdefault(e.pos, []).append(idx)
        return idx

    def find_divisor(self, t):
        hit = self._divcache.get(t)
        if hit is not None:
            return hit
        cands = self.by_pos.get(t[0])
        if not cands:
            return None
        exp = t[1]
        elts = self.elts
        for i in cands:
            for a, b in zip(exp, elts[i].exp):
                if a < b:
                    break
            else:
                self._divcache[t] = i
                return i
        return None

    def reduce(self, h: dict, cof=None):
        """Full reduction of ``h``; returns (remainder, cofactor of remainder).

        ``cof`` describes ``h`` in terms of the input generators; the returned
        cofactor describes the remainder (None unless tracking).
        """
        p = self.p
        h = dict(h)
        nk = self.nkey
        heap = [(nk(t), t) for t in h]
        heapq.heapify(heap)
        rem = {}
        quots = {} if (self.track and cof is not None) else None
        elts = self.elts
        while heap:
            _, t = heapq.heappop(heap)
            c = h.pop(t, None)
            if c is None:
                continue
            gi = self.find_divisor(t)
            if gi is None:
                rem[t] = c
                continue
            g = elts[gi]
            q = tuple(a - b for a, b in zip(t[1], g.exp))
            for (gp, gm), gc in g.tail:
                nt = (gp, tuple(a + b for a, b in zip(gm, q)))
                old = h.get(nt)
                if old is None:
                    h[nt] = (-c * gc) % p
                    heapq.heappush(heap, (nk(nt), nt))
                else:
                    v = (old - c * gc) % p
                    if v:
                        h[nt] = v
                    else:
                        del h[nt]
            if quots is not None:
                qd = quots.setdefault(gi, {})
                qd[q] = (qd.get(q, 0) + c) % p
        if quots is not None:
            cof = {j: dict(poly) for j, poly in cof.items()}
            for gi, qd in quots.items():
                qd = {m: a for m, a in qd.items() if a}
                if qd:
                    _cof_sub_product(cof, qd, elts[gi].cof, p)
        elif not self.track:
            cof = None
        return rem, cof


def _buchberger_terms(gens: Sequence[dict], p: int, order: MonomialOrder, rank: int, track: bool):
    """Reduced Groebner basis of the module spanned by ``gens`` (term dicts).

    Returns a list of (terms, cof) sorted by decreasing leading term, where
    ``cof`` maps input index -> exponent dict (None without tracking).
    """
    red = _Reducer(p, order, track)
    live: dict = {}
    heap: list = []
    active: list = []
    use_product = rank == 1
    nkey = red.nkey

    def lcm(a, b):
        return tuple(x if x > y else y for x, y in zip(a, b))

    def push_pair(i, j, L):
        gi, gj = red.elts[i], red.elts[j]
        dL = sum(L)
        s = max(gi.sugar + dL - sum(gi.exp), gj.sugar + dL - sum(gj.exp))
        live[(i, j)] = L
        heapq.heappush(heap, (s, tuple(-x for x in nkey((gi.pos, L))), i, j))

    def insert(terms, cof, sugar):
        r = red.add(terms, cof, sugar)
        h = red.elts[r]
        e_h = h.exp
        new = []
        for i in active:
            g = red.elts[i]
            if g.pos != h.pos:
                continue
            coprime = use_product and all(not (a and b) for a, b in zip(g.exp, e_h))
            new.append((i, lcm(g.exp, e_h), coprime))
        # chain criterion among the new pairs
        kept = []
        pending = list(new)
        while pending:
            i, L, cop = pending.pop(0)
            if cop or not any(_exp_divides(L2, L) for _, L2, _ in pending + kept):
                kept.append((i, L, cop))
        # chain criterion on old pairs
        for (i, j), L in list(live.items()):
            gi = red.elts[i]
            if gi.pos != h.pos or not _exp_divides(e_h, L):
                continue
            if lcm(gi.exp, e_h) != L and lcm(red.elts[j].exp, e_h) != L:
                del live[(i, j)]
        for i, L, cop in kept:
            if not cop:
                push_pair(i, r, L)
        active[:] = [
            i for i in active if not (red.elts[i].pos == h.pos and _exp_divides(e_h, red.elts[i].exp))
        ]
        active.append(r)

    start = []
    for idx, g in enumerate(gens):
        if not g:
            continue
        cof = {idx: {(0,) * _nvars_of(g): 1}} if track else None
        lt, _ = red.lead(g)
        start.append((_sugar(g), tuple(-x for x in nkey(lt)), idx, g, cof))
    start.sort(key=lambda s: (s[0], s[1], s[2]))
    for sugar, _, _, g, cof in start:
        rem, cof = red.reduce(g, cof)
        if rem:
            insert(rem, cof, sugar)

    while heap:
        s, _, i, j = heapq.heappop(heap)
        L = live.pop((i, j), None)
        if L is None:
            continue
        gi, gj = red.elts[i], red.elts[j]
        qi = tuple(a - b for a, b in zip(L, gi.exp))
        qj = tuple(a - b for a, b in zip(L, gj.exp))
        spoly: dict = {}
        for (tp, tm), c in gi.tail:
            nt = (tp, tuple(a + b for a, b in zip(tm, qi)))
            spoly[nt] = (spoly.get(nt, 0) + c) % p
        for (tp, tm), c in gj.tail:
            nt = (tp, tuple(a + b for a, b in zip(tm, qj)))
            spoly[nt] = (spoly.get(nt, 0) - c) % p
        spoly = {t: c for t, c in spoly.items() if c}
        if not spoly:
            continue
        cof = None
        if track:
            cof = {}
            _cof_combine(cof, gi.cof, 1, qi, p)
            _cof_combine(cof, gj.cof, -1, qj, p)
        rem, cof = red.reduce(spoly, cof)
        if rem:
            insert(rem, cof, s)

    # minimalize, then interreduce
    elts = sorted(red.elts, key=lambda e: nkey(e.lt), reverse=True)
    minimal = []
    for e in elts:
        if not any(_divides(m.lt, e.lt) for m in minimal):
            minimal.append(e)
    minimal.reverse()
    final = _Reducer(p, order, track)
    for e in minimal:
        final.add(e.terms, e.cof, e.sugar)
    out = []
    for e in final.elts:
        # lt + NF(tail); its cofactor is e.cof minus the reduction quotients
        rem, cof = final.reduce(dict(e.tail), e.cof if track else None)
        rem[e.lt] = 1
        out.append((rem, cof))
    return out


# ---------------------------------------------------------------------------
# ideals


def _check_fp(ring: RingDescriptor):
    if ring.k != 1:
        raise ValueError("Groebner computations are only supported over F_p")


@lru_cache(maxsize=256)
def _cached_gb(ring: RingDescriptor, gens: tuple, order: MonomialOrder, rank: int, track: bool) -> GroebnerBasis:
    terms = [_to_terms(g) for g in gens]
    raw = _buchberger_terms(terms, ring.p, order, rank, track)
    basis = tuple(_from_terms(t, ring, rank) for t, _ in raw)
    rep = None
    if track:
        rep = tuple(
            tuple(Polynomial(ring, cof.get(j, {}), _trusted=True) for j in range(len(gens))) for _, cof in raw
        )
    return GroebnerBasis(ring, order, rank, basis, tuple(gens), rep)


def buchberger(ideal: IdealPresentation, order: MonomialOrder = GREVLEX, *, track: bool = False) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal``; with ``track`` also its representation."""
    _check_fp(ideal.ring)
    return _cached_gb(ideal.ring, ideal.generators, order, 1, track)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    if f.ring != G.ring:
        raise RingMismatchError("polynomial and basis in different rings")
    rem, _ = G.reducer().reduce(_to_terms(f))
    return _from_terms(rem, G.ring, 1)


def _member(target, G: GroebnerBasis, rank: int, certificate: bool):
    red = G.reducer()
    rem, cof = red.reduce(_to_terms(target), {} if certificate else None)
    if rem:
        remainder = _from_terms(rem, G.ring, rank)
        return False, MembershipCertificate(False, target, G.generators, remainder=remainder, basis=G)
    coeffs = None
    if certificate:
        # 0 = target - sum(q_b * basis_b) and cof = -sum(q_b * representation_b)
        coeffs = tuple(-Polynomial(G.ring, cof.get(j, {}), _trusted=True) for j in range(len(G.generators)))
    return True, MembershipCertificate(True, target, G.generators, coefficients=coeffs)


def ideal_member(f: Polynomial, ideal: IdealPresentation, order: MonomialOrder = GREVLEX, *, certificate: bool = True):
    """Decide ``f in ideal``; returns (bool, MembershipCertificate)."""
    if f.ring != ideal.ring:
        raise RingMismatchError("polynomial and ideal in different rings")
    if ideal.is_zero():
        if f.is_zero():
            return True, MembershipCertificate(True, f, (), coefficients=())
        G = GroebnerBasis(ideal.ring, order, 1, (), ())
        return False, MembershipCertificate(False, f, (), remainder=f, basis=G)
    G = buchberger(ideal, order, track=certificate)
    return _member(f, G, 1, certificate)


def bracket_power(ideal: IdealPresentation, e: int = 1) -> IdealPresentation:
    """Frobenius power I^[p^e], generated by the p^e-th powers of the generators."""
    if e < 1:
        raise ValueError("bracket power exponent must be >= 1")
    return IdealPresentation(ideal.ring, tuple(frobenius_pth_power(g, e) for g in ideal.generators))


def _extended(ring: RingDescriptor):
    name = "t"
    while name in ring.names:
        name = "_" + name
    big = ring.extend(name)
    return big, big.var(ring.nvars)


def _eliminate_last(polys: Sequence[Polynomial], big: RingDescriptor, small: RingDescriptor) -> list:
    """Generators of (polys) intersected with the subring without the last variable."""
    order = elimination_order(big.nvars, [big.nvars - 1])
    G = buchberger(IdealPresentation(big, tuple(polys)), order)
    n = small.nvars
    keep = []
    for g in G.basis:
        if all(m[n] == 0 for m in g.terms):
            keep.append(Polynomial(small, {m[:n]: c for m, c in g.terms.items()}, _trusted=True))
    return keep


def intersect(I: IdealPresentation, J: IdealPresentation) -> IdealPresentation:
    """I ∩ J via elimination of t from t*I + (1-t)*J."""
    if I.ring != J.ring:
        raise RingMismatchError("ideals in different rings")
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return IdealPresentation(ring)
    big, t = _extended(ring)
    one_minus_t = big.one() - t
    polys = [t * change_ring(g, big) for g in I] + [one_minus_t * change_ring(g, big) for g in J]
    return IdealPresentation(ring, tuple(_eliminate_last(polys, big, ring)))


def exact_quotient(a: Polynomial, b: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    """a / b when b divides a exactly; ArithmeticError otherwise."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    red = _Reducer(a.ring.p, order, track=True)
    red.add(_to_terms(b), {0: {(0,) * a.ring.nvars: 1}}, 0)
    rem, cof = red.reduce(_to_terms(a), {})
    if rem:
        raise ArithmeticError("inexact polynomial division")
    return -Polynomial(a.ring, cof.get(0, {}), _trusted=True)


def colon_by_element(I: IdealPresentation, f: Polynomial) -> IdealPresentation:
    """(I : f) = (I ∩ (f)) / f."""
    ring = I.ring
    if f.is_zero() or ideal_member(f, I, certificate=False)[0]:
        return IdealPresentation(ring, (ring.one(),))
    if I.is_zero():
        return IdealPresentation(ring)
    inter = intersect(I, IdealPresentation(ring, (f,)))
    return IdealPresentation(ring, tuple(exact_quotient(g, f) for g in inter))


def colon_ideal(I: IdealPresentation, J: IdealPresentation) -> IdealPresentation:
    """(I : J) as the intersection of the (I : g) over generators g of J."""
    if I.ring != J.ring:
        raise RingMismatchError("ideals in different rings")
    ring = I.ring
    if J.is_zero():
        return IdealPresentation(ring, (ring.one(),))
    result = None
    for g in J:
        c = colon_by_element(I, g)
        result = c if result is None else intersect(result, c)
    if result.is_zero():
        return result
    return IdealPresentation(ring, buchberger(result).basis)


# ---------------------------------------------------------------------------
# modules


def module_buchberger(gens: Sequence[ModuleVector], order: MonomialOrder = GREVLEX, *, track: bool = False) -> GroebnerBasis:
    gens = tuple(gens)
    if not gens:
        raise ValueError("need at least one generator (the rank is read from it)")
    rank = gens[0].rank
    for g in gens:
        if g.rank != rank:
            raise ValueError(f"rank mismatch: {g.rank} vs {rank}")
    ring = gens[0].ring
    _check_fp(ring)
    return _cached_gb(ring, gens, order, rank, track)


def module_member(v: ModuleVector, gens: Sequence[ModuleVector], order: MonomialOrder = GREVLEX, *, certificate: bool = True):
    """Decide whether ``v`` lies in the submodule spanned by ``gens``."""
    gens = tuple(gens)
    if gens and v.rank != gens[0].rank:
        raise ValueError(f"rank mismatch: {v.rank} vs {gens[0].rank}")
    G = module_buchberger(gens, order, track=certificate)
    if G.rank > 1:
        return _member(v, G, G.rank, certificate)
    member, cert = _member(v.coords[0], G, 1, certificate)
    if member:
        return True, MembershipCertificate(True, v, gens, coefficients=cert.coefficients)
    return False, MembershipCertificate(False, v, gens, remainder=ModuleVector((cert.remainder,)), basis=G)


def _spoly_reduces_to_zero(red: _Reducer, a: _Elt, b: _Elt) -> bool:
    p = red.p
    L = tuple(max(x, y) for x, y in zip(a.exp, b.exp))
    qa = tuple(x - y for x, y in zip(L, a.exp))
    qb = tuple(x - y for x, y in zip(L, b.exp))
    s: dict = {}
    for (tp, tm), c in a.tail:
        nt = (tp, tuple(x + y for x, y in zip(tm, qa)))
        s[nt] = (s.get(nt, 0) + c) % p
    for (tp, tm), c in b.tail:
        nt = (tp, tuple(x + y for x, y in zip(tm, qb)))
        s[nt] = (s.get(nt, 0) - c) % p
    s = {t: c for t, c in s.items() if c}
    return not s or not red.reduce(s)[0]


def is_groebner(G: GroebnerBasis) -> bool:
    """Check that every S-pair of the basis reduces to zero."""
    red = _Reducer(G.ring.p, G.order)
    for b in G.basis:
        red.add(_to_terms(b), None, 0)
    elts = red.elts
    return all(
        _spoly_reduces_to_zero(red, elts[i], elts[j])
        for i in range(len(elts))
        for j in range(i + 1, len(elts))
        if elts[i].pos == elts[j].pos
    )


def is_reduced(G: GroebnerBasis) -> bool:
    lts = G.leading_terms()
    for i, b in enumerate(G.basis):
        terms = _to_terms(b)
        if terms[lts[i]] != 1:
            return False
        for t in terms:
            if any(_divides(lt, t) for j, lt in enumerate(lts) if j != i):
                return False
    return True


# ---------------------------------------------------------------------------
# finite-dimensional quotients


def quotient_basis(ideal: IdealPresentation, order: MonomialOrder = GREVLEX, dim_cap: int = DEFAULT_DIM_CAP) -> list:
    """Standard monomials of R/I, sorted ascending in ``order``."""
    n = ideal.ring.nvars
    G = buchberger(ideal, order)
    lts = [lt[1] for lt in G.leading_terms()]
    if any(not any(e) for e in lts):
        return []
    bounds = [None] * n
    for e in lts:
        nz = [i for i, x in enumerate(e) if x]
        if len(nz) == 1:
            i = nz[0]
            bounds[i] = e[i] if bounds[i] is None else min(bounds[i], e[i])
    if any(b is None for b in bounds):
        raise NotFiniteDimensionalError("initial ideal lacks a pure power of some variable")
    out = []
    stack = [()]
    while stack:
        prefix = stack.pop()
        i = len(prefix)
        if i == n:
            out.append(prefix)
            if len(out) > dim_cap:
                raise DimensionCapError(f"quotient dimension exceeds cap {dim_cap}")
            continue
        for a in range(bounds[i]):
            cand = prefix + (a,)
            pad = cand + (0,) * (n - i - 1)
            # every extension of a divisible prefix is divisible too
            if any(_exp_divides(e, pad) for e in lts):
                break
            stack.append(cand)
    out.sort(key=order.key)
    return out


def _pure_power_bounds(ideal: IdealPresentation) -> list:
    bounds = [None] * ideal.ring.nvars
    for g in ideal:
        if len(g.terms) != 1:
            continue
        (m,) = g.terms
        nz = [i for i, x in enumerate(m) if x]
        if len(nz) == 1:
            i = nz[0]
            bounds[i] = m[i] if bounds[i] is None else min(bounds[i], m[i])
    return bounds


def member_by_linear_algebra(f: Polynomial, ideal: IdealPresentation, dim_cap: int = DEFAULT_DIM_CAP) -> bool:
    """Membership by row reduction, independent of any Groebner computation.

    Needs pure powers x_i^{d_i} among the generators.  R/(x^d) has the box
    monomials as basis and I/(x^d) is spanned by the truncations of m*g for
    box monomials m and the remaining generators g.
    """
    if f.ring != ideal.ring:
        raise RingMismatchError("polynomial and ideal in different rings")
    p = ideal.ring.p
    if any(g.is_constant() for g in ideal):
        return True
    bounds = _pure_power_bounds(ideal)
    if any(b is None for b in bounds):
        raise NotFiniteDimensionalError("oracle needs a pure power of every variable among the generators")
    dim = 1
    for b in bounds:
        dim *= b
    if dim > dim_cap:
        raise DimensionCapError(f"box dimension {dim} exceeds cap {dim_cap}")
    box = list(iproduct(*[range(b) for b in bounds]))
    index = {m: i for i, m in enumerate(box)}

    def inside(m):
        return all(x < b for x, b in zip(m, bounds))

    others = [g for g in ideal if not (len(g.terms) == 1 and not inside(next(iter(g.terms))))]
    rows = []
    for g in others:
        for m in box:
            row = np.zeros(dim, dtype=np.int64)
            hit = False
            for gm, c in g.terms.items():
                i = index.get(tuple(a + b for a, b in zip(gm, m)))
                if i is not None:
                    row[i] = c
                    hit = True
            if hit:
                rows.append(row)
    target = np.zeros(dim, dtype=np.int64)
    for m, c in f.terms.items():
        i = index.get(m)
        if i is not None:
            target[i] = c
    if not rows:
        return not np.any(target)
    return linalg.in_row_space(np.array(rows), target, p)
