"""Frobenius liftability of complete intersections over W_2(F_p) = Z/p^2.

For A = F_p[x]/(f_1, ..., f_m) the Frobenius of the canonical lift lifts
iff there are g_i and h_k with

    P_{f_i} + g_i^p = sum_k (d f_i / d x_k)^p h_k   mod (f_1, ..., f_m)

for every i, where p * P_f = F(f~) - f~^p in Z/p^2[x].  Three solvers are
provided: an exact graded linear system for quasi-homogeneous input, a
module membership problem after Frobenius descent, and a degree-bounded
search that can only answer "liftable" or "inconclusive".
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product as iproduct
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .groebner import (
    IdealPresentation,
    MembershipCertificate,
    ModuleVector,
    buchberger,
    ideal_member,
    module_member,
    normal_form,
)
from .poly import (
    Polynomial,
    RingDescriptor,
    canonical_lift,
    exact_divide_by_p,
    frobenius_pth_power,
    partial_derivative,
    poly_pow,
    witt_frobenius_endo,
)

DEFAULT_DESCENT_CAP = 2500
DEFAULT_ORACLE_CAP = 10**6

CALLER_CONTRACT = "f_1, ..., f_m assumed to form a regular sequence (not verified)"


class NotRegularSequenceError(ValueError):
    """The input cannot be a regular sequence (more equations than variables)."""


class NotQuasiHomogeneousError(ValueError):
    pass


class DescentCapError(ValueError):
    pass


# ---------------------------------------------------------------------------
# defect polynomial


@dataclass(frozen=True)
class DefectPolynomial:
    P: Polynomial
    lift: Polynomial

    def check(self) -> bool:
        p = self.P.ring.p
        return canonical_lift(self.P).scale(p) == witt_frobenius_endo(self.lift) - poly_pow(self.lift, p)


def defect_of_lift(ftilde: Polynomial) -> Polynomial:
    """P(f~) with p * P(f~) = F~(f~) - f~^p, for an arbitrary lift f~ over Z/p^2."""
    p = ftilde.ring.p
    return exact_divide_by_p(witt_frobenius_endo(ftilde) - poly_pow(ftilde, p))


def compute_Pf(f: Polynomial) -> DefectPolynomial:
    if f.ring.k != 1:
        raise ValueError("compute_Pf expects a polynomial over F_p")
    lift = canonical_lift(f)
    dp = DefectPolynomial(defect_of_lift(lift), lift)
    assert dp.check()
    return dp


def fermat_quotient(c: int, p: int) -> int:
    return (c - c**p) // p


def compute_Pf_oracle(f: Polynomial, cap: int = DEFAULT_ORACLE_CAP) -> Polynomial:
    """P_f from the multinomial expansion of f^p over the integers."""
    if f.ring.k != 1:
        raise ValueError("compute_Pf_oracle expects a polynomial over F_p")
    p = f.ring.p
    terms = sorted(f.terms.items())
    t = len(terms)
    if t == 0:
        return f.ring.zero()
    if math.comb(p + t - 1, t - 1) > cap:
        raise OverflowError("multinomial enumeration exceeds the configured cap")
    acc: dict = {}

    def add(m, c):
        acc[m] = acc.get(m, 0) + c

    for m, c in terms:
        add(tuple(p * e for e in m), fermat_quotient(c, p))
    pfact = math.factorial(p)
    # compositions alpha of p into t parts via stars and bars
    for bars in combinations(range(p + t - 1), t - 1):
        alpha, prev = [], -1
        for b in bars + (p + t - 1,):
            alpha.append(b - prev - 1)
            prev = b
        if max(alpha) == p:
            continue
        coeff = pfact
        for a in alpha:
            coeff //= math.factorial(a)
        mono = [0] * f.ring.nvars
        for a, (m, c) in zip(alpha, terms):
            coeff *= c**a
            for i, e in enumerate(m):
                mono[i] += a * e
        assert coeff % p == 0
        add(tuple(mono), -(coeff // p))
    return Polynomial(f.ring, acc)


# ---------------------------------------------------------------------------
# verdicts


@dataclass
class LinearObstruction:
    """A linear functional that kills every admissible correction but not the target.

    ``functional[i]`` maps monomials to coefficients and acts on the normal
    form of the i-th equation.  Replay rebuilds every column independently.
    """

    fs: tuple
    g_monos: tuple
    h_monos: tuple
    functional: tuple

    def _apply(self, vecs, G) -> int:
        p = G.ring.p
        total = 0
        for i, v in enumerate(vecs):
            nf = normal_form(v, G)
            for m, c in nf.terms.items():
                total += self.functional[i].get(m, 0) * c
        return total % p

    def replay(self) -> bool:
        ring = self.fs[0].ring
        G = buchberger(IdealPresentation(ring, self.fs))
        m = len(self.fs)
        zero = ring.zero()
        Ps = [compute_Pf(f).P for f in self.fs]
        if self._apply(Ps, G) == 0:
            return False
        for i in range(m):
            for a in self.g_monos[i]:
                vecs = [zero] * m
                vecs[i] = ring.monomial(tuple(ring.p * e for e in a))
                if self._apply(vecs, G):
                    return False
        for k in range(ring.nvars):
            for b in self.h_monos[k]:
                vecs = [frobenius_pth_power(partial_derivative(f, k)) * ring.monomial(b) for f in self.fs]
                if self._apply(vecs, G):
                    return False
        return True

    def to_dict(self) -> dict:
        names = self.fs[0].ring.names
        from .poly import format_monomial

        return {
            "kind": "linear-functional",
            "functional": [
                {format_monomial(names, m) or "1": c for m, c in sorted(fn.items())} for fn in self.functional
            ],
        }


@dataclass
class LiftVerdict:
    status: str  # "liftable" | "not-liftable" | "inconclusive"
    method: str
    fs: tuple
    g: Optional[tuple] = None
    h: Optional[tuple] = None
    certificate: object = None
    degree_bound: Optional[int] = None
    notes: list = field(default_factory=list)

    @property
    def liftable(self) -> bool:
        return self.status == "liftable"

    def replay(self) -> bool:
        if self.status == "liftable":
            return verify_flift_witness(self.fs, self.g, self.h)
        if self.status == "not-liftable":
            return self.certificate is not None and self.certificate.replay()
        return True

    def to_dict(self) -> dict:
        out = {"verdict": self.status, "method": self.method}
        if self.status == "liftable":
            out["witness"] = {"g": [str(x) for x in self.g], "h": [str(x) for x in self.h]}
        elif self.status == "not-liftable":
            cert = self.certificate
            if isinstance(cert, LinearObstruction):
                out["certificate"] = cert.to_dict()
            elif isinstance(cert, MembershipCertificate):
                out["certificate"] = {"kind": "module-normal-form", "remainder_terms": _count_terms(cert.remainder)}
        if self.degree_bound is not None:
            out["degree_bound"] = self.degree_bound
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _count_terms(v) -> int:
    if isinstance(v, ModuleVector):
        return sum(len(c) for c in v.coords)
    return len(v)


def verify_flift_witness(fs: Sequence[Polynomial], gs: Sequence[Polynomial], hs: Sequence[Polynomial]) -> bool:
    """Check P_{f_i} + g_i^p - sum_k (df_i/dx_k)^p h_k = 0 mod (f) for all i."""
    fs, gs, hs = tuple(fs), tuple(gs), tuple(hs)
    if not fs or len(gs) != len(fs):
        return False
    ring = fs[0].ring
    if len(hs) != ring.nvars:
        return False
    G = buchberger(IdealPresentation(ring, fs))
    for f, g in zip(fs, gs):
        expr = compute_Pf(f).P + frobenius_pth_power(g)
        for k, h in enumerate(hs):
            expr = expr - frobenius_pth_power(partial_derivative(f, k)) * h
        if not normal_form(expr, G).is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# weights


def _rational_nullspace(rows: list, n: int) -> list:
    M = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                fac = M[i][c]
                M[i] = [a - fac * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -M[i][fc]
        basis.append(v)
    return basis


def _solves(rows, w) -> bool:
    return all(sum(a * b for a, b in zip(r, w)) == 0 for r in rows)


def detect_quasi_homogeneous(*fs: Polynomial, search_bound: int = 64) -> Optional[tuple]:
    """Positive integer weights making every f_i weighted homogeneous, or None.

    The lexicographically smallest vector is returned (entries up to
    ``search_bound`` when the solution space has dimension above one).
    """
    if not fs:
        raise ValueError("need at least one polynomial")
    n = fs[0].ring.nvars
    rows = []
    for f in fs:
        monos = sorted(f.terms)
        for m in monos[1:]:
            rows.append([a - b for a, b in zip(m, monos[0])])
    ones = (1,) * n
    if _solves(rows, ones):
        return ones
    basis = _rational_nullspace(rows, n)
    if not basis:
        return None
    if len(basis) == 1:
        v = basis[0]
        if all(x < 0 for x in v):
            v = [-x for x in v]
        if not all(x > 0 for x in v):
            return None
        den = math.lcm(*(x.denominator for x in v))
        ints = [int(x * den) for x in v]
        g = math.gcd(*ints)
        return tuple(x // g for x in ints)
    return _lex_search(rows, n, search_bound)


def _lex_search(rows, n, bound):
    """Depth-first lexicographic search for a positive integer solution."""

    def feasible(prefix):
        # rational solvability with the prefix fixed (positivity ignored)
        k = len(prefix)
        reduced = []
        for r in rows:
            rhs = -sum(a * b for a, b in zip(r[:k], prefix))
            reduced.append(r[k:] + [rhs])
        if k == n:
            return all(r[-1] == 0 for r in reduced)
        # solvable iff appending the right-hand side keeps the rank
        return _rank(reduced, n - k + 1) == _rank([r[:-1] for r in reduced], n - k) if reduced else True

    def dfs(prefix):
        if len(prefix) == n:
            return tuple(prefix) if _solves(rows, prefix) else None
        for v in range(1, bound + 1):
            cand = prefix + [v]
            if feasible(cand):
                hit = dfs(cand)
                if hit is not None:
                    return hit
        return None

    return dfs([])


def _rank(rows, n) -> int:
    if not rows:
        return 0
    return n - len(_rational_nullspace(rows, n)) if n else 0


def weighted_degree(f: Polynomial, weights) -> int:
    degs = f.weighted_degrees(weights)
    if len(degs) != 1:
        raise NotQuasiHomogeneousError(f"{f} is not homogeneous for weights {tuple(weights)}")
    return degs.pop()


def monomials_of_weighted_degree(weights, d: int) -> list:
    n = len(weights)
    out = []

    def rec(i, rest, acc):
        if i == n - 1:
            if rest % weights[i] == 0:
                out.append(tuple(acc + [rest // weights[i]]))
            return
        for e in range(rest // weights[i] + 1):
            rec(i + 1, rest - e * weights[i], acc + [e])

    if d >= 0:
        rec(0, d, [])
    return sorted(out)


def monomials_up_to_degree(n: int, d: int) -> list:
    # degree <= d in n variables = degree d in n + 1 variables
    return sorted(m[:n] for m in monomials_of_weighted_degree((1,) * (n + 1), d))


# ---------------------------------------------------------------------------
# linear search (graded and truncated)


def _linear_system(fs: tuple, g_monos: list, h_monos: list):
    ring = fs[0].ring
    p = ring.p
    m, n = len(fs), ring.nvars
    G = buchberger(IdealPresentation(ring, fs))
    derivs = [[frobenius_pth_power(partial_derivative(f, k)) for k in range(n)] for f in fs]
    rows: dict = {}

    def row_of(i, mono):
        key = (i, mono)
        if key not in rows:
            rows[key] = len(rows)
        return rows[key]

    cols = []
    for i in range(m):
        for a in g_monos[i]:
            nf = normal_form(ring.monomial(tuple(p * e for e in a)), G)
            cols.append({row_of(i, mm): c for mm, c in nf.terms.items()})
    for k in range(n):
        for b in h_monos[k]:
            col = {}
            x_b = ring.monomial(b)
            for i in range(m):
                nf = normal_form(derivs[i][k] * x_b, G)
                for mm, c in nf.terms.items():
                    col[row_of(i, mm)] = (-c) % p
            cols.append(col)
    rhs = {}
    for i, f in enumerate(fs):
        nf = normal_form(compute_Pf(f).P, G)
        for mm, c in nf.terms.items():
            rhs[row_of(i, mm)] = (-c) % p
    A = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for j, col in enumerate(cols):
        for r, c in col.items():
            A[r, j] = c
    b = np.zeros(len(rows), dtype=np.int64)
    for r, c in rhs.items():
        b[r] = c
    labels = [None] * len(rows)
    for key, r in rows.items():
        labels[r] = key
    return A, b, labels


def _linear_search(fs: tuple, g_monos: list, h_monos: list):
    """Solve the linear system; returns (g, h) or an obstruction functional."""
    ring = fs[0].ring
    p, m, n = ring.p, len(fs), ring.nvars
    A, b, labels = _linear_system(fs, g_monos, h_monos)
    if A.shape[0] == 0:
        z = np.zeros(A.shape[1], dtype=np.int64)
    elif A.shape[1] == 0:
        z = None if np.any(b % p) else np.zeros(0, dtype=np.int64)
    else:
        z = linalg.solve(A, b, p)
    if z is None:
        if A.shape[1] == 0:
            y = np.zeros(A.shape[0], dtype=np.int64)
            y[int(np.flatnonzero(b % p)[0])] = 1
        else:
            y = linalg.infeasibility_witness(A, b, p)
        functional = [dict() for _ in range(m)]
        for r, c in enumerate(y):
            if c % p:
                i, mono = labels[r]
                functional[i][mono] = int(c) % p
        return None, LinearObstruction(fs, tuple(map(tuple, g_monos)), tuple(map(tuple, h_monos)), tuple(functional))
    idx = 0
    gs = []
    for i in range(m):
        terms = {}
        for a in g_monos[i]:
            terms[a] = int(z[idx])
            idx += 1
        gs.append(Polynomial(ring, terms))
    hs = []
    for k in range(n):
        terms = {}
        for bm in h_monos[k]:
            terms[bm] = int(z[idx])
            idx += 1
        hs.append(Polynomial(ring, terms))
    return (tuple(gs), tuple(hs)), None


def graded_solver(fs: Sequence[Polynomial], weights=None) -> LiftVerdict:
    """Complete solver for quasi-homogeneous input.

    Everything in the criterion is graded, so g_i may be taken of degree
    deg f_i and h_k of degree p * w_k.
    """
    fs = _prepare(fs)
    ring = fs[0].ring
    if weights is None:
        weights = detect_quasi_homogeneous(*fs)
        if weights is None:
            raise NotQuasiHomogeneousError("no positive weights make the input homogeneous")
    weights = tuple(weights)
    degs = [weighted_degree(f, weights) for f in fs]
    g_monos = [monomials_of_weighted_degree(weights, d) for d in degs]
    h_monos = [monomials_of_weighted_degree(weights, ring.p * w) for w in weights]
    sol, obstruction = _linear_search(fs, g_monos, h_monos)
    notes = [CALLER_CONTRACT, f"weights {weights}"]
    if sol is None:
        return LiftVerdict("not-liftable", "graded-linear-algebra", fs, certificate=obstruction, notes=notes)
    return LiftVerdict("liftable", "graded-linear-algebra", fs, g=sol[0], h=sol[1], notes=notes)


def truncated_search(fs: Sequence[Polynomial], degree_bound: int) -> LiftVerdict:
    """Search g_i, h_k of total degree <= degree_bound; never answers "not-liftable"."""
    fs = _prepare(fs)
    n = fs[0].ring.nvars
    monos = monomials_up_to_degree(n, degree_bound)
    sol, _ = _linear_search(fs, [monos] * len(fs), [monos] * n)
    notes = [CALLER_CONTRACT]
    if sol is None:
        return LiftVerdict("inconclusive", "truncated", fs, degree_bound=degree_bound, notes=notes)
    return LiftVerdict("liftable", "truncated", fs, g=sol[0], h=sol[1], degree_bound=degree_bound, notes=notes)


# ---------------------------------------------------------------------------
# Frobenius descent


@dataclass
class DescentInstance:
    """R = F_p[x] as a free module over S = F_p[y], y_i = x_i^p, basis x^a for a in [0,p)^n."""

    fs: tuple
    ring: RingDescriptor
    sub: RingDescriptor
    slots: tuple
    generators: tuple
    labels: tuple
    target: ModuleVector

    @property
    def rank(self) -> int:
        return len(self.fs) * len(self.slots)

    def encode(self, f: Polynomial, component: int = 0) -> ModuleVector:
        p = self.ring.p
        nslots = len(self.slots)
        buckets: dict = {}
        for mono, c in f.terms.items():
            a = tuple(e % p for e in mono)
            pos = component * nslots + self._slot_index[a]
            buckets.setdefault(pos, {})[tuple(e // p for e in mono)] = c
        return self._vector(buckets)

    def decode(self, v: ModuleVector, component: int = 0) -> Polynomial:
        p = self.ring.p
        nslots = len(self.slots)
        terms = {}
        for s, a in enumerate(self.slots):
            for ym, c in v.coords[component * nslots + s].terms.items():
                terms[tuple(p * y + e for y, e in zip(ym, a))] = c
        return Polynomial(self.ring, terms)

    def _vector(self, buckets: dict) -> ModuleVector:
        zero = self.sub.zero()
        coords = [zero] * self.rank
        for pos, terms in buckets.items():
            coords[pos] = Polynomial(self.sub, terms)
        return ModuleVector(tuple(coords))

    def __post_init__(self):
        self._slot_index = {a: i for i, a in enumerate(self.slots)}


def _sub_ring(ring: RingDescriptor) -> RingDescriptor:
    return RingDescriptor(ring.p, 1, tuple(f"{name}_p" for name in ring.names))


def build_descent_instance(fs: Sequence[Polynomial], cap: int = DEFAULT_DESCENT_CAP) -> DescentInstance:
    fs = _prepare(fs)
    ring = fs[0].ring
    p, n, m = ring.p, ring.nvars, len(fs)
    if m * p**n > cap:
        raise DescentCapError(f"descent rank {m * p ** n} exceeds cap {cap}")
    slots = tuple(sorted(iproduct(range(p), repeat=n), key=lambda a: (sum(a), tuple(-x for x in reversed(a)))))
    inst = DescentInstance(fs, ring, _sub_ring(ring), slots, (), (), None)
    nslots = len(slots)

    def encode_multi(polys):
        total = None
        for i, f in enumerate(polys):
            if f.is_zero():
                continue
            v = inst.encode(f, i)
            total = v if total is None else total + v
        return total

    gens, labels = [], []
    derivs = [[frobenius_pth_power(partial_derivative(f, k)) for f in fs] for k in range(n)]
    for k in range(n):
        for a in slots:
            xa = ring.monomial(a)
            v = encode_multi([d * xa for d in derivs[k]])
            if v is not None:
                gens.append(v)
                labels.append(("h", k, a))
    for i in range(m):
        buckets = {i * nslots + inst._slot_index[(0,) * n]: {(0,) * n: 1}}
        gens.append(inst._vector(buckets))
        labels.append(("g", i))
    for i in range(m):
        for j, f in enumerate(fs):
            for a in slots:
                gens.append(inst.encode(f * ring.monomial(a), i))
                labels.append(("w", i, j, a))
    target = encode_multi([compute_Pf(f).P for f in fs])
    if target is None:
        target = inst._vector({})
    inst.generators = tuple(gens)
    inst.labels = tuple(labels)
    inst.target = target
    return inst


def _lift_sub(c: Polynomial, ring: RingDescriptor) -> Polynomial:
    """c(y) with y_i -> x_i^p."""
    p = ring.p
    return Polynomial(ring, {tuple(p * e for e in m): a for m, a in c.terms.items()}, _trusted=True)


def _rename_sub(c: Polynomial, ring: RingDescriptor) -> Polynomial:
    """c(y) with y_i -> x_i."""
    return Polynomial(ring, dict(c.terms), _trusted=True)


def solve_descent(inst: DescentInstance) -> LiftVerdict:
    ring = inst.ring
    m, n = len(inst.fs), ring.nvars
    notes = [CALLER_CONTRACT, f"descent rank {inst.rank}"]
    if inst.target.is_zero():
        zero = ring.zero()
        return LiftVerdict("liftable", "module-groebner", inst.fs, g=(zero,) * m, h=(zero,) * n, notes=notes)
    member, cert = module_member(inst.target, inst.generators)
    if not member:
        return LiftVerdict("not-liftable", "module-groebner", inst.fs, certificate=cert, notes=notes)
    gs = [ring.zero()] * m
    hs = [ring.zero()] * n
    for label, coef in zip(inst.labels, cert.coefficients):
        if coef.is_zero():
            continue
        if label[0] == "h":
            _, k, a = label
            hs[k] = hs[k] + _lift_sub(coef, ring) * ring.monomial(a)
        elif label[0] == "g":
            gs[label[1]] = gs[label[1]] - _rename_sub(coef, ring)
    return LiftVerdict("liftable", "module-groebner", inst.fs, g=tuple(gs), h=tuple(hs), notes=notes)


# ---------------------------------------------------------------------------
# entry points


def _prepare(fs) -> tuple:
    fs = tuple(fs)
    if not fs:
        raise ValueError("need at least one equation")
    ring = fs[0].ring
    if ring.k != 1:
        raise ValueError("equations must have coefficients in F_p")
    for f in fs:
        if f.ring != ring:
            raise ValueError("equations in different rings")
        if f.is_zero() or f.is_constant():
            raise ValueError(f"equation {f} is zero or a unit")
    if len(fs) > ring.nvars:
        raise NotRegularSequenceError(f"{len(fs)} equations in {ring.nvars} variables cannot form a regular sequence")
    return fs


def ci_f_liftable(
    fs: Sequence[Polynomial],
    method: str = "auto",
    degree_bound: Optional[int] = None,
    descent_cap: int = DEFAULT_DESCENT_CAP,
) -> LiftVerdict:
    """Decide Frobenius liftability of F_p[x]/(f_1, ..., f_m)."""
    fs = _prepare(fs)
    if method not in ("auto", "graded", "module", "truncated"):
        raise ValueError(f"unknown method {method!r}")
    if method == "graded":
        return graded_solver(fs)
    if method == "module":
        return solve_descent(build_descent_instance(fs, descent_cap))
    if method == "truncated":
        bound = degree_bound if degree_bound is not None else _default_bound(fs)
        return truncated_search(fs, bound)
    weights = detect_quasi_homogeneous(*fs)
    if weights is not None:
        return graded_solver(fs, weights)
    ring = fs[0].ring
    if len(fs) * ring.p**ring.nvars <= descent_cap:
        return solve_descent(build_descent_instance(fs, descent_cap))
    bound = degree_bound if degree_bound is not None else _default_bound(fs)
    return truncated_search(fs, bound)


def _default_bound(fs) -> int:
    return max(f.degree() for f in fs) * fs[0].ring.p


def hypersurface_f_liftable(f: Polynomial, method: str = "auto", degree_bound: Optional[int] = None, descent_cap: int = DEFAULT_DESCENT_CAP) -> LiftVerdict:
    return ci_f_liftable([f], method=method, degree_bound=degree_bound, descent_cap=descent_cap)


# ---------------------------------------------------------------------------
# W_2 lifts and the quadric family


@dataclass
class CILift:
    lifts: tuple
    flatness_samples: int = 0
    flatness_violations: int = 0
    notes: list = field(default_factory=list)


def w2_canonical_ci_lift(fs: Sequence[Polynomial], samples: int = 50, seed: int = 0, max_degree: Optional[int] = None) -> CILift:
    """Canonical lifts of the f_i, with a sampled flatness check.

    Elements annihilated by p in B = Z/p^2[x]/(f~) come from syzygies
    (a_j) of the f_j mod p: p * c~ = sum a~_j f~_j.  Flatness needs
    c = c~ mod p to lie in (f).  Syzygies are sampled from a linear-algebra
    nullspace in bounded degree.
    """
    fs = tuple(fs)
    lifts = tuple(canonical_lift(f) for f in fs)
    out = CILift(lifts, notes=[CALLER_CONTRACT])
    ring = fs[0].ring
    p, n = ring.p, ring.nvars
    if samples <= 0 or len(fs) < 2:
        if len(fs) == 1:
            out.notes.append("principal ideal: Z/p^2[x] is a domain modulo p, flatness is automatic")
        return out
    D = max_degree if max_degree is not None else max(f.degree() for f in fs)
    monos = monomials_up_to_degree(n, D)
    # columns: (j, mono) for a_j = sum c * mono; rows: monomials of sum a_j f_j
    row_index: dict = {}
    cols = []
    for j, f in enumerate(fs):
        for mono in monos:
            prod = f.mul_monomial(mono)
            cols.append({row_index.setdefault(mm, len(row_index)): c for mm, c in prod.terms.items()})
    M = np.zeros((len(row_index), len(cols)), dtype=np.int64)
    for j, col in enumerate(cols):
        for r, c in col.items():
            M[r, j] = c
    K = linalg.nullspace(M, p)
    rng = random.Random(seed)
    I = IdealPresentation(ring, fs)
    for _ in range(samples):
        if len(K) == 0:
            break
        comb = np.array([rng.randrange(p) for _ in range(len(K))], dtype=np.int64)
        vec = comb @ K % p
        total = lifts[0].ring.zero()
        for j, lf in enumerate(lifts):
            a = {mono: int(vec[j * len(monos) + t]) for t, mono in enumerate(monos) if vec[j * len(monos) + t]}
            total = total + canonical_lift(Polynomial(ring, a)) * lf
        c = exact_divide_by_p(total)
        out.flatness_samples += 1
        if not ideal_member(c, I, certificate=False)[0]:
            out.flatness_violations += 1
    return out


@dataclass
class ObstructionVerdict:
    status: str  # "not-w2-liftable" | "no-pd-structure" | "inconclusive"
    P: Polynomial
    certificate: MembershipCertificate
    ideal: IdealPresentation

    def replay(self) -> bool:
        return self.certificate.replay()

    def to_dict(self) -> dict:
        out = {"verdict": self.status, "P_f": str(self.P)}
        if not self.certificate.member:
            out["certificate"] = {"kind": "normal-form", "remainder": str(self.certificate.remainder)}
        return out


def _obstruction_membership(f: Polynomial, gens: Optional[Sequence[Polynomial]]):
    ring = f.ring
    if gens is None:
        gens = [v ** ring.p for v in ring.gens()]
    P = compute_Pf(f).P
    I = IdealPresentation(ring, (f,) + tuple(gens))
    member, cert = ideal_member(P, I)
    return P, I, member, cert


def quadric_family_w2_obstruction(f: Polynomial, pure_power_gens: Optional[Sequence[Polynomial]] = None) -> ObstructionVerdict:
    """P_f outside (f, x_1^p, ..., x_n^p) rules out every W_2 lift; membership says nothing."""
    P, I, member, cert = _obstruction_membership(f, pure_power_gens)
    return ObstructionVerdict("inconclusive" if member else "not-w2-liftable", P, cert, I)


def pd_obstruction(f: Polynomial, pure_power_gens: Optional[Sequence[Polynomial]] = None) -> ObstructionVerdict:
    """The same non-membership read as the absence of divided powers on the maximal ideal."""
    P, I, member, cert = _obstruction_membership(f, pure_power_gens)
    return ObstructionVerdict("inconclusive" if member else "no-pd-structure", P, cert, I)
