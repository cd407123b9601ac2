"""The reproduction suite: one function per acceptance criterion.

Each criterion returns a CriterionResult with the elapsed time and the
runtime budget; a criterion passes only if every check holds and the
budget is met.  ``fast=True`` shrinks sample counts for quick smoke runs.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

import numpy as np

from . import linalg
from .families import FamilySpec, instantiate, table_one
from .flift import (
    compute_Pf,
    compute_Pf_oracle,
    defect_of_lift,
    hypersurface_f_liftable,
    graded_solver,
    pd_obstruction,
    quadric_family_w2_obstruction,
    verify_flift_witness,
)
from .fsing import fedder_f_pure, glassbrenner_sfr
from .groebner import (
    IdealPresentation,
    buchberger,
    colon_ideal,
    ideal_member,
    member_by_linear_algebra,
)
from .poly import Polynomial, RingDescriptor, canonical_lift, frobenius_pth_power
from .witt import (
    splitting_from_fedder,
    verify_flatness_samples,
    verify_inverse_formula,
    verify_power_formula,
    verify_quotient_hom,
    verify_twisted_ring_axioms,
)


@dataclass
class CriterionResult:
    number: int
    title: str
    checks_ok: bool
    seconds: float
    budget: float
    details: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.checks_ok and self.seconds < self.budget

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] criterion {self.number}: {self.title} ({self.seconds:.2f}s / {self.budget:.0f}s)"

    def to_dict(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "status": "OK" if self.ok else "FAIL",
            "seconds": round(self.seconds, 3),
            "budget_seconds": self.budget,
            "details": self.details,
        }


def _timed(number, title, budget, body) -> CriterionResult:
    details: list = []
    t0 = time.perf_counter()
    try:
        ok = bool(body(details))
    except Exception as exc:  # a crash is a failure, reported with its message
        details.append(f"error: {type(exc).__name__}: {exc}")
        ok = False
    return CriterionResult(number, title, ok, time.perf_counter() - t0, budget, details)


def _ring(p, n, prefix="x"):
    return RingDescriptor(p, 1, tuple(f"{prefix}{i}" for i in range(1, n + 1)))


def _sum_squares(R):
    return sum((v**2 for v in R.gens()), R.zero())


# ---------------------------------------------------------------------------


def criterion_1(fast: bool = False) -> CriterionResult:
    def body(details):
        inst = instantiate(FamilySpec("TruncQuadric", 3, (6,)))
        f = inst.f
        w2 = quadric_family_w2_obstruction(f)
        pd = pd_obstruction(f)
        gb_member = w2.certificate.member
        la_member = member_by_linear_algebra(w2.P, w2.ideal)
        details.append(f"groebner member={gb_member}, linear-algebra member={la_member}")
        details.append(f"w2 verdict={w2.status}, pd verdict={pd.status}")
        return (
            not gb_member
            and not la_member
            and w2.status == "not-w2-liftable"
            and pd.status == "no-pd-structure"
            and w2.replay()
            and pd.replay()
        )

    return _timed(1, "truncated quadric obstruction, p=3, N=6", 5, body)


def criterion_2(fast: bool = False) -> CriterionResult:
    cases = [(5, 3), (6, 3), (5, 5)]

    def body(details):
        ok = True
        for n, p in cases:
            t0 = time.perf_counter()
            v = graded_solver([_sum_squares(_ring(p, n))])
            dt = time.perf_counter() - t0
            good = v.status == "not-liftable" and v.replay() and dt < 30
            details.append(f"n={n} p={p}: {v.status} via {v.method} in {dt:.2f}s, certificate replays={good}")
            ok &= good
        return ok

    return _timed(2, "ordinary double points are not Frobenius liftable", 90, body)


def criterion_3(fast: bool = False) -> CriterionResult:
    def body(details):
        ok = True
        for spec in table_one(7):
            inst = instantiate(spec)
            t0 = time.perf_counter()
            v = hypersurface_f_liftable(inst.f)
            good = v.liftable and verify_flift_witness([inst.f], v.g, v.h)
            dt = time.perf_counter() - t0
            good = good and dt < 60
            details.append(f"{spec.label()}: {v.status} via {v.method}, witness verified={good}, {dt:.2f}s")
            ok &= good
        return ok

    return _timed(3, "ADE models are Frobenius liftable at p=7", 600, body)


def criterion_4(fast: bool = False) -> CriterionResult:
    def body(details):
        inst = instantiate(FamilySpec("FermatCubic", 7))
        v = hypersurface_f_liftable(inst.f)
        ok = v.liftable and verify_flift_witness([inst.f], v.g, v.h)
        details.append(f"liftability: {v.status}, witness verified={ok}")
        for s in inst.ring.gens():
            r = glassbrenner_sfr(inst.ideal, s, e_max=2)
            details.append(f"s={s}: {r.kind} (e={r.e})")
            ok &= r.kind == "not-detected" and r.e == 2
        return ok

    return _timed(4, "Fermat cubic at p=7: liftable, strong F-regularity not detected", 60, body)


def criterion_5(fast: bool = False) -> CriterionResult:
    def body(details):
        ok = True
        for p in (2, 3, 5, 7):
            inst = instantiate(FamilySpec("TripleLine", p))
            fp = fedder_f_pure(inst.ideal)
            v = hypersurface_f_liftable(inst.f)
            good = (not fp.split) and fp.replay() and v.liftable and v.replay()
            details.append(f"p={p}: f-pure={fp.split}, {v.status}, replayed={good}")
            ok &= good
        return ok

    return _timed(5, "x1*x2*(x1+x2): liftable but not F-pure", 10, body)


def criterion_6(fast: bool = False) -> CriterionResult:
    def body(details):
        p = 7
        R = _ring(p, 3)
        X = R.gens()
        gens = (sum((v**3 for v in X), R.zero()),) + tuple(v ** (2 * p) for v in X)
        member, cert = ideal_member(X[0] ** p, IdealPresentation(R, gens))
        details.append(f"member={member}, certificate replays={cert.replay()}")
        return not member and cert.replay()

    return _timed(6, "x1^7 outside (x1^3+x2^3+x3^3, x_i^14)", 10, body)


def _monomials(n, d):
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def langer_graded_check(N: int, p: int, e: int, details: list) -> bool:
    """Compare both ideals degree by degree with Groebner bases and with linear algebra."""
    R = _ring(p, N)
    X = R.gens()
    q = _sum_squares(R)
    frob = IdealPresentation(R, tuple(v**p for v in X))
    colon = colon_ideal(frob, IdealPresentation(R, (q**e,)))
    rhs = IdealPresentation(R, tuple(v**p for v in X) + (q ** (p - e),))
    top = N * (p - 1) // 2 - e
    # rhs is always inside the colon; check the generators anyway
    for g in rhs:
        if not ideal_member(g * q**e, frob, certificate=False)[0]:
            details.append(f"{g} * q^{e} not in the Frobenius power")
            return False
    Gc, Gr = buchberger(colon), buchberger(rhs)
    lc = [lt[1] for lt in Gc.leading_terms()]
    lr = [lt[1] for lt in Gr.leading_terms()]
    qe = q**e
    ok = True
    for d in range(top + 1):
        monos = _monomials(N, d)

        def dim_in(lts):
            return sum(1 for m in monos if any(all(a <= b for a, b in zip(lt, m)) for lt in lts))

        dc, dr = dim_in(lc), dim_in(lr)
        la_c = _colon_dim_la(monos, qe, p, N)
        la_r = _span_dim_la(monos, rhs, p)
        if not (dc == dr == la_c == la_r):
            ok = False
            details.append(f"N={N} p={p} e={e} d={d}: colon {dc}/{la_c}, rhs {dr}/{la_r}")
    details.append(f"N={N} p={p} e={e}: degrees 0..{top} {'agree' if ok else 'differ'}")
    return ok


def _colon_dim_la(monos, qe, p, N) -> int:
    """dim {g of degree d : g * q^e in (x_i^p)} by a kernel computation."""
    if not monos:
        return 0
    cols = {}
    rows = []
    for m in monos:
        prod = qe.mul_monomial(m)
        row = {}
        for mm, c in prod.terms.items():
            if all(x < p for x in mm):
                row[cols.setdefault(mm, len(cols))] = c
        rows.append(row)
    if not cols:
        return len(monos)
    M = np.zeros((len(cols), len(monos)), dtype=np.int64)
    for j, row in enumerate(rows):
        for i, c in row.items():
            M[i, j] = c
    return len(monos) - linalg.rank(M, p)


def _span_dim_la(monos, ideal, p) -> int:
    """dim of the degree-d piece of a homogeneous ideal, by spanning multiples."""
    if not monos:
        return 0
    d = sum(monos[0])
    index = {m: i for i, m in enumerate(monos)}
    N = len(monos[0])
    rows = []
    for g in ideal:
        dg = g.degree()
        if dg > d:
            continue
        for m in _monomials(N, d - dg):
            prod = g.mul_monomial(m)
            row = np.zeros(len(monos), dtype=np.int64)
            for mm, c in prod.terms.items():
                row[index[mm]] = c
            rows.append(row)
    if not rows:
        return 0
    return linalg.rank(np.array(rows), p)


def criterion_7(fast: bool = False) -> CriterionResult:
    def body(details):
        ok = True
        for N, p, e in [(5, 3, 1), (6, 3, 1), (5, 5, 1)]:
            ok &= langer_graded_check(N, p, e, details)
        return ok

    return _timed(7, "graded colon identity for (x_i^p) : (sum x_i^2)^e", 60, body)


def criterion_8(fast: bool = False) -> CriterionResult:
    samples = 100 if fast else 1000

    def body(details):
        R = RingDescriptor(3, 1, ("x", "y"))
        x, y = R.gens()
        phi = splitting_from_fedder(x**2 * y**2, IdealPresentation.of(x * y))
        reports = [
            verify_twisted_ring_axioms(phi, samples=samples, seed=1),
            verify_quotient_hom(phi, samples=samples, seed=2),
            verify_flatness_samples(phi, samples=samples, seed=3),
            verify_power_formula(phi, samples=samples // 10, max_n=20, seed=4),
            verify_inverse_formula(phi, samples=samples // 10, seed=5),
        ]
        for r in reports:
            details.append(f"{r.name}: {len(r.violations)} violations in {r.samples} samples")
        return all(r.ok for r in reports)

    return _timed(8, "twisted Witt vectors over F_3[x,y]/(xy)", 30, body)


def random_poly(rng: random.Random, R: RingDescriptor, max_terms: int, max_deg: int) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(0, max_deg)
        e = [0] * R.nvars
        for _ in range(d):
            e[rng.randrange(R.nvars)] += 1
        terms[tuple(e)] = rng.randrange(1, R.p)
    return Polynomial(R, terms)


def criterion_9(fast: bool = False) -> CriterionResult:
    count = 20 if fast else 100

    def body(details):
        rng = random.Random(9)
        bad = 0
        for p in (2, 3, 5):
            for _ in range(count):
                R = _ring(p, rng.randint(1, 4))
                f = random_poly(rng, R, 5, 4)
                if compute_Pf(f).P != compute_Pf_oracle(f):
                    bad += 1
        details.append(f"dual path: {bad} mismatches in {3 * count} samples")
        bad_lift = 0
        for i in range(count):
            p = (2, 3, 5)[i % 3]
            R = _ring(p, rng.randint(1, 4))
            f, g = random_poly(rng, R, 5, 4), random_poly(rng, R, 4, 3)
            ft = canonical_lift(f)
            moved = ft + canonical_lift(g).scale(p)
            if defect_of_lift(moved) - defect_of_lift(ft) != frobenius_pth_power(g):
                bad_lift += 1
        details.append(f"lift independence: {bad_lift} mismatches in {count} samples")
        return bad == 0 and bad_lift == 0

    return _timed(9, "defect polynomial: two computation paths and lift independence", 20, body)


def random_finite_ideal(rng: random.Random, p: int) -> IdealPresentation:
    n = rng.randint(1, 3)
    R = _ring(p, n)
    gens = [R.gens()[i] ** rng.randint(2, 5) for i in range(n)]
    for _ in range(rng.randint(0, 2)):
        gens.append(random_poly(rng, R, 3, 3) * R.gens()[rng.randrange(n)])
    return IdealPresentation(R, tuple(gens))


def criterion_10(fast: bool = False) -> CriterionResult:
    count = 40 if fast else 200

    def body(details):
        rng = random.Random(10)
        agree = members = 0
        for i in range(count):
            p = (2, 3)[i % 2]
            I = random_finite_ideal(rng, p)
            R = I.ring
            if rng.random() < 0.5:
                # a combination of generators: a member by construction
                f = R.zero()
                for g in I:
                    f = f + random_poly(rng, R, 2, 2) * g
            else:
                f = random_poly(rng, R, 4, 5)
            gb, cert = ideal_member(f, I)
            la = member_by_linear_algebra(f, I)
            members += gb
            if gb == la and cert.replay():
                agree += 1
        details.append(f"{agree}/{count} verdicts agree ({members} members)")
        return agree == count

    return _timed(10, "Groebner membership agrees with the linear-algebra oracle", 60, body)


CRITERIA = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
]


def run_all(fast: bool = False) -> list:
    return [c(fast) for c in CRITERIA]
