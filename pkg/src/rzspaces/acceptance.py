"""Acceptance checks 1-8, shared by ``rzspaces selfcheck`` and the test suite.

Each check returns a :class:`CheckResult`; none of them raise on failure.
``defect_fn`` is a mutation hook: passing a wrong defect must make check 1
fail, which is how the harness proves it can fail at all.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import census as C
from . import dimension as Dm
from .components import component_group
from .newton import decompose_parts, enumerate_symmetric, parse_newton, split_polarized
from .sigmalin import brute_solutions, finite_field, is_triangular, random_system, triangularize
from .wittring import WittRingSpec, frobenius, teichmuller

__all__ = ["CheckResult", "CHECKS", "MUTATIONS", "run_all", "all_polygons", "warm_up"]


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float
    limit: float

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] {self.number}. {self.name}: {self.detail} ({self.seconds:.2f}s, limit {self.limit:g}s)"


def all_polygons(max_height: int = 20):
    """Every symmetric polygon of height ``2h <= max_height``."""
    return [np_ for h in range(1, max_height // 2 + 1) for np_ in enumerate_symmetric(h)]


def _timed(number, name, limit, fn, *args, **kw):
    t = time.perf_counter()
    try:
        ok, detail = fn(*args, **kw)
    except Exception as exc:  # a crash is a failure, reported with its type
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t
    if dt > limit:
        ok, detail = False, detail + f"; exceeded {limit:g}s"
    return CheckResult(number, name, ok, detail, dt, limit)


def _three_forms(max_height: int, defect_fn: Callable):
    polys = all_polygons(max_height)
    bad = []
    for np_ in polys:
        d3, d4 = Dm.dim_polarized(np_), Dm.dim_eq4(np_)
        d5 = Dm.dim_eq5(np_, defect_fn)
        if not (d3 == d4 == d5 and d3.denominator == 1 and d3 >= 0):
            bad.append((np_, d3, d4, d5))
    if bad:
        np_, d3, d4, d5 = bad[0]
        return False, f"{len(bad)}/{len(polys)} disagree, first {np_!r}: {d3}, {d4}, {d5}"
    return True, f"{len(polys)} polygons, all three forms equal and integral"


def _known_cases():
    cases = {"1:1,1:1": 1, "1:1,1:1,1:1": 2}
    got = {k: Dm.dim_polarized(parse_newton(k)) for k in cases}
    for k, v in cases.items():
        rep = Dm.full_report(parse_newton(k))
        if not (got[k] == v and rep.agree):
            return False, f"NP {k}: dim {got[k]}, expected {v}"
    return True, "dim 1 for two supersingular blocks, dim 2 for three"


def _counting(max_height: int):
    for m in range(201):
        s = sum(Dm.level_free_count(i, m) for i in range(2 * m + 2))
        if s != m * (m + 1) // 2:
            return False, f"level sum {s} for m={m}"
    polys = all_polygons(max_height)
    for np_ in polys:
        n0, middle, _ = split_polarized(np_)
        lhs = Dm.dim_polarized(np_)
        rhs = Dm.dim_nonpolarized(n0) + Dm.extension_dimension(Dm.m_invariant(np_), middle)
        if lhs != rhs:
            return False, f"{np_!r}: {lhs} != {rhs}"
    return True, f"m <= 200 level sums and {len(polys)} decompositions exact"


def _witt(seed: int = 0):
    rng = np.random.default_rng(seed)
    rings = [WittRingSpec(3, 1, 4), WittRingSpec(3, 2, 4), WittRingSpec(5, 1, 3),
             WittRingSpec(3, 3, 3)]
    for R in rings:
        one, zero = R.one(), R.zero()
        for _ in range(1000):
            x, y, z = R.random(rng), R.random(rng), R.random(rng)
            if (x + y) + z != x + (y + z) or (x * y) * z != x * (y * z):
                return False, f"associativity fails in {R!r}"
            if x + y != y + x or x * y != y * x:
                return False, f"commutativity fails in {R!r}"
            if x * (y + z) != x * y + x * z:
                return False, f"distributivity fails in {R!r}"
            if x + zero != x or x * one != x or x + (-x) != zero:
                return False, f"identities fail in {R!r}"
            if x.is_unit() and x * x.inverse() != one:
                return False, f"inverse fails in {R!r}"
    for r in (2, 3):
        R = WittRingSpec(3, r, 3)
        for a in range(R.q):
            for b in range(R.q):
                ab = R._mul(R.residue_lift(a).rep, R.residue_lift(b).rep)
                c = sum((v % 3) * 3 ** i for i, v in enumerate(ab))
                if teichmuller(R, a) * teichmuller(R, b) != teichmuller(R, c):
                    return False, f"Teichmuller not multiplicative on F_{R.q}"
    R = WittRingSpec(3, 2, 3)
    for x in R.elements():
        fx = frobenius(x)
        if frobenius(fx) != x:
            return False, f"sigma^2 != id at {x}"
        xp = x ** 3
        if any((u - v) % 3 for u, v in zip(fx.rep, xp.rep)):
            return False, f"sigma != x^p mod p at {x}"
    return True, f"{len(rings)} rings x 1000 triples; Teichmuller on F_9, F_27; sigma on W_3(F_9)"


def _chain_census():
    np_ = parse_newton("1:1")
    for r in (1, 2):
        recs = C.enumerate_census(np_, 3, r, (-1, 1))
        C.verify_census(recs)
        ks = sorted(x.kappa for x in recs)
        if ks != [-2, -1, 0, 1, 2] or any(x.a_inv != 1 for x in recs):
            return False, f"r={r}: kappa {ks}, a {[x.a_inv for x in recs]}"
    recs = C.enumerate_census(np_, 3, 1, (0, 0))
    if len(recs) != 1 or recs[0].kappa != 0:
        return False, f"window (0,0): {len(recs)} records"
    return True, "chain of 5 lattices (r=1,2), kappa -2..2, a=1; window (0,0) gives Lambda_min"


def _duality(budget=None):
    np_ = parse_newton("1:1,1:1")
    details = []
    windows = [(0, 1)]
    budget = C.resolve_budget(budget)
    if C.submodule_count(4, 2, 3) <= budget:
        windows.append((-1, 1))
    seen_a2 = False
    for w in windows:
        recs = C.enumerate_census(np_, 3, 1, w, budget=budget)
        rep = C.verify_census(recs)  # raises on a0 != a1 or a failed dual relation
        if any(x.a0 != x.a1 for x in recs):
            return False, f"a0 != a1 in window {w}"
        seen_a2 |= any(x.a_inv == 2 for x in recs)
        details.append(f"{w}: {rep.n_records} records")
    if not seen_a2:
        return False, "no record with a = 2"
    return True, "; ".join(details) + "; a(L0)=a(L1), (L0)^v = p^k L1, a=2 attained"


def _sigma(n_systems: int = 200, seed: int = 1):
    rng = np.random.default_rng(seed)
    budget = 10 ** 6
    checked = 0
    for t in range(n_systems):
        F = finite_field(3, 2) if t % 2 == 0 else finite_field(3, 3)
        nv = int(rng.integers(1, 4))
        ne = int(rng.integers(1, nv + 1))
        S = random_system(F, ne, nv, 2, rng)
        T = triangularize(S)
        if not is_triangular(T):
            return False, f"system {t} not triangular after elimination"
        for s in (1, 2):
            if (F.q ** s) ** nv > budget:
                continue
            if brute_solutions(S, s) != brute_solutions(T, s):
                return False, f"system {t}: solution sets differ over F_{F.q ** s}"
            checked += 1
    return True, f"{n_systems} systems over F_9/F_27, {checked} solution-set comparisons"


def _components(max_height: int):
    polys = all_polygons(max_height)
    for np_ in polys:
        et, bi, mult = decompose_parts(np_)
        cg = component_group(np_)
        if cg.mult_height != mult or mult != et:
            return False, f"{np_!r}: heights {cg.mult_height} vs {mult}/{et}"
        if (cg.pi0() == "Z") != (mult == 0):
            return False, f"{np_!r}: pi0 {cg.pi0()}"
    return True, f"{len(polys)} polygons"


def _ceil_defect(np_):
    return np_.h - (len(np_) + 1) // 2


MUTATIONS = {"ceil-defect": _ceil_defect}


def warm_up() -> float:
    """Compile the lattice kernels on a tiny census; returns the seconds spent.

    JIT compilation is a one-off cost per install, so it is kept out of the timed checks.
    """
    t = time.perf_counter()
    for r in (1, 2):
        C.verify_census(C.enumerate_census(parse_newton("1:1"), 3, r, (-1, 1)))
        C.enumerate_census(parse_newton("1:1"), 3, r, (-1, 1), method="naive")
    return time.perf_counter() - t


def run_all(max_height: int = 20, defect_fn: Callable = Dm.defect, budget=None,
            only=None) -> list:
    checks = [
        (1, "three dimension formulas agree", 10, _three_forms, (max_height, defect_fn)),
        (2, "known low-dimensional cases", 1, _known_cases, ()),
        (3, "extension count identity", 5, _counting, (max_height,)),
        (4, "Witt ring arithmetic", 5, _witt, ()),
        (5, "chain census of NP[(1,1)]", 5, _chain_census, ()),
        (6, "duality identities on GSp_4 census", 300, _duality, (budget,)),
        (7, "sigma-linear triangularization", 30, _sigma, ()),
        (8, "component group structure", 1, _components, (max_height,)),
    ]
    warm_up()
    out = []
    for number, name, limit, fn, args in checks:
        if only and number not in only:
            continue
        out.append(_timed(number, name, limit, fn, *args))
    return out


CHECKS = tuple(range(1, 9))
