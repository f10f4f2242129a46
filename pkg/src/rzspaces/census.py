"""Census of Dieudonne lattices self-dual up to a scalar inside a window.

Submodules of ``Q = p^lo Lambda_min / p^hi Lambda_min`` are explored
breadth-first. From a submodule ``M`` the search steps to
``closure(M + W v)`` for every line ``v`` in ``(M : p) / M``; every
F,V-stable ``S`` is reached because ``S / M`` has a nonzero vector killed by
``p`` whenever ``M`` is strictly inside ``S``. The naive path replaces the
closure by the plain W-span, visits every W-submodule and filters
afterwards; it is the completeness oracle.

The pre-flight estimate is the exact number of submodules of ``(W_s)^d``
(Birkhoff's count), so the naive search visits exactly that many nodes.
"""
from __future__ import annotations

import csv
import io
import json
import os
from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _kernels as K
from . import dieulattice as DL
from .errors import BudgetExceeded, CensusAssertion, NotSelfDualUpToScalar
from .newton import NewtonPolygon, require_symmetric
from .wittring import WittRingSpec

__all__ = [
    "DEFAULT_BUDGET", "CensusRecord", "CensusReport", "submodule_count",
    "gaussian_binomial", "resolve_budget", "enumerate_census", "verify_census",
    "census_space", "records_to_csv", "records_to_json", "census_metadata",
]

DEFAULT_BUDGET = 10 ** 7


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _partitions_in_box(length: int, top: int):
    """Non-increasing sequences of ``length`` entries in ``[0, top]``."""
    if length == 0:
        yield ()
        return
    for first in range(top, -1, -1):
        for rest in _partitions_in_box(length - 1, first):
            yield (first,) + rest


def submodule_count(d: int, s: int, q: int) -> int:
    """Number of submodules of ``(W_s(F_q))^d``.

    Sums Birkhoff's count of subgroups of cotype-free type ``mu`` in a
    homocyclic group, written with conjugate partitions:
    ``prod_i q^(mu'_{i+1}(d - mu'_i)) [d - mu'_{i+1}, mu'_i - mu'_{i+1}]_q``.
    """
    if s == 0 or d == 0:
        return 1
    total = 0
    for mu in _partitions_in_box(s, d):
        ext = mu + (0,)
        term = 1
        for i in range(s):
            a, b = ext[i], ext[i + 1]
            term *= q ** (b * (d - a)) * gaussian_binomial(d - b, a - b, q)
        total += term
    return total


def resolve_budget(budget: int | None) -> int:
    if budget is not None:
        return int(budget)
    env = os.environ.get("RZ_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class CensusRecord:
    lattice: DL.WindowLattice
    kappa: int
    a_inv: int
    rel_volume: int
    a0: int
    a1: int

    def basis_hex(self) -> str:
        """Teichmuller digits of the canonical basis, one hex digit string
        per entry (base ``q`` digits, little-endian), rows joined by ``;``."""
        q = self.lattice.space.ring.q
        width = max(1, len(format(q - 1, "x")))
        rows = self.lattice.to_dict()["basis"]
        return ";".join(",".join("".join(format(x, f"0{width}x") for x in entry) for entry in row)
                        for row in rows)

    def to_dict(self) -> dict:
        return {"kappa": self.kappa, "a_inv": self.a_inv, "rel_volume": self.rel_volume,
                "a0": self.a0, "a1": self.a1, "basis": self.basis_hex(),
                "lattice": self.lattice.to_dict()}


def census_space(np_: NewtonPolygon, p: int, r: int) -> DL.DieudonneSpace:
    require_symmetric(np_)
    return DL.minimal_lattice(np_, WittRingSpec(p, r, 1))


def _make_record(lat: DL.WindowLattice) -> CensusRecord | None:
    try:
        k = DL.kappa(lat)
    except NotSelfDualUpToScalar:
        return None
    lam0, lam1, _, _ = DL.split_projections(lat)
    a0 = DL.a_invariant(lam0) if lam0.space.dim else 0
    a1 = DL.a_invariant(lam1) if lam1.space.dim else 0
    return CensusRecord(lat, k, DL.a_invariant(lat), DL.rel_volume(lat), a0, a1)


def _quotient_lines(space, H, pc, pv, C, ctx):
    """One representative per line of the F_q-space ``C / M``."""
    p, s, f = ctx.p, ctx.s, ctx.f
    pn = p ** s
    r = space.ring.r
    q = space.ring.q
    units = []
    for a in range(1, q):
        u = np.array([(a // p ** i) % p for i in range(r)], dtype=np.int64)
        units.append(u)
    zero = np.zeros((space.dim, r), np.int64)
    vecs = [zero]
    seen_keys = {zero.tobytes()}
    for g in C:
        g = K.reduce_vec(H, pc, pv, g, p, s, f)
        if g.tobytes() in seen_keys:
            continue
        new = []
        for u in units:
            ug = K.scale_row(g, u, f, pn)
            for x in vecs:
                y = K.reduce_vec(H, pc, pv, (x + ug) % pn, p, s, f)
                key = y.tobytes()
                if key not in seen_keys:
                    seen_keys.add(key)
                    new.append(y)
        vecs.extend(new)
    lines = []
    covered = set()
    for v in vecs[1:]:
        key = v.tobytes()
        if key in covered:
            continue
        lines.append(v)
        for u in units:
            covered.add(K.reduce_vec(H, pc, pv, K.scale_row(v, u, f, pn), p, s, f).tobytes())
    return lines


def _explore(space, window, budget: int, closed: bool):
    lo, hi = window
    s = hi - lo
    d, r = space.dim, space.ring.r
    if s == 0:
        empty = np.zeros((0, d, r), np.int64)
        return [(empty, np.zeros(0, np.int64), np.zeros(0, np.int64))]
    ctx = space.ctx(s)
    p, f = ctx.p, ctx.f
    Fm, Vm = space.F_matrix, space.V_matrix
    start = K.howell(np.zeros((0, d, r), np.int64), p, s, f)
    seen = {start[0].tobytes(): start}
    queue = deque([start])
    while queue:
        H, pc, pv = queue.popleft()
        C, _, _ = K.colon_p(H, p, s, f)
        for v in _quotient_lines(space, H, pc, pv, C, ctx):
            stack = np.ascontiguousarray(np.concatenate((H, v[None])))
            if closed:
                child = K.closure(stack, Fm, Vm, ctx.sig, ctx.siginv, p, s, f)
            else:
                child = K.howell(stack, p, s, f)
            key = child[0].tobytes()
            if key not in seen:
                if len(seen) >= budget:
                    raise BudgetExceeded(len(seen) + 1, budget, "visited normal forms")
                seen[key] = child
                queue.append(child)
    return list(seen.values())


def enumerate_census(np_: NewtonPolygon, p: int = 3, r: int = 1, window=(-1, 1),
                     budget: int | None = None, method: str = "closure") -> list:
    """All F,V-stable lattices in the window that are self-dual up to scalar.

    ``method="naive"`` walks every W-submodule and filters; it is slow and
    exists as an independent oracle.
    """
    if method not in ("closure", "naive"):
        raise ValueError(f"unknown method {method!r}")
    space = census_space(np_, p, r)
    lo, hi = window
    if lo > 0 or hi < 0:
        raise ValueError(f"window must satisfy lo <= 0 <= hi, got {window}")
    budget = resolve_budget(budget)
    estimate = submodule_count(space.dim, hi - lo, space.ring.q)
    if estimate > budget:
        raise BudgetExceeded(estimate, budget, "submodules of the window quotient")
    records = []
    for H, pc, pv in _explore(space, (lo, hi), budget, method == "closure"):
        lat = DL.WindowLattice(space, lo, hi, H, pc, pv)
        if method == "naive" and not DL.is_dieudonne(lat):
            continue
        rec = _make_record(lat)
        if rec is not None:
            records.append(rec)
    records.sort(key=lambda t: (t.rel_volume, t.a_inv, t.lattice.basis.shape[0],
                                t.lattice.basis.tobytes()))
    return records


@dataclass
class CensusReport:
    n_records: int
    kappa_histogram: dict
    a_histogram: dict
    checks: tuple
    passed: bool = True

    def to_dict(self) -> dict:
        return {"n_records": self.n_records,
                "kappa_histogram": {str(k): v for k, v in sorted(self.kappa_histogram.items())},
                "a_histogram": {str(k): v for k, v in sorted(self.a_histogram.items())},
                "checks": list(self.checks), "passed": self.passed}


CHECKS = ("dieudonne", "dual_scalar", "a0_eq_a1", "split_dual", "middle_dual",
          "regenerates", "duality_permutes")


def _fail(check, rec):
    raise CensusAssertion(check, rec)


def verify_census(records: Iterable[CensusRecord]) -> CensusReport:
    """Re-check every record; raise ``CensusAssertion`` on the first failure."""
    records = list(records)
    keys = set()
    for rec in records:
        lat = rec.lattice
        sp = lat.space
        if not DL.is_dieudonne(lat):
            _fail("dieudonne", rec)
        if not DL.same_lattice(DL.dual_lattice(lat), DL.scale(lat, rec.kappa)):
            _fail("dual_scalar", rec)
        lam0, lam1, half_proj, half_int = DL.split_projections(lat)
        a0 = DL.a_invariant(lam0) if lam0.space.dim else 0
        a1 = DL.a_invariant(lam1) if lam1.space.dim else 0
        if (a0, a1) != (rec.a0, rec.a1) or a0 != a1:
            _fail("a0_eq_a1", rec)
        idx0, mid, idx1 = sp.split_indices
        if idx0:
            cross = sp.gram[np.ix_(idx1, idx0)]
            if not DL.same_lattice(DL.cross_dual(lam0, lam1.space, cross),
                                   DL.scale(lam1, rec.kappa)):
                _fail("split_dual", rec)
        if mid:
            g = sp.gram[np.ix_(mid, mid)]
            if not DL.same_lattice(DL.cross_dual(half_proj, half_int.space, g),
                                   DL.scale(half_int, rec.kappa)):
                _fail("middle_dual", rec)
        again = DL.WindowLattice(sp, lat.lo, lat.hi, *K.howell(lat.basis, *_pf(lat)))
        if again != lat:
            _fail("regenerates", rec)
        keys.add(_abs_key(lat))
    for rec in records:
        lat = rec.lattice
        if lat.lo == -lat.hi:
            dual = DL.dual_lattice(lat)
            if _abs_key(dual) not in keys:
                _fail("duality_permutes", rec)
    kh = Counter(r.kappa for r in records)
    if any(kh[k] != kh[-k] for k in kh) and all(r.lattice.lo == -r.lattice.hi for r in records):
        _fail("duality_permutes", records[0])
    ah = Counter(r.a_inv for r in records)
    return CensusReport(len(records), dict(kh), dict(ah), CHECKS)


def _pf(lat):
    c = lat.space.ctx(lat.s)
    return c.p, c.s, c.f


def _abs_key(lat):
    """Window-independent identity of a lattice (its form in a fixed window)."""
    g = DL.rewindow(DL._general(lat), min(lat.lo, -lat.hi), max(lat.hi, -lat.lo))
    return (g.lo, g.hi, g.basis.shape, g.basis.tobytes())


def census_metadata(np_: NewtonPolygon, p: int, r: int, window, budget: int) -> dict:
    return {"np": np_.to_text(), "p": p, "r": r, "window": list(window),
            "residue_field": f"F_{p ** r} (only F_{p ** r}-rational lattices are listed)",
            "budget": budget}


CSV_COLUMNS = ("kappa", "a_inv", "rel_volume", "a0", "a1", "basis")


def records_to_csv(records, metadata: dict) -> str:
    buf = io.StringIO()
    for k, v in metadata.items():
        buf.write(f"# {k}: {json.dumps(v) if not isinstance(v, str) else v}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rec in records:
        d = rec.to_dict()
        w.writerow([d[c] for c in CSV_COLUMNS])
    return buf.getvalue()


def records_to_json(records, metadata: dict, report: CensusReport | None = None) -> str:
    out = {"metadata": metadata, "records": [r.to_dict() for r in records]}
    if report is not None:
        out["report"] = report.to_dict()
    return json.dumps(out, indent=1)
