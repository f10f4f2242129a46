"""Polarized Dieudonne modules of minimal p-divisible groups and their lattices.

The isocrystal ``N`` carries the cyclic basis ``e_i^j`` of each simple
summand ``(m_j, n_j)``: ``F e_i = e_{i+m}`` with ``e_{i+m+n} = p e_i``.
``Lambda_min`` is the standard lattice. The symplectic form is antidiagonal,
``+1`` above the centre and ``-1`` below.

On a supersingular summand that is paired with itself (the middle block of a
polygon with an odd number of ``(1,1)`` summands) no antisymmetric form with
``<Fx, Fy> = p sigma<x, y>`` exists for ``F^2 = p`` over ``W(F_p)``; that
block uses ``F e_2 = -p e_1`` instead, an isomorphic isocrystal over the
algebraic closure.

Lattices are handled through windows: a lattice ``L`` with
``p^hi Lambda_min <= L <= p^lo Lambda_min`` is stored as the Howell form of
``M = p^-lo L`` modulo ``p^s Lambda_min``, ``s = hi - lo``. Every operation
on such quotients is exact.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from . import _kernels as K
from .errors import (NotDieudonne, NotSelfDualUpToScalar, NotSymmetric,
                     PrecisionExhausted, VectorOutsideWindow, WindowTooSmall)
from .newton import NewtonPolygon, is_symmetric, split_polarized
from .wittring import WittRingSpec, WittScalar

__all__ = [
    "DieudonneSpace", "WindowLattice", "dieudonne_space", "minimal_lattice",
    "normal_form", "lattice_min", "monomial_valuation", "is_dieudonne",
    "dual_lattice", "kappa", "a_invariant", "generated_module",
    "split_projections", "contains", "scale", "rewindow", "same_lattice",
    "f_image", "v_image", "rel_volume", "cross_dual",
]

MAX_MODULUS = 2 ** 31


@dataclass(frozen=True)
class _Ctx:
    p: int
    s: int
    f: np.ndarray
    sig: np.ndarray
    siginv: np.ndarray


@dataclass(eq=False)
class DieudonneSpace:
    """Coordinates, semilinear F and V, and (if polarized) the Gram matrix.

    ``F(x) = F_matrix . sigma(x)`` and ``V(x) = V_matrix . sigma^-1(x)`` on
    coordinate columns; ``V_matrix = p F_matrix^-1`` is integral.
    """

    np: NewtonPolygon
    ring: WittRingSpec
    F_matrix: np.ndarray
    V_matrix: np.ndarray
    gram: np.ndarray | None
    labels: tuple
    blocks: tuple  # (start, stop) index range per summand
    tag: str = "full"
    _ctx_cache: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return self.F_matrix.shape[0]

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def key(self):
        return (self.np, self.ring.p, self.ring.r, self.ring.modulus, self.tag)

    def __eq__(self, other):
        return isinstance(other, DieudonneSpace) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def ctx(self, s: int) -> _Ctx:
        hit = self._ctx_cache.get(s)
        if hit is None:
            if self.ring.p ** s >= MAX_MODULUS:
                raise PrecisionExhausted(f"p^{s} exceeds the int64 kernel range")
            rs = self.ring.with_precision(s)
            pn = rs.pn
            f = np.array(rs.modulus, dtype=np.int64) % max(pn, 1)
            if s == 0:
                sig = np.eye(self.ring.r, dtype=np.int64)
                siginv = sig
            else:
                sig = rs.sigma_matrix % pn
                siginv = np.eye(self.ring.r, dtype=np.int64)
                for _ in range(self.ring.r - 1):
                    siginv = (siginv @ sig) % pn
            hit = _Ctx(self.ring.p, s, f, sig, siginv)
            self._ctx_cache[s] = hit
        return hit

    @cached_property
    def split_indices(self) -> tuple:
        """Coordinate index lists of ``N0``, ``N_1/2`` and ``N1``."""
        l = len(self.np)
        half = l // 2
        idx0 = [i for b in self.blocks[:half] for i in range(*b)]
        mid = [i for b in self.blocks[half:l - half] for i in range(*b)]
        idx1 = [i for b in self.blocks[l - half:] for i in range(*b)]
        return idx0, mid, idx1

    def restrict(self, idx: Sequence[int], tag: str) -> "DieudonneSpace":
        """Sub-isocrystal spanned by the coordinates ``idx`` (F-stable)."""
        idx = list(idx)
        sub_np = NewtonPolygon(tuple(
            s for s, b in zip(self.np, self.blocks) if b[0] in idx))
        ix = np.ix_(idx, idx)
        gram = None
        if self.gram is not None:
            g = self.gram[ix]
            if np.any(g):
                gram = g
        pos = {old: new for new, old in enumerate(idx)}
        blocks = tuple((pos[b[0]], pos[b[0]] + b[1] - b[0])
                       for b in self.blocks if b[0] in pos)
        return DieudonneSpace(sub_np, self.ring, self.F_matrix[ix].copy(),
                              self.V_matrix[ix].copy(), gram,
                              tuple(self.labels[i] for i in idx), blocks,
                              tag=f"{self.tag}/{tag}")


def dieudonne_space(np_: NewtonPolygon, ring: WittRingSpec) -> DieudonneSpace:
    """Minimal Dieudonne module of ``np_``; polarized iff ``np_`` is symmetric."""
    d = np_.height()
    p = ring.p
    polarized = is_symmetric(np_)
    l = len(np_)
    Fm = np.zeros((d, d), dtype=np.int64)
    labels, blocks = [], []
    off = 0
    for j, s in enumerate(np_):
        H = s.height()
        self_paired = polarized and j == l - 1 - j
        for i in range(H):
            labels.append(f"e{i + 1}^{j + 1}")
            tgt = i + s.m
            if tgt < H:
                Fm[off + tgt, off + i] = 1
            else:
                Fm[off + tgt - H, off + i] = -p if self_paired else p
        blocks.append((off, off + H))
        off += H
    Vm = np.zeros_like(Fm)
    for col in range(d):
        row = int(np.nonzero(Fm[:, col])[0][0])
        Vm[col, row] = p // Fm[row, col] if abs(Fm[row, col]) == 1 else Fm[row, col] // p
    gram = None
    if polarized:
        gram = np.zeros((d, d), dtype=np.int64)
        for a in range(d):
            b = d - 1 - a
            gram[a, b] = 1 if a < b else -1
        lhs = Fm.T @ gram @ Fm
        if not np.array_equal(lhs, p * gram):
            raise AssertionError("pairing axiom fails on the constructed basis")
    if not np.array_equal(Fm @ Vm, p * np.eye(d, dtype=np.int64)):
        raise AssertionError("FV != p on the constructed basis")
    return DieudonneSpace(np_, ring, Fm, Vm, gram, tuple(labels), tuple(blocks))


def minimal_lattice(np_: NewtonPolygon, ring: WittRingSpec) -> DieudonneSpace:
    """Polarized minimal Dieudonne module; ``Lambda_min`` is the standard lattice."""
    if not is_symmetric(np_):
        raise NotSymmetric(f"{np_!r} is not symmetric")
    return dieudonne_space(np_, ring)


# ---------------------------------------------------------------------------
# window lattices


@dataclass(frozen=True, eq=False)
class WindowLattice:
    space: DieudonneSpace
    lo: int
    hi: int
    basis: np.ndarray
    pivots: np.ndarray
    pivot_vals: np.ndarray

    @property
    def window(self) -> tuple:
        return (self.lo, self.hi)

    @property
    def s(self) -> int:
        return self.hi - self.lo

    def length(self) -> int:
        """W-length of ``M / p^s Lambda_min``."""
        return int(K.module_length(self.pivot_vals, self.s))

    def _key(self):
        return (self.space.key, self.lo, self.hi, self.basis.shape, self.basis.tobytes())

    def __eq__(self, other):
        return isinstance(other, WindowLattice) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def to_dict(self) -> dict:
        ring = self.space.ring.with_precision(self.s)
        rows = [[WittScalar(ring, tuple(int(c) for c in entry)).digits() for entry in row]
                for row in self.basis]
        return {"window": [self.lo, self.hi], "basis": rows}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, space: DieudonneSpace, data: dict) -> "WindowLattice":
        lo, hi = data["window"]
        ring = space.ring.with_precision(hi - lo)
        rows = np.zeros((len(data["basis"]), space.dim, space.ring.r), dtype=np.int64)
        for i, row in enumerate(data["basis"]):
            for j, digits in enumerate(row):
                rows[i, j] = WittScalar.from_digits(ring, digits).rep
        return _from_rows(space, lo, hi, rows)

    def __repr__(self):
        return (f"WindowLattice({self.space.np!r}, window=({self.lo},{self.hi}), "
                f"rows={self.basis.shape[0]}, length={self.length()})")


def _from_rows(space: DieudonneSpace, lo: int, hi: int, rows: np.ndarray) -> WindowLattice:
    if lo > 0 or hi < 0 or lo > hi:
        raise ValueError(f"window must satisfy lo <= 0 <= hi, got ({lo},{hi})")
    if space.dim == 0:
        z = np.zeros(0, np.int64)
        return WindowLattice(space, lo, hi, np.zeros((0, 0, space.ring.r), np.int64), z, z)
    c = space.ctx(hi - lo)
    rows = np.ascontiguousarray(rows, dtype=np.int64).reshape(-1, space.dim, space.ring.r)
    H, pc, pv = K.howell(rows, c.p, c.s, c.f)
    return WindowLattice(space, lo, hi, H, pc, pv)


def _coord_to_scalar(space: DieudonneSpace, value, shift: int, s: int) -> np.ndarray:
    """Coordinate ``value`` times ``p^shift`` as an element of ``W_s``."""
    p, r = space.p, space.ring.r
    pn = p ** s
    if isinstance(value, WittScalar):
        comps = list(value.rep)
    elif isinstance(value, (int, np.integer, Fraction)):
        comps = [value] + [0] * (r - 1)
    else:
        comps = list(value)
        if len(comps) != r:
            raise ValueError(f"expected {r} coefficients, got {len(comps)}")
    out = np.zeros(r, dtype=np.int64)
    for i, c in enumerate(comps):
        c = Fraction(c) * Fraction(p) ** shift
        if c == 0:
            continue
        num, den = c.numerator, c.denominator
        if den % p == 0:
            raise VectorOutsideWindow(f"coordinate {value} is not in the window")
        out[i] = (num * pow(den, -1, pn)) % pn if pn > 1 else 0
    return out


def normal_form(space: DieudonneSpace, window, generators) -> WindowLattice:
    """Span of ``generators`` plus ``p^hi Lambda_min``, in canonical form.

    Generators are coordinate vectors w.r.t. the ``e``-basis of ``N``;
    entries may be ints, Fractions with p-power denominators, WittScalars
    or coefficient lists (for ``r > 1``). They must lie in
    ``p^lo Lambda_min``.
    """
    lo, hi = window
    s = hi - lo
    gens = list(generators)
    rows = np.zeros((len(gens), space.dim, space.ring.r), dtype=np.int64)
    for i, g in enumerate(gens):
        g = list(g)
        if len(g) != space.dim:
            raise ValueError(f"vector of length {len(g)} in a space of dimension {space.dim}")
        for j, x in enumerate(g):
            rows[i, j] = _coord_to_scalar(space, x, -lo, s)
    return _from_rows(space, lo, hi, rows)


def lattice_min(space: DieudonneSpace, window=(0, 0)) -> WindowLattice:
    return normal_form(space, window, np.eye(space.dim, dtype=np.int64).tolist())


def contains(lat: WindowLattice, vector) -> bool:
    """Membership of a coordinate vector of ``N``."""
    try:
        probe = normal_form(lat.space, lat.window, [vector])
    except VectorOutsideWindow:
        return False
    if probe.basis.shape[0] == 0:
        return True
    c = lat.space.ctx(lat.s)
    return bool(K.contains_all(lat.basis, lat.pivots, lat.pivot_vals, probe.basis, c.p, c.s, c.f))


def scale(lat: WindowLattice, k: int) -> WindowLattice:
    """``p^k L``; only the window moves. Result may have ``lo > 0``-style
    offsets, so it is immediately re-centred by ``rewindow`` when needed."""
    return WindowLattice(lat.space, lat.lo + k, lat.hi + k, lat.basis,
                         lat.pivots, lat.pivot_vals)


def rewindow(lat: WindowLattice, lo: int, hi: int) -> WindowLattice:
    """Present the same lattice in a larger window ``(lo, hi)``."""
    if lo > lat.lo or hi < lat.hi:
        raise WindowTooSmall(f"window ({lo},{hi}) does not contain ({lat.lo},{lat.hi})")
    if (lo, hi) == lat.window:
        return lat
    space = lat.space
    s_new = hi - lo
    c = space.ctx(s_new)
    pn = space.p ** s_new
    shift = lat.lo - lo
    floor_pow = lat.hi - lo
    rows = [(lat.basis * space.p ** shift) % pn]
    if floor_pow < s_new:
        floor = np.zeros((space.dim, space.dim, space.ring.r), dtype=np.int64)
        for k in range(space.dim):
            floor[k, k, 0] = space.p ** floor_pow
        rows.append(floor)
    stack = np.concatenate(rows) if rows else np.zeros((0, space.dim, space.ring.r), np.int64)
    H, pc, pv = K.howell(np.ascontiguousarray(stack), c.p, c.s, c.f)
    return WindowLattice(space, lo, hi, H, pc, pv)


def _common(a: WindowLattice, b: WindowLattice):
    lo = min(a.lo, b.lo)
    hi = max(a.hi, b.hi)
    return rewindow(a, lo, hi), rewindow(b, lo, hi)


def same_lattice(a: WindowLattice, b: WindowLattice) -> bool:
    if a.space != b.space:
        return False
    x, y = _common(a, b)
    return x.basis.shape == y.basis.shape and np.array_equal(x.basis, y.basis)


def _general(lat: WindowLattice) -> WindowLattice:
    """Re-centre a scaled lattice so that ``lo <= 0 <= hi``."""
    return rewindow(lat, min(lat.lo, 0), max(lat.hi, 0))


def _apply(lat: WindowLattice, M: np.ndarray, which: str) -> WindowLattice:
    big = rewindow(_general(lat), min(lat.lo, 0), max(lat.hi, 0) + 1)
    c = lat.space.ctx(big.s)
    sig = c.sig if which == "F" else c.siginv
    img = K.semilinear(big.basis, M, sig, c.p ** c.s)
    H, pc, pv = K.howell(img, c.p, c.s, c.f)
    return WindowLattice(lat.space, big.lo, big.hi, H, pc, pv)


def f_image(lat: WindowLattice) -> WindowLattice:
    return _apply(lat, lat.space.F_matrix, "F")


def v_image(lat: WindowLattice) -> WindowLattice:
    return _apply(lat, lat.space.V_matrix, "V")


def rel_volume(lat: WindowLattice) -> int:
    """Length of ``Lambda_min / L`` (negative when ``L`` is larger)."""
    d = lat.space.dim
    return d * lat.s - lat.length() + d * lat.lo


def monomial_valuation(a, i: int, j: int, p: int | None = None) -> int:
    """Valuation ``2 v_p(a) + i + j`` of ``a F^i V^j`` in the Dieudonne ring.

    ``a`` is a WittScalar, or an int together with ``p``.
    """
    if i < 0 or j < 0:
        raise ValueError("exponents must be nonnegative")
    if isinstance(a, WittScalar):
        v = a.valuation()
    else:
        if p is None:
            raise TypeError("an integer coefficient needs p")
        a = int(a)
        if a == 0:
            raise PrecisionExhausted("valuation of 0 is unbounded")
        v = 0
        while a % p == 0:
            a //= p
            v += 1
    return 2 * v + i + j


def is_dieudonne(lat: WindowLattice) -> bool:
    if lat.s == 0:
        return True
    sp, c = lat.space, lat.space.ctx(lat.s)
    return bool(K.is_stable(lat.basis, lat.pivots, lat.pivot_vals, sp.F_matrix,
                            sp.V_matrix, c.sig, c.siginv, c.p, c.s, c.f))


def cross_dual(lat: WindowLattice, target: DieudonneSpace, pairing: np.ndarray) -> WindowLattice:
    """``{x in target : <x, y> in W for all y in lat}``.

    ``pairing[i, j] = <t_i, a_j>`` for target coordinate ``i`` and source
    coordinate ``j``; it must be unimodular so the result sits in the window
    ``(-hi, -lo)``.
    """
    src = _general(lat)
    s = src.s
    c = target.ctx(s)
    pn = target.p ** s
    rows = K.int_matvec_rows(src.basis, pairing.astype(np.int64), pn) if s else \
        np.zeros((0, target.dim, target.ring.r), np.int64)
    if s == 0:
        return WindowLattice(target, -src.hi, -src.lo, rows, np.zeros(0, np.int64),
                             np.zeros(0, np.int64))
    H, pc, pv = K.kernel(np.ascontiguousarray(rows), c.p, c.s, c.f)
    return WindowLattice(target, -src.hi, -src.lo, H, pc, pv)


def dual_lattice(lat: WindowLattice) -> WindowLattice:
    """``L^v = {x : <x, L> in W}`` w.r.t. the unimodular Gram matrix."""
    sp = lat.space
    if sp.gram is None:
        raise NotSymmetric("space carries no polarization")
    return cross_dual(lat, sp, sp.gram)


def kappa(lat: WindowLattice) -> int:
    """The ``k`` with ``L^v = p^k L``."""
    d = lat.space.dim
    h2 = d  # 2h
    vol = rel_volume(lat)
    if (2 * vol) % h2:
        raise NotSelfDualUpToScalar(f"volume {vol} not divisible by h = {h2 // 2}")
    k = -(2 * vol) // h2
    if not same_lattice(dual_lattice(lat), scale(lat, k)):
        raise NotSelfDualUpToScalar("L^v is not a p-power multiple of L")
    return k


def a_invariant(lat: WindowLattice) -> int:
    """``dim_k L / (FL + VL)``; 0 for the zero-dimensional space."""
    if lat.space.dim == 0:
        return 0
    if not is_dieudonne(lat):
        raise NotDieudonne("a-invariant needs an F- and V-stable lattice")
    base = _general(lat)
    big = rewindow(base, base.lo, base.hi + 1)
    fv = np.concatenate((f_image(big).basis, v_image(big).basis))
    c = lat.space.ctx(big.s)
    _, _, pv = K.howell(np.ascontiguousarray(fv), c.p, c.s, c.f)
    return big.length() - int(K.module_length(pv, big.s))


def generated_module(space: DieudonneSpace, window, v) -> WindowLattice:
    """Least F,V-stable window lattice containing ``v`` (and ``p^hi Lambda_min``)."""
    seed = normal_form(space, window, [v])
    if seed.s == 0:
        return seed
    c = space.ctx(seed.s)
    H, pc, pv = K.closure(seed.basis, space.F_matrix, space.V_matrix, c.sig, c.siginv,
                          c.p, c.s, c.f)
    return WindowLattice(space, seed.lo, seed.hi, H, pc, pv)


def project(lat: WindowLattice, idx, tag: str) -> WindowLattice:
    sub = lat.space.restrict(idx, tag)
    rows = lat.basis[:, idx, :]
    return _from_rows(sub, lat.lo, lat.hi, rows)


def intersect(lat: WindowLattice, idx, tag: str) -> WindowLattice:
    """``L`` intersected with the coordinate subspace ``idx``."""
    d = lat.space.dim
    idx = list(idx)
    rest = [i for i in range(d) if i not in idx]
    perm = rest + idx
    sub = lat.space.restrict(idx, tag)
    if lat.s == 0:
        return _from_rows(sub, lat.lo, lat.hi, np.zeros((0, len(idx), lat.space.ring.r)))
    c = lat.space.ctx(lat.s)
    permuted = np.ascontiguousarray(lat.basis[:, perm, :])
    H, pc, pv = K.howell(permuted, c.p, c.s, c.f)
    keep = pc >= len(rest)
    rows = H[keep][:, len(rest):, :]
    return _from_rows(sub, lat.lo, lat.hi, rows)


def split_projections(lat: WindowLattice):
    """``(p_0 L, L cap N_1, p_1/2 L, L cap N_1/2)`` as window lattices."""
    idx0, mid, idx1 = lat.space.split_indices
    return (project(lat, idx0, "N0"), intersect(lat, idx1, "N1"),
            project(lat, mid, "Nmid"), intersect(lat, mid, "Nmid"))
