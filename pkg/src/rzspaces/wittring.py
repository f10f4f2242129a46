"""Truncated Witt vectors ``W_n(F_q)``, ``q = p^r``, with Frobenius.

For a perfect residue field ``W_n(F_q)`` is the unramified quotient
``Z[x]/(p^n, f(x))`` where ``f`` lifts an irreducible polynomial of degree
``r`` over ``F_p``. Elements are stored as coefficient tuples of length
``r`` in ``[0, p^n)``. Residue-field elements are plain ints in ``[0, q)``
whose base-``p`` digits are the coefficients of ``1, x, ..., x^(r-1)``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import NotAUnit, PrecisionExhausted, RingMismatch

__all__ = ["WittRingSpec", "WittScalar", "conway_polynomial", "arith",
           "teichmuller", "frobenius"]

# Conway polynomials, coefficients low degree first (monic).
_CONWAY = {
    (3, 1): (1, 1), (3, 2): (2, 2, 1), (3, 3): (1, 2, 0, 1), (3, 4): (2, 0, 0, 2, 1),
    (5, 1): (3, 1), (5, 2): (2, 4, 1), (5, 3): (3, 3, 0, 1),
    (7, 1): (4, 1), (7, 2): (3, 6, 1), (7, 3): (4, 0, 6, 1),
    (11, 1): (9, 1), (11, 2): (2, 7, 1),
    (13, 1): (11, 1), (13, 2): (2, 12, 1),
}


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def _polymod_p(a, f, p):
    """Remainder of ``a`` by monic ``f`` over F_p (lists, low degree first)."""
    a = [x % p for x in a]
    df = len(f) - 1
    while len(a) - 1 >= df and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1]
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def is_irreducible_mod_p(f, p) -> bool:
    """Brute-force irreducibility of a monic polynomial over F_p."""
    f = [x % p for x in f]
    deg = len(f) - 1
    if deg <= 1:
        return deg == 1
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            if not _polymod_p(f, g, p):
                return False
    return True


def conway_polynomial(p: int, r: int) -> tuple:
    """Conway polynomial if tabulated, else the lexicographically first
    monic irreducible polynomial of degree ``r`` over F_p."""
    if (p, r) in _CONWAY:
        return _CONWAY[(p, r)]
    for tail in itertools.product(range(p), repeat=r):
        f = tuple(reversed(tail)) + (1,)
        if f[0] != 0 and is_irreducible_mod_p(f, p):
            return f
    raise ValueError(f"no irreducible polynomial of degree {r} mod {p}")


@dataclass(frozen=True)
class WittRingSpec:
    p: int
    r: int = 1
    n: int = 1
    modulus: tuple = field(default=None)

    def __post_init__(self):
        if not _is_prime(self.p) or self.p == 2:
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.r < 1 or self.n < 0:
            raise ValueError("need r >= 1 and n >= 0")
        mod = self.modulus
        if mod is None:
            mod = conway_polynomial(self.p, self.r)
        mod = tuple(int(c) for c in mod)
        if len(mod) != self.r + 1 or mod[-1] % self.p != 1:
            raise ValueError("modulus must be monic of degree r")
        if not is_irreducible_mod_p(mod, self.p):
            raise ValueError(f"modulus {mod} is reducible mod {self.p}")
        object.__setattr__(self, "modulus", mod)

    @property
    def q(self) -> int:
        return self.p ** self.r

    @property
    def pn(self) -> int:
        return self.p ** self.n

    def with_precision(self, n: int) -> "WittRingSpec":
        return WittRingSpec(self.p, self.r, n, self.modulus)

    # -- raw coefficient arithmetic -------------------------------------
    def _reduce(self, coeffs) -> tuple:
        pn, r, f = self.pn, self.r, self.modulus
        a = [c % pn for c in coeffs]
        for k in range(len(a) - 1, r - 1, -1):
            c = a[k]
            if c:
                for i in range(r):
                    a[k - r + i] = (a[k - r + i] - c * f[i]) % pn
            a[k] = 0
        a = a[:r] + [0] * (r - len(a))
        return tuple(a)

    def _mul(self, a, b) -> tuple:
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return self._reduce(prod)

    def _pow(self, a, e) -> tuple:
        result = self._reduce([1])
        base = a
        while e:
            if e & 1:
                result = self._mul(result, base)
            base = self._mul(base, base)
            e >>= 1
        return result

    # -- constructors ----------------------------------------------------
    def element(self, value) -> "WittScalar":
        """Build a scalar from an int or a coefficient sequence."""
        if isinstance(value, WittScalar):
            if value.ring != self:
                raise RingMismatch(f"{value.ring} vs {self}")
            return value
        if isinstance(value, (int, np.integer)):
            return WittScalar(self, self._reduce([int(value)]))
        return WittScalar(self, self._reduce([int(c) for c in value]))

    def zero(self) -> "WittScalar":
        return self.element(0)

    def one(self) -> "WittScalar":
        return self.element(1)

    def gen(self) -> "WittScalar":
        """The class of ``x``."""
        return self.element([0, 1] if self.r > 1 else [-self.modulus[0]])

    def residue_lift(self, a: int) -> "WittScalar":
        """Naive lift of a residue-field element (digits as coefficients)."""
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not a residue of F_{self.q}")
        coeffs = [(a // self.p ** i) % self.p for i in range(self.r)]
        return WittScalar(self, self._reduce(coeffs))

    def elements(self):
        """Every element (only sensible for tiny rings)."""
        for coeffs in itertools.product(range(self.pn), repeat=self.r):
            yield WittScalar(self, tuple(reversed(coeffs)))

    def random(self, rng) -> "WittScalar":
        return WittScalar(self, tuple(int(x) for x in rng.integers(0, self.pn, self.r)))

    @cached_property
    def sigma_matrix(self) -> np.ndarray:
        """Matrix of Frobenius on the Z/p^n-basis ``1, x, ..., x^(r-1)``.

        Column ``i`` holds ``sigma(x^i)``; Frobenius is Z_p-linear.
        """
        mat = np.zeros((self.r, self.r), dtype=np.int64)
        x = self.element([0, 1]) if self.r > 1 else self.one()
        power = self.one()
        for i in range(self.r):
            mat[:, i] = frobenius(power).rep
            power = power * x
        return mat

    def to_dict(self) -> dict:
        return {"p": self.p, "r": self.r, "n": self.n, "modulus": list(self.modulus)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "WittRingSpec":
        return cls(data["p"], data["r"], data["n"], tuple(data["modulus"]))

    def __repr__(self):
        return f"W_{self.n}(F_{self.q})"


@dataclass(frozen=True)
class WittScalar:
    ring: WittRingSpec
    rep: tuple

    def _same(self, other) -> "WittScalar":
        if isinstance(other, (int, np.integer)):
            return self.ring.element(other)
        if not isinstance(other, WittScalar):
            return NotImplemented
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return WittScalar(self.ring, self.ring._reduce([a + b for a, b in zip(self.rep, other.rep)]))

    __radd__ = __add__

    def __neg__(self):
        return WittScalar(self.ring, self.ring._reduce([-a for a in self.rep]))

    def __sub__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return WittScalar(self.ring, self.ring._mul(self.rep, other.rep))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return WittScalar(self.ring, self.ring._pow(self.rep, e))

    def is_zero(self) -> bool:
        return not any(self.rep)

    def valuation(self) -> int:
        """p-adic valuation; raises if the element is zero at this precision."""
        if self.is_zero():
            raise PrecisionExhausted(f"valuation of 0 undetermined in {self.ring}")
        p = self.ring.p
        best = self.ring.n
        for c in self.rep:
            if c:
                v = 0
                while c % p == 0:
                    c //= p
                    v += 1
                best = min(best, v)
        return best

    def is_unit(self) -> bool:
        return any(c % self.ring.p for c in self.rep)

    def residue(self) -> int:
        p = self.ring.p
        return sum((c % p) * p ** i for i, c in enumerate(self.rep))

    def inverse(self) -> "WittScalar":
        if not self.is_unit():
            raise NotAUnit(f"{self} is not a unit")
        ring = self.ring
        if ring.n == 0:
            return self
        res = ring.with_precision(1)
        a1 = res.element(self.rep)
        y = WittScalar(ring, ring._reduce(list((a1 ** (ring.q - 2)).rep)))
        two = ring.element(2)
        prec = 1
        while prec < ring.n:
            y = y * (two - self * y)
            prec *= 2
        return y

    def digits(self) -> list[int]:
        """Teichmuller digits ``x = sum [x_i] p^i``, little-endian."""
        ring = self.ring
        p = ring.p
        out = []
        cur = list(self.rep)
        for i in range(ring.n):
            d = sum((c % p) * p ** k for k, c in enumerate(cur))
            out.append(d)
            t = teichmuller(ring, d).rep
            cur = [((a - b) % ring.pn) // p for a, b in zip(cur, t)]
        return out

    @classmethod
    def from_digits(cls, ring: WittRingSpec, digits) -> "WittScalar":
        total = ring.zero()
        scale = ring.one()
        for d in digits:
            total = total + teichmuller(ring, d) * scale
            scale = scale * ring.p
        return total

    def __int__(self):
        if self.ring.r != 1:
            raise TypeError("only W_n(F_p) scalars convert to int")
        return self.rep[0]

    def __repr__(self):
        if self.ring.r == 1:
            return f"{self.rep[0]} in {self.ring!r}"
        return f"{list(self.rep)} in {self.ring!r}"


def arith(op: str, x: WittScalar, y: WittScalar | None = None) -> WittScalar:
    """Dispatch ``add``, ``sub``, ``mul`` or ``inv`` (``y`` ignored)."""
    if op == "inv":
        return x.inverse()
    y = x._same(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown op {op!r}")


_TEICH_CACHE: dict = {}


def teichmuller(ring: WittRingSpec, a: int) -> WittScalar:
    """Teichmuller lift of a residue, by iterating ``y -> y^q`` to a fixpoint."""
    key = (ring, a)
    hit = _TEICH_CACHE.get(key)
    if hit is not None:
        return hit
    y = ring.residue_lift(a).rep
    for _ in range(ring.n + 1):
        nxt = ring._pow(y, ring.q)
        if nxt == y:
            break
        y = nxt
    else:
        raise PrecisionExhausted("Teichmuller iteration did not stabilise")
    out = WittScalar(ring, y)
    _TEICH_CACHE[key] = out
    return out


def residue_pow(ring: WittRingSpec, a: int, e: int) -> int:
    """``a^e`` in the residue field, in the int encoding."""
    res = ring.with_precision(1)
    coeffs = res._pow(res.residue_lift(a).rep, e)
    return sum(c * ring.p ** i for i, c in enumerate(coeffs))


def frobenius(x: WittScalar) -> WittScalar:
    """Frobenius via Teichmuller digits: ``sum [x_i] p^i -> sum [x_i^p] p^i``."""
    ring = x.ring
    digits = x.digits()
    return WittScalar.from_digits(ring, [residue_pow(ring, d, ring.p) for d in digits])
