"""Newton polygons of isocrystals as multisets of coprime slope pairs.

A simple summand of slope ``m/(m+n)`` is stored as the pair ``(m, n)``; the
etale slope 0 is ``(0, 1)`` and the multiplicative slope 1 is ``(1, 0)``.
Multiplicities are expressed by repeating summands.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, Sequence

from .errors import Empty, Malformed, NonCoprime, NotSymmetric

__all__ = [
    "SimpleSummand",
    "NewtonPolygon",
    "parse_newton",
    "dual",
    "is_symmetric",
    "decompose_parts",
    "split_polarized",
    "m_invariant",
    "m_invariant_symmetric",
    "enumerate_symmetric",
]


@dataclass(frozen=True, order=False)
class SimpleSummand:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise Malformed(f"negative entry in summand ({self.m},{self.n})")
        if (self.m, self.n) == (0, 0):
            raise Malformed("summand (0,0) has height 0")
        if gcd(self.m, self.n) != 1:
            raise NonCoprime(f"({self.m},{self.n}) is not a coprime pair")

    def height(self) -> int:
        return self.m + self.n

    def slope(self) -> Fraction:
        return Fraction(self.m, self.m + self.n)

    def dual(self) -> "SimpleSummand":
        return SimpleSummand(self.n, self.m)

    def sort_key(self):
        return (self.slope(), self.m)

    def __iter__(self):
        yield self.m
        yield self.n

    def __repr__(self):
        return f"({self.m},{self.n})"


def _as_summand(x) -> SimpleSummand:
    if isinstance(x, SimpleSummand):
        return x
    m, n = x
    return SimpleSummand(int(m), int(n))


@dataclass(frozen=True)
class NewtonPolygon:
    """Ordered tuple of simple summands, ascending by ``(slope, m)``.

    Construction accepts any iterable of summands or ``(m, n)`` pairs and
    sorts it, so two polygons compare equal iff they have the same slope
    multiset.
    """

    summands: tuple = ()

    def __post_init__(self):
        parts = tuple(sorted((_as_summand(s) for s in self.summands),
                             key=SimpleSummand.sort_key))
        object.__setattr__(self, "summands", parts)

    def __len__(self):
        return len(self.summands)

    def __iter__(self) -> Iterator[SimpleSummand]:
        return iter(self.summands)

    def __getitem__(self, i):
        return self.summands[i]

    def __add__(self, other: "NewtonPolygon") -> "NewtonPolygon":
        return NewtonPolygon(self.summands + NewtonPolygon(other).summands)

    def height(self) -> int:
        return sum(s.height() for s in self.summands)

    @property
    def h(self) -> int:
        """Half the height (the ``h`` of GSp_2h)."""
        return self.height() // 2

    def slopes(self) -> list[Fraction]:
        """All ``height()`` slopes with multiplicity, ascending."""
        out = []
        for s in self.summands:
            out.extend([s.slope()] * s.height())
        return out

    def to_text(self) -> str:
        return ",".join(f"{s.m}:{s.n}" for s in self.summands)

    def to_dict(self) -> dict:
        return {"summands": [[s.m, s.n] for s in self.summands]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "NewtonPolygon":
        return cls(tuple(tuple(x) for x in data["summands"]))

    @classmethod
    def from_json(cls, text: str) -> "NewtonPolygon":
        return cls.from_dict(json.loads(text))

    def __repr__(self):
        return "NP[" + ",".join(repr(s) for s in self.summands) + "]"


def parse_newton(text: str) -> NewtonPolygon:
    """Parse ``"m:n,m:n,..."`` into a sorted polygon.

    >>> parse_newton("2:1,1:2")
    NP[(1,2),(2,1)]
    """
    text = text.strip()
    if not text:
        raise Empty("empty Newton polygon")
    parts = []
    for token in text.split(","):
        token = token.strip()
        pieces = token.split(":")
        if len(pieces) != 2:
            raise Malformed(f"malformed token {token!r}; expected 'm:n'")
        try:
            m, n = (int(x) for x in pieces)
        except ValueError:
            raise Malformed(f"malformed token {token!r}; expected integers") from None
        parts.append(SimpleSummand(m, n))
    return NewtonPolygon(tuple(parts))


def dual(np_: NewtonPolygon) -> NewtonPolygon:
    return NewtonPolygon(tuple(s.dual() for s in np_))


def is_symmetric(np_: NewtonPolygon) -> bool:
    return dual(np_) == np_


def require_symmetric(np_: NewtonPolygon) -> None:
    if not is_symmetric(np_):
        raise NotSymmetric(f"{np_!r} is not symmetric")


def decompose_parts(np_: NewtonPolygon) -> tuple[int, int, int]:
    """Heights of the etale, bi-infinitesimal and multiplicative parts."""
    et = sum(s.height() for s in np_ if s.m == 0)
    mult = sum(s.height() for s in np_ if s.n == 0)
    return et, np_.height() - et - mult, mult


def split_polarized(np_: NewtonPolygon) -> tuple[NewtonPolygon, bool, NewtonPolygon]:
    """Split a symmetric polygon as ``N0 (+) N_1/2 (+) N1``.

    Supersingular summands are shared evenly between ``N0`` and ``N1``; an
    odd one out becomes the middle part.
    """
    require_symmetric(np_)
    low = [s for s in np_ if s.slope() < Fraction(1, 2)]
    ss = sum(1 for s in np_ if s.m == s.n)
    n0 = NewtonPolygon(tuple(low) + ((1, 1),) * (ss // 2))
    return n0, ss % 2 == 1, dual(n0)


def m_invariant(np_: NewtonPolygon) -> int:
    """``floor(sum_j min(m_j, n_j) / 2)``."""
    return sum(min(s.m, s.n) for s in np_) // 2


def m_invariant_symmetric(np_: NewtonPolygon) -> int:
    """Same invariant via the formula valid for symmetric polygons only:
    ``floor(sum_{m_j<n_j} m_j + #{j : m_j = n_j = 1}/2)``."""
    require_symmetric(np_)
    twice = 2 * sum(s.m for s in np_ if s.m < s.n)
    twice += sum(1 for s in np_ if s.m == s.n == 1)
    return twice // 2


def _low_types(max_height: int) -> list[SimpleSummand]:
    """Coprime pairs with ``m < n`` (slope below 1/2), up to given height."""
    out = []
    for ht in range(1, max_height + 1):
        for m in range(0, (ht + 1) // 2):
            n = ht - m
            if m < n and gcd(m, n) == 1:
                out.append(SimpleSummand(m, n))
    return out


def _multisets(types: Sequence[SimpleSummand], target: int, start: int = 0):
    if target == 0:
        yield ()
        return
    for i in range(start, len(types)):
        t = types[i]
        if t.height() > target:
            continue
        for rest in _multisets(types, target - t.height(), i):
            yield (t,) + rest


def enumerate_symmetric(h: int) -> list[NewtonPolygon]:
    """Every symmetric Newton polygon of height ``2h``, each once.

    The output is sorted by the tuple of ``(m, n)`` pairs.
    """
    if h < 1:
        raise ValueError("h must be positive")
    types = _low_types(h)
    out = []
    for ss in range(h + 1):
        for low in _multisets(types, h - ss):
            half = NewtonPolygon(low)
            out.append(half + NewtonPolygon(((1, 1),) * ss) + dual(half))
    out.sort(key=lambda x: tuple((s.m, s.n) for s in x))
    return out
