"""Rational cocharacters of the diagonal torus of GSp_2h.

A coweight is stored as ``(a_1, ..., a_h; c)`` and stands for the diagonal
vector ``(a_1, ..., a_h, c - a_h, ..., c - a_1)``. Weight pairings are taken
against the centred entries ``a_k - c/2`` so that they vanish on the centre.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import IndexOutOfRange
from .newton import NewtonPolygon, require_symmetric

__all__ = ["Coweight", "newton_vector", "mu_minuscule", "pair", "pi1_image"]


def _frac(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


@dataclass(frozen=True)
class Coweight:
    a: tuple
    c: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(_frac(x) for x in self.a))
        object.__setattr__(self, "c", _frac(self.c))
        if len(self.a) < 1:
            raise ValueError("a coweight of GSp_2h needs h >= 1")

    @property
    def h(self) -> int:
        return len(self.a)

    def full_vector(self) -> tuple:
        return self.a + tuple(self.c - x for x in reversed(self.a))

    def is_dominant(self) -> bool:
        chain = self.a + (self.c / 2,)
        return all(chain[k] >= chain[k + 1] for k in range(self.h))

    def centred(self) -> tuple:
        half = self.c / 2
        return tuple(x - half for x in self.a)

    def _check(self, other: "Coweight"):
        if other.h != self.h:
            raise ValueError(f"rank mismatch: {self.h} vs {other.h}")

    def __sub__(self, other: "Coweight") -> "Coweight":
        self._check(other)
        return Coweight(tuple(x - y for x, y in zip(self.a, other.a)), self.c - other.c)

    def __add__(self, other: "Coweight") -> "Coweight":
        self._check(other)
        return Coweight(tuple(x + y for x, y in zip(self.a, other.a)), self.c + other.c)

    def __neg__(self) -> "Coweight":
        return Coweight(tuple(-x for x in self.a), -self.c)

    def to_dict(self) -> dict:
        return {"a": [str(x) for x in self.a], "c": str(self.c)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "Coweight":
        return cls(tuple(Fraction(x) for x in data["a"]), Fraction(data["c"]))

    @classmethod
    def from_json(cls, text: str) -> "Coweight":
        return cls.from_dict(json.loads(text))

    @classmethod
    def zero(cls, h: int) -> "Coweight":
        return cls((0,) * h, 0)


def newton_vector(np_: NewtonPolygon) -> Coweight:
    """Dominant Newton vector of a symmetric polygon (multiplier 1)."""
    require_symmetric(np_)
    slopes = sorted(np_.slopes(), reverse=True)
    return Coweight(tuple(slopes[: np_.h]), 1)


def mu_minuscule(h: int) -> Coweight:
    """The minuscule coweight ``(1, ..., 1; 1)`` with image 1 in pi_1."""
    if h < 1:
        raise ValueError("h must be positive")
    return Coweight((1,) * h, 1)


Weight = Union[str, tuple]


def _parse_weight(weight: Weight):
    if isinstance(weight, tuple):
        name, idx = weight
        return name, int(idx)
    if weight.startswith("omega_"):
        return "omega", int(weight[len("omega_"):])
    return weight, None


def pair(weight: Weight, x: Coweight) -> Fraction:
    """Pair ``rho``, ``two_rho`` or ``omega_i`` (``("omega", i)``) with ``x``.

    ``<2 rho, x> = sum_k (2(h-k)+2)(a_k - c/2)`` and
    ``<omega_i, x> = sum_{k<=i} (a_k - c/2)``.
    """
    name, idx = _parse_weight(weight)
    cx = x.centred()
    h = x.h
    if name == "two_rho":
        return sum((Fraction(2 * (h - k) + 2) * v for k, v in enumerate(cx, 1)), Fraction(0))
    if name == "rho":
        return pair("two_rho", x) / 2
    if name == "omega":
        if idx is None or not 1 <= idx <= h:
            raise IndexOutOfRange(f"omega_{idx} undefined for h={h}")
        return sum(cx[:idx], Fraction(0))
    raise ValueError(f"unknown weight {weight!r}")


def pi1_image(x: Coweight) -> Fraction:
    """Image in pi_1(GSp_2h) = Z: the multiplier exponent ``c``."""
    return x.c
