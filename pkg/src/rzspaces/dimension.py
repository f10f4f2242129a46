"""Dimension of the reduced Rapoport-Zink space in its three equivalent forms.

* ``dim_polarized``: the slope-pair formula,
  ``1/2 (sum_j (m_j-1)(n_j-1)/2 + sum_{j<j'} m_j n_j' + m)``.
* ``dim_eq4``: ``<2 rho, mu - nu> + sum_i floor(<omega_i, nu - mu>)``.
* ``dim_eq5``: ``<rho, mu - nu> - defect/2``.

The defect is ``h - floor(l/2)``. The rounding-up variant disagrees with the
other two forms as soon as the supersingular multiplicity is odd, e.g. for
``NP[(1,2),(1,1),(2,1)]``; the rounding-down variant equals
``rk GSp_2h - rk J`` computed from the centraliser's explicit shape.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import ClosedFormMismatch, NotIntegral
from .newton import (NewtonPolygon, m_invariant, require_symmetric,
                     split_polarized)
from .rootdata import mu_minuscule, newton_vector, pair

__all__ = [
    "DimensionReport",
    "dim_polarized",
    "dim_nonpolarized",
    "defect",
    "dim_eq4",
    "dim_eq5",
    "level_free_count",
    "extension_dimension",
    "full_report",
]


def _pair_sums(np_: NewtonPolygon) -> Fraction:
    parts = list(np_)
    total = sum((Fraction((s.m - 1) * (s.n - 1), 2) for s in parts), Fraction(0))
    for j, s in enumerate(parts):
        for t in parts[j + 1:]:
            total += s.m * t.n
    return total


def dim_polarized(np_: NewtonPolygon) -> Fraction:
    require_symmetric(np_)
    if len(np_) == 0:
        raise ValueError("empty polygon")
    return (_pair_sums(np_) + m_invariant(np_)) / 2


def dim_nonpolarized(np_: NewtonPolygon) -> int:
    """Dimension of the unpolarized moduli space for ``np_`` (any polygon).

    The empty polygon gives 0, which is how the ``N0`` part of a polygon
    without low slopes enters ``full_report``.
    """
    value = _pair_sums(np_)
    if value.denominator != 1:
        raise NotIntegral(f"non-integral dimension {value} for {np_!r}")
    return int(value)


def defect(np_: NewtonPolygon) -> int:
    require_symmetric(np_)
    return np_.h - len(np_) // 2


def _mu_nu(np_: NewtonPolygon):
    require_symmetric(np_)
    return mu_minuscule(np_.h), newton_vector(np_)


def dim_eq4(np_: NewtonPolygon) -> Fraction:
    mu, nu = _mu_nu(np_)
    diff = nu - mu
    floors = sum(math.floor(pair(("omega", i), diff)) for i in range(1, np_.h + 1))
    return pair("two_rho", mu - nu) + floors


def dim_eq5(np_: NewtonPolygon, defect_fn: Callable[[NewtonPolygon], int] = defect) -> Fraction:
    """``<rho, mu - nu> - defect/2``; ``defect_fn`` is a mutation hook."""
    mu, nu = _mu_nu(np_)
    return pair("rho", mu - nu) - Fraction(defect_fn(np_), 2)


def level_free_count(i: int, m: int) -> int:
    """Freely liftable coordinates at level ``i`` of the extension count.

    Equals ``floor(i/2) + 1`` for ``i < m`` and ``floor(i/2) - i + m`` for
    ``m <= i < 2m``; zero from ``2m`` on.
    """
    if i < 0 or m < 0:
        raise ValueError("level and m must be nonnegative")
    return max(0, (i + 2) // 2 - max(0, i - m + 1))


def extension_dimension(m: int, odd_middle: bool) -> int:
    total = sum(level_free_count(i, m) for i in range(2 * m + 2))
    closed = m * (m + 1) // 2
    if total != closed:
        raise ClosedFormMismatch(f"level sum {total} != m(m+1)/2 = {closed} for m={m}")
    return total + (m if odd_middle else 0)


@dataclass(frozen=True)
class DimensionReport:
    dim_eq3: Fraction
    dim_eq4: Fraction
    dim_eq5: Fraction
    dim_nonpolarized_n0: int
    m: int
    defect: int
    agree: bool
    extension: int = 0

    def to_dict(self) -> dict:
        out = {}
        for key in ("dim_eq3", "dim_eq4", "dim_eq5"):
            v = getattr(self, key)
            out[key] = str(v)
            out[key + "_decimal"] = float(v)
        out.update(
            dim_nonpolarized_n0=self.dim_nonpolarized_n0,
            m=self.m,
            defect=self.defect,
            agree=self.agree,
            extension=self.extension,
        )
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "DimensionReport":
        return cls(
            dim_eq3=Fraction(data["dim_eq3"]),
            dim_eq4=Fraction(data["dim_eq4"]),
            dim_eq5=Fraction(data["dim_eq5"]),
            dim_nonpolarized_n0=int(data["dim_nonpolarized_n0"]),
            m=int(data["m"]),
            defect=int(data["defect"]),
            agree=bool(data["agree"]),
            extension=int(data.get("extension", 0)),
        )


def full_report(np_: NewtonPolygon) -> DimensionReport:
    require_symmetric(np_)
    d3, d4, d5 = dim_polarized(np_), dim_eq4(np_), dim_eq5(np_)
    m = m_invariant(np_)
    n0, middle, _ = split_polarized(np_)
    base = dim_nonpolarized(n0)
    ext = extension_dimension(m, middle)
    if d3 != base + ext:
        raise ClosedFormMismatch(
            f"{np_!r}: dim {d3} != dim N0 {base} + extension {ext}")
    agree = d3 == d4 == d5 and d3.denominator == 1 and d3 >= 0
    return DimensionReport(d3, d4, d5, base, m, defect(np_), agree, ext)
