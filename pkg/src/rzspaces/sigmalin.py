"""Systems of additive polynomial equations and their triangularization.

An additive polynomial over ``F_q`` is ``x -> sum_l c_l x^(p^l)``. A system
``sum_j P_ij(x_j) = a_i`` is admissible when the linear coefficient of
``P_ij`` vanishes below the diagonal and is a unit on it. ``triangularize``
clears everything below the diagonal using only invertible row operations
and Frobenius twists of rows, so the solution set over every extension of
``F_q`` is unchanged.

Field elements are ints: the coefficient vector of ``sum c_i x^i`` read in
base ``p``. Arithmetic goes through full tables, which is fine for the field
sizes a brute-force oracle can handle anyway.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BudgetExceeded, DegreeCapExceeded, PreconditionViolated
from .wittring import WittRingSpec

__all__ = [
    "FiniteField", "finite_field", "AdditivePoly", "SigmaSystem", "triangularize",
    "brute_solutions", "random_system", "is_triangular", "check_additive",
    "DEFAULT_DEGREE_CAP", "BRUTE_BUDGET",
]

DEFAULT_DEGREE_CAP = 8
BRUTE_BUDGET = 2 * 10 ** 6


class FiniteField:
    """``F_{p^r}`` with addition, multiplication and Frobenius tables."""

    def __init__(self, p: int, r: int, modulus=None):
        spec = WittRingSpec(p, r, 1, modulus)
        self.p, self.r, self.modulus = p, r, spec.modulus
        self.q = p ** r
        q = self.q
        digits = np.array([[(a // p ** i) % p for i in range(r)] for a in range(q)], np.int64)
        weights = p ** np.arange(r, dtype=np.int64)
        self.add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        self.neg = ((-digits) % p) @ weights
        mul = np.zeros((q, q), np.int64)
        for a in range(q):
            for b in range(a, q):
                c = spec._mul(tuple(digits[a]), tuple(digits[b]))
                v = int(sum(int(x) * p ** i for i, x in enumerate(c)))
                mul[a, b] = mul[b, a] = v
        self.mul = mul
        self.inv = np.zeros(q, np.int64)
        for a in range(1, q):
            self.inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        self.frob = np.array([self.power(a, p) for a in range(q)], np.int64)

    def power(self, a: int, e: int) -> int:
        result, base = 1, int(a)
        while e:
            if e & 1:
                result = int(self.mul[result, base])
            base = int(self.mul[base, base])
            e >>= 1
        return result

    def frob_pow(self, a: int, k: int) -> int:
        for _ in range(k % self.r if self.r else 0):
            a = int(self.frob[a])
        return a

    def sub(self, a: int, b: int) -> int:
        return int(self.add[a, self.neg[b]])

    def embedding(self, big: "FiniteField") -> np.ndarray:
        """Table of a field embedding of ``self`` into ``big``."""
        if big.p != self.p or big.r % self.r:
            raise ValueError(f"F_{self.q} does not embed into F_{big.q}")
        f = self.modulus
        for alpha in range(big.q):
            acc, pw = 0, 1
            for c in f:
                acc = int(big.add[acc, big.mul[c % big.p, pw]])
                pw = int(big.mul[pw, alpha])
            if acc == 0:
                break
        else:  # pragma: no cover
            raise AssertionError("no root of the modulus in the extension")
        table = np.zeros(self.q, np.int64)
        for a in range(self.q):
            acc, pw = 0, 1
            for i in range(self.r):
                c = (a // self.p ** i) % self.p
                acc = int(big.add[acc, big.mul[c, pw]])
                pw = int(big.mul[pw, alpha])
            table[a] = acc
        return table

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.r, self.modulus) == \
            (other.p, other.r, other.modulus)

    def __hash__(self):
        return hash((self.p, self.r, self.modulus))

    def __repr__(self):
        return f"F_{self.q}"


@lru_cache(maxsize=None)
def finite_field(p: int, r: int, modulus=None) -> FiniteField:
    return FiniteField(p, r, modulus)


@dataclass(frozen=True)
class AdditivePoly:
    """``sum_l coeffs[l] x^(p^l)``; trailing zero coefficients are dropped."""

    coeffs: tuple

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        """Largest Frobenius exponent present; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def linear(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def lead(self) -> int:
        return self.coeffs[-1]

    def twist(self, k: int, F: FiniteField, scale: int = 1) -> "AdditivePoly":
        """``scale * sigma^k(P)``: coefficients raised to ``p^k``, shifted by ``k``."""
        out = [0] * k + [int(F.mul[scale, F.frob_pow(c, k)]) for c in self.coeffs]
        return AdditivePoly(tuple(out))

    def minus(self, other: "AdditivePoly", F: FiniteField) -> "AdditivePoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return AdditivePoly(tuple(F.sub(x, y) for x, y in zip(a, b)))

    def value_table(self, F: FiniteField, big: FiniteField, emb: np.ndarray) -> np.ndarray:
        """``P(x)`` for every ``x`` of ``big`` (coefficients embedded via ``emb``)."""
        xs = np.arange(big.q, dtype=np.int64)
        out = np.zeros(big.q, np.int64)
        cur = xs.copy()
        for c in self.coeffs:
            if c:
                out = big.add[out, big.mul[emb[c], cur]]
            cur = big.frob[cur]
        return out

    def evaluate(self, x: int, F: FiniteField) -> int:
        acc = 0
        for c in self.coeffs:
            acc = int(F.add[acc, F.mul[c, x]])
            x = int(F.frob[x])
        return acc

    def __repr__(self):
        terms = [f"{c}*x^(p^{l})" for l, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


@dataclass(frozen=True)
class SigmaSystem:
    field: FiniteField
    rows: tuple  # rows[i][j]: AdditivePoly
    rhs: tuple

    def __post_init__(self):
        rows = tuple(tuple(P if isinstance(P, AdditivePoly) else AdditivePoly(tuple(P))
                           for P in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "rhs", tuple(int(a) for a in self.rhs))
        if len(rows) != len(self.rhs):
            raise ValueError("one right-hand side per equation")
        widths = {len(row) for row in rows}
        if len(widths) > 1:
            raise ValueError("ragged coefficient table")

    @property
    def n_eq(self) -> int:
        return len(self.rows)

    @property
    def n_var(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def check_preconditions(self):
        F = self.field
        if self.n_eq > self.n_var:
            raise PreconditionViolated("more equations than unknowns")
        for i, row in enumerate(self.rows):
            for j in range(i):
                if row[j].linear() != 0:
                    raise PreconditionViolated(f"linear term of P[{i}][{j}] below the diagonal")
            if row[i].linear() == 0:
                raise PreconditionViolated(f"linear term of P[{i}][{i}] is not a unit")
            for P in row:
                if any(not 0 <= c < F.q for c in P.coeffs):
                    raise PreconditionViolated("coefficient outside the field")

    def to_dict(self) -> dict:
        return {"p": self.field.p, "r": self.field.r, "modulus": list(self.field.modulus),
                "rows": [[list(P.coeffs) for P in row] for row in self.rows],
                "rhs": list(self.rhs)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "SigmaSystem":
        mod = tuple(data["modulus"]) if data.get("modulus") else None
        F = finite_field(int(data["p"]), int(data.get("r", 1)), mod)
        rows = tuple(tuple(AdditivePoly(tuple(c)) for c in row) for row in data["rows"])
        return cls(F, rows, tuple(data["rhs"]))

    @classmethod
    def from_json(cls, text: str) -> "SigmaSystem":
        return cls.from_dict(json.loads(text))


def is_triangular(sys: SigmaSystem) -> bool:
    return all(sys.rows[i][j].is_zero() for i in range(sys.n_eq) for j in range(i)) and \
        all(sys.rows[i][i].linear() != 0 for i in range(sys.n_eq))


def _twist_row(row, rhs, k, c, F):
    return [P.twist(k, F, c) for P in row], int(F.mul[c, F.frob_pow(rhs, k)])


def _sub_row(row, rhs, other, orhs, F):
    return [P.minus(Q, F) for P, Q in zip(row, other)], F.sub(rhs, orhs)


def triangularize(sys: SigmaSystem, degree_cap: int = DEFAULT_DEGREE_CAP) -> SigmaSystem:
    """Clear ``P_ij`` for ``j < i``.

    For each pivot column ``j`` and lower row ``i``, the row whose entry in
    column ``j`` has the larger Frobenius degree is reduced by a twist of the
    other one. When row ``i`` is reduced the twist exponent is at least 1;
    when row ``j`` is reduced (degree of row ``i`` at most that of row ``j``)
    the entry of row ``i`` has no linear term, so the pivot's linear
    coefficient survives in both cases.
    """
    sys.check_preconditions()
    F = sys.field
    rows = [list(r) for r in sys.rows]
    rhs = list(sys.rhs)
    for j in range(sys.n_eq):
        for i in range(j + 1, sys.n_eq):
            while not rows[i][j].is_zero():
                di, dj = rows[i][j].degree, rows[j][j].degree
                if di > dj:
                    k = di - dj
                    c = int(F.mul[rows[i][j].lead(), F.inv[F.frob_pow(rows[j][j].lead(), k)]])
                    tw, trhs = _twist_row(rows[j], rhs[j], k, c, F)
                    rows[i], rhs[i] = _sub_row(rows[i], rhs[i], tw, trhs, F)
                else:
                    k = dj - di
                    c = int(F.mul[rows[j][j].lead(), F.inv[F.frob_pow(rows[i][j].lead(), k)]])
                    tw, trhs = _twist_row(rows[i], rhs[i], k, c, F)
                    rows[j], rhs[j] = _sub_row(rows[j], rhs[j], tw, trhs, F)
                worst = max(P.degree for row in rows for P in row)
                if worst > degree_cap:
                    raise DegreeCapExceeded(f"Frobenius degree {worst} exceeds cap {degree_cap}")
    out = SigmaSystem(F, tuple(tuple(r) for r in rows), tuple(rhs))
    if not is_triangular(out):  # pragma: no cover
        raise AssertionError("elimination left a nonzero entry below the diagonal")
    return out


def brute_solutions(sys: SigmaSystem, s: int = 1, budget: int = BRUTE_BUDGET) -> set:
    """Every solution over ``F_{q^s}``, as tuples of ints of that field."""
    F = sys.field
    n = sys.n_var
    big = finite_field(F.p, F.r * s)
    size = big.q ** n
    if size > budget:
        raise BudgetExceeded(size, budget, f"points of F_{big.q}^{n}")
    emb = F.embedding(big) if s > 1 else np.arange(F.q, dtype=np.int64)
    if n == 0:
        ok = all(a == 0 for a in sys.rhs)
        return {()} if ok else set()
    mask = np.ones((big.q,) * n, dtype=bool)
    for row, a in zip(sys.rows, sys.rhs):
        total = np.zeros((big.q,) * n, np.int64)
        for j, P in enumerate(row):
            shape = [1] * n
            shape[j] = big.q
            total = big.add[total, P.value_table(F, big, emb).reshape(shape)]
        mask &= total == emb[a]
    return {tuple(int(x) for x in idx) for idx in np.argwhere(mask)}


def random_system(F: FiniteField, n_eq: int, n_var: int, max_degree: int, rng) -> SigmaSystem:
    """Random admissible system with Frobenius degrees at most ``max_degree``."""
    if n_eq > n_var:
        raise ValueError("need n_eq <= n_var")
    rows = []
    for i in range(n_eq):
        row = []
        for j in range(n_var):
            c = [int(x) for x in rng.integers(0, F.q, max_degree + 1)]
            if j < i:
                c[0] = 0
            elif j == i:
                c[0] = int(rng.integers(1, F.q))
            row.append(AdditivePoly(tuple(c)))
        rows.append(tuple(row))
    rhs = tuple(int(x) for x in rng.integers(0, F.q, n_eq))
    return SigmaSystem(F, tuple(rows), rhs)


def check_additive(P: AdditivePoly, F: FiniteField) -> bool:
    """Exhaustive check of ``P(x + y) = P(x) + P(y)`` over ``F``."""
    vals = P.value_table(F, F, np.arange(F.q, dtype=np.int64))
    return bool(np.array_equal(vals[F.add], F.add[vals[:, None], vals[None, :]]))
