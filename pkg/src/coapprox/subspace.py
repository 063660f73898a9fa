"""Component tables, the *-Property, and subspace classification.

A basis of m diagonal n x n matrices is viewed column-wise as an n x m
matrix; its rows are the *components*. Components equal up to sign form a
class. A class satisfies the *-Property when some coefficient vector makes
its component strictly dominate, in absolute value, every component outside
the class.

Indices are 0-based throughout the library; reports shift them to 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DependentBasis, DimensionMismatch, InternalInvariantViolated, ZeroClass
from .linalg import nullspace, parse_rational, rank, solve_lp

Row = tuple[Fraction, ...]


def _dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


@dataclass(frozen=True)
class DiagonalMatrix:
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) < 1:
            raise DimensionMismatch("a diagonal matrix needs at least one entry")
        object.__setattr__(self, "entries", tuple(parse_rational(v) for v in self.entries))

    @property
    def n(self) -> int:
        return len(self.entries)

    def dense(self) -> np.ndarray:
        out = np.empty((self.n, self.n), dtype=object)
        out[:] = Fraction(0)
        for i, v in enumerate(self.entries):
            out[i, i] = v
        return out


@dataclass(frozen=True)
class Basis:
    """Linearly independent diagonal matrices spanning the subspace."""

    matrices: tuple[DiagonalMatrix, ...]

    def __post_init__(self):
        mats = tuple(m if isinstance(m, DiagonalMatrix) else DiagonalMatrix(tuple(m))
                     for m in self.matrices)
        object.__setattr__(self, "matrices", mats)
        if not mats:
            raise DependentBasis("basis is empty")
        if len({m.n for m in mats}) != 1:
            raise DimensionMismatch("basis matrices have different sizes")
        if len(mats) > mats[0].n:
            raise DependentBasis(f"dependent basis: {len(mats)} matrices in dimension {mats[0].n}")
        if rank([m.entries for m in mats]) < len(mats):
            raise DependentBasis("dependent basis")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Basis":
        return cls(tuple(DiagonalMatrix(tuple(r)) for r in rows))

    @classmethod
    def standard(cls, n: int) -> "Basis":
        return cls.from_rows([[1 if i == k else 0 for i in range(n)] for k in range(n)])

    @property
    def n(self) -> int:
        return self.matrices[0].n

    @property
    def m(self) -> int:
        return len(self.matrices)

    def components(self) -> list[Row]:
        return [tuple(A.entries[i] for A in self.matrices) for i in range(self.n)]

    def combine(self, coeffs) -> tuple:
        """Diagonal of ``sum_k coeffs[k] * A_k``."""
        return tuple(sum((c * A.entries[i] for c, A in zip(coeffs, self.matrices)),
                         Fraction(0) if all(isinstance(c, Fraction) for c in coeffs) else 0.0)
                     for i in range(self.n))

    def dense_matrices(self) -> list[np.ndarray]:
        return [A.dense() for A in self.matrices]


@dataclass(frozen=True)
class EquivClass:
    representative: int
    p_plus: frozenset[int]
    p_minus: frozenset[int]
    is_zero: bool = False

    @property
    def members(self) -> list[int]:
        return sorted(self.p_plus | self.p_minus)

    @property
    def size(self) -> int:
        return len(self.p_plus | self.p_minus)


@dataclass(frozen=True)
class ComponentTable:
    a_tilde: tuple[Row, ...]
    classes: tuple[EquivClass, ...]
    class_of: dict = field(hash=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.a_tilde)

    @property
    def m(self) -> int:
        return len(self.a_tilde[0])

    def rep_row(self, class_id: int) -> Row:
        return self.a_tilde[self.classes[class_id].representative]


def build_component_table(basis: Basis) -> ComponentTable:
    rows = basis.components()
    if rank(rows) < basis.m:
        raise DependentBasis("dependent basis")
    zero = tuple(Fraction(0) for _ in range(basis.m))
    classes: list[EquivClass] = []
    class_of: dict[int, tuple[int, int]] = {}
    lookup: dict[Row, tuple[int, int]] = {}
    members: list[tuple[list[int], list[int]]] = []
    for i, row in enumerate(rows):
        if row in lookup:
            cid, sign = lookup[row]
        else:
            cid, sign = len(members), 1
            members.append(([], []))
            lookup[row] = (cid, 1)
            if row != zero:
                lookup[tuple(-v for v in row)] = (cid, -1)
        members[cid][0 if sign > 0 else 1].append(i)
        class_of[i] = (cid, sign)
    for plus, minus in members:
        rep = plus[0]
        classes.append(EquivClass(rep, frozenset(plus), frozenset(minus),
                                  is_zero=rows[rep] == zero))
    return ComponentTable(tuple(rows), tuple(classes), class_of)


def _other_reps(table: ComponentTable, class_id: int) -> list[Row]:
    return [table.rep_row(c) for c in range(len(table.classes)) if c != class_id]


def star_property_witness(table: ComponentTable, class_id: int):
    """Decide the *-Property for one class with an exact LP.

    Maximizes ``t`` subject to ``<b, a_i - a_j> >= t`` and ``<b, a_i + a_j> >= t``
    for every other class representative ``a_j``, ``<b, a_i> >= t`` and
    ``-1 <= b_k <= 1``. The class satisfies the property iff the optimum is
    strictly positive. Returns ``(beta, t)`` or ``None``.
    """
    cls = table.classes[class_id]
    if cls.is_zero:
        raise ZeroClass(f"class of component {cls.representative + 1} is the zero class")
    ai = table.rep_row(class_id)
    m = table.m
    cons = []
    for aj in _other_reps(table, class_id):
        for sign in (-1, 1):
            cons.append(([-(x + sign * y) for x, y in zip(ai, aj)] + [Fraction(1)], "<=", 0))
    cons.append(([-x for x in ai] + [Fraction(1)], "<=", 0))
    for k in range(m):
        e = [Fraction(0)] * (m + 1)
        e[k] = Fraction(1)
        cons.append((e, "<=", 1))
        cons.append((e, ">=", -1))
    objective = [Fraction(0)] * m + [Fraction(1)]
    # (beta, t) = (0, 0) is feasible, so t may be taken nonnegative
    res = solve_lp(objective, cons, mode="rational", nonneg=[m])
    if not res.optimal:
        raise InternalInvariantViolated(f"*-Property LP returned {res.status.value}")
    t = res.objective
    if t > 0:
        return tuple(res.point[:m]), t
    return None


def star_fast_path(table: ComponentTable, class_id: int):
    """Span test: a vector orthogonal to all other representatives but not to ours.

    Returns a witness normalized to max-abs 1 with ``<beta, a_i> > 0``, or
    ``None`` when the representative lies in the span of the others.
    """
    cls = table.classes[class_id]
    if cls.is_zero:
        return None
    ai = table.rep_row(class_id)
    others = [r for r in _other_reps(table, class_id) if any(r)]
    null = nullspace(others, table.m) if others else \
        [[Fraction(int(k == j)) for k in range(table.m)] for j in range(table.m)]
    for v in null:
        s = _dot(v, ai)
        if s != 0:
            scale = max(abs(x) for x in v)
            if s < 0:
                scale = -scale
            return tuple(x / scale for x in v)
    return None


def witness_margin(table: ComponentTable, class_id: int, beta) -> Fraction:
    """Smallest slack of the *-Property inequalities at ``beta`` (exact)."""
    ai = table.rep_row(class_id)
    vi = _dot(beta, ai)
    slack = vi
    for aj in _other_reps(table, class_id):
        vj = _dot(beta, aj)
        slack = min(slack, vi - vj, vi + vj)
    return slack


@dataclass(frozen=True)
class StarWitness:
    class_id: int
    beta: tuple[Fraction, ...]
    margin: Fraction
    method: str


@dataclass(frozen=True)
class StarReport:
    satisfying: tuple[StarWitness, ...]
    non_satisfying: tuple[int, ...]
    p: int
    m: int
    zero_class: int | None = None

    def witness(self, class_id: int) -> StarWitness | None:
        return next((w for w in self.satisfying if w.class_id == class_id), None)

    @property
    def satisfying_ids(self) -> tuple[int, ...]:
        return tuple(w.class_id for w in self.satisfying)


def star_report(table: ComponentTable, use_fast_path: bool = True) -> StarReport:
    satisfying, non_sat = [], []
    zero_class = None
    for cid, cls in enumerate(table.classes):
        if cls.is_zero:
            zero_class = cid
            non_sat.append(cid)
            continue
        beta = star_fast_path(table, cid) if use_fast_path else None
        if beta is not None:
            satisfying.append(StarWitness(cid, beta, witness_margin(table, cid, beta), "span"))
            continue
        found = star_property_witness(table, cid)
        if found is None:
            non_sat.append(cid)
        else:
            satisfying.append(StarWitness(cid, found[0], found[1], "lp"))
    p, m = len(satisfying), table.m
    if p < 1 or p < m:
        raise InternalInvariantViolated(f"found p={p} satisfying classes with m={m}")
    return StarReport(tuple(satisfying), tuple(non_sat), p, m, zero_class)


@dataclass(frozen=True)
class Classification:
    coproximinal: bool
    co_chebyshev: bool
    p: int
    m: int
    singleton_classes: bool


def classify_subspace(report: StarReport, table: ComponentTable) -> Classification:
    singletons = all(table.classes[w.class_id].size == 1 for w in report.satisfying)
    coprox = report.p == report.m
    return Classification(coprox, coprox and singletons, report.p, report.m, singletons)
