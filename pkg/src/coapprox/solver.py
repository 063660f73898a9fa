"""Best coapproximations out of a subspace of diagonal matrices.

``sum_k alpha_k A_k`` is a best coapproximation to ``T`` exactly when, for
every class satisfying the *-Property, the representative component dotted
with ``alpha`` lies in the numerical range of the class's *-associated
matrix of ``T``. The solution set is therefore a polyhedron in alpha-space,
reported by its H-representation, coordinate and diagonal-entry bounding
boxes, and one sample point.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, NotOrthogonal, NotSimultaneouslyDiagonalized
from .linalg import Interval, LPStatus, as_rational_matrix, is_rational, parse_rational, solve_lp, to_float
from .numrange import real_numerical_range, star_associated_matrix
from .subspace import (
    Basis,
    Classification,
    ComponentTable,
    StarReport,
    build_component_table,
    classify_subspace,
    star_report,
)

TOL_W = 1e-9
TOL_UNIQUE = 1e-7
ORTHO_TOL = 1e-9
SNAP_DENOMINATOR = 10**6


@dataclass(frozen=True)
class ConstraintSystem:
    rows: tuple[tuple[Fraction, ...], ...]
    intervals: tuple[Interval, ...]
    class_ids: tuple[int, ...]

    @property
    def exact(self) -> bool:
        return all(iv.exact for iv in self.intervals)

    def residuals(self, alpha) -> list[float]:
        """Signed distance of each row value outside its interval (<= 0 inside)."""
        out = []
        for row, iv in zip(self.rows, self.intervals):
            v = sum(float(a) * float(x) for a, x in zip(row, alpha))
            out.append(max(float(iv.lo) - v, v - float(iv.hi)))
        return out


class SolutionKind(enum.Enum):
    EMPTY = "Empty"
    UNIQUE = "Unique"
    FAMILY = "Family"


@dataclass(frozen=True)
class SolutionSet:
    kind: SolutionKind
    point: tuple | None = None
    alpha_box: tuple[Interval, ...] = ()
    diag_ranges: tuple[Interval, ...] = ()
    exact: bool = False
    diagonal: tuple | None = None


@dataclass(frozen=True)
class CoapproxReport:
    table: ComponentTable
    star: StarReport
    classification: Classification
    system: ConstraintSystem | None = None
    solution: SolutionSet | None = None


def build_constraint_system(table: ComponentTable, report: StarReport, T) -> ConstraintSystem:
    T = np.asarray(T)
    if T.shape != (table.n, table.n):
        raise DimensionMismatch(f"target is {T.shape}, expected {(table.n, table.n)}")
    rows, intervals, ids = [], [], []
    for w in report.satisfying:
        cls = table.classes[w.class_id]
        sam = star_associated_matrix(T, cls, w.class_id)
        rows.append(table.rep_row(w.class_id))
        intervals.append(real_numerical_range(sam.matrix))
        ids.append(w.class_id)
    return ConstraintSystem(tuple(rows), tuple(intervals), tuple(ids))


def _membership_constraints(system: ConstraintSystem, exact: bool, tol_w: float):
    cons = []
    for row, iv in zip(system.rows, system.intervals):
        if exact:
            if iv.lo == iv.hi:
                cons.append((list(row), "=", iv.lo))
            else:
                cons.append((list(row), ">=", iv.lo))
                cons.append((list(row), "<=", iv.hi))
        else:
            lo, hi = iv.widened(tol_w).as_floats()
            frow = [float(v) for v in row]
            cons.append((frow, ">=", lo))
            cons.append((frow, "<=", hi))
    return cons


def _range(direction, cons, mode, exact):
    hi = solve_lp(direction, cons, mode=mode)
    lo = solve_lp([-v for v in direction], cons, mode=mode)
    inf = float("inf")
    hv = hi.objective if hi.status is LPStatus.OPTIMAL else inf
    lv = -lo.objective if lo.status is LPStatus.OPTIMAL else -inf
    if exact and hi.optimal and lo.optimal:
        return Interval(lv, hv, exact=True)
    return Interval(float(lv), float(hv), exact=False)


def solve_constraints(system: ConstraintSystem, components: Sequence | None = None,
                      tol_w: float = TOL_W, tol_unique: float = TOL_UNIQUE) -> SolutionSet:
    """Solve the membership system.

    ``components`` (the full n x m component matrix) turns on the
    per-diagonal-entry ranges. Rational intervals are handled exactly;
    float intervals are widened by ``tol_w`` and solved in float mode.
    """
    m = len(system.rows[0])
    exact = system.exact
    mode = "rational" if exact else "float"
    cons = _membership_constraints(system, exact, tol_w)
    zero = Fraction(0) if exact else 0.0
    feas = solve_lp([zero] * m, cons, mode=mode)
    if feas.status is LPStatus.INFEASIBLE:
        return SolutionSet(SolutionKind.EMPTY, exact=exact)

    box = []
    for k in range(m):
        e = [zero] * m
        e[k] = Fraction(1) if exact else 1.0
        box.append(_range(e, cons, mode, exact))

    diag = []
    if components is not None:
        cache: dict[tuple, Interval] = {}
        for row in components:
            key = tuple(row)
            neg = tuple(-v for v in row)
            if key in cache:
                diag.append(cache[key])
            elif neg in cache:
                diag.append(cache[neg].negated())
            else:
                direction = list(row) if exact else [float(v) for v in row]
                cache[key] = _range(direction, cons, mode, exact)
                diag.append(cache[key])

    if exact:
        unique = all(iv.width == 0 for iv in box)
    else:
        unique = all(iv.width <= tol_unique for iv in box)
    point = tuple(feas.point)
    if unique and exact:
        point = tuple(iv.lo for iv in box)
    diagonal = None
    if components is not None:
        diagonal = tuple(sum((a * x for a, x in zip(row, point)), zero) if exact else
                         float(sum(float(a) * x for a, x in zip(row, point)))
                         for row in components)
    kind = SolutionKind.UNIQUE if unique else SolutionKind.FAMILY
    return SolutionSet(kind, point, tuple(box), tuple(diag), exact, diagonal)


def _as_target(T):
    T = np.asarray(T)
    if T.dtype == object or T.dtype.kind in "iu":
        return as_rational_matrix(T.tolist())
    return T.astype(float)


def coapprox(basis: Basis, T=None, tol_w: float = TOL_W, tol_unique: float = TOL_UNIQUE,
             use_fast_path: bool = True) -> CoapproxReport:
    """Full pipeline. With ``T=None`` only the subspace is classified."""
    table = build_component_table(basis)
    report = star_report(table, use_fast_path=use_fast_path)
    cls = classify_subspace(report, table)
    if T is None:
        return CoapproxReport(table, report, cls)
    T = _as_target(T)
    system = build_constraint_system(table, report, T)
    solution = solve_constraints(system, table.a_tilde, tol_w=tol_w, tol_unique=tol_unique)
    return CoapproxReport(table, report, cls, system, solution)


def _snap_scalar(x: float, tol: float) -> Fraction:
    cand = Fraction(x).limit_denominator(SNAP_DENOMINATOR)
    return cand if abs(float(cand) - x) <= tol else Fraction(x)


def reduce_via_orthogonal(P, Q, A_list, T, tol: float = ORTHO_TOL):
    """Map ``A_i -> P^t A_i Q`` and ``T -> P^t T Q``.

    Each ``P^t A_i Q`` must be diagonal. The coefficients solving the
    reduced diagonal problem are the coefficients of the original ``A_i``.
    Float results within ``tol`` of a small-denominator rational are
    snapped to it so that component equivalence stays exact.
    """
    mats = [np.asarray(M) for M in (P, Q, T, *A_list)]
    exact = all(is_rational(M) or M.dtype.kind in "iu" for M in mats)
    n = mats[0].shape[0]
    if any(M.shape != (n, n) for M in mats):
        raise DimensionMismatch("P, Q, T and every A_i must be n x n")
    if exact:
        P, Q, T = (as_rational_matrix(M.tolist()) for M in mats[:3])
        As = [as_rational_matrix(M.tolist()) for M in mats[3:]]
        eye = np.diag([Fraction(1)] * n).astype(object)
        eye[eye == 0] = Fraction(0)
        for name, M in (("P", P), ("Q", Q)):
            if np.any(M.T.dot(M) != eye):
                raise NotOrthogonal(f"{name} is not orthogonal")
        D = [P.T.dot(A).dot(Q) for A in As]
        for i, Di in enumerate(D):
            if any(Di[r, c] != 0 for r in range(n) for c in range(n) if r != c):
                raise NotSimultaneouslyDiagonalized(f"P^t A_{i + 1} Q is not diagonal")
        basis = Basis.from_rows([[Di[r, r] for r in range(n)] for Di in D])
        return basis, P.T.dot(T).dot(Q)
    P, Q, T = (to_float(M) for M in mats[:3])
    As = [to_float(M) for M in mats[3:]]
    for name, M in (("P", P), ("Q", Q)):
        if np.abs(M.T @ M - np.eye(n)).max() > tol:
            raise NotOrthogonal(f"{name} is not orthogonal")
    rows = []
    for i, A in enumerate(As):
        Di = P.T @ A @ Q
        off = Di - np.diag(np.diag(Di))
        if np.abs(off).max(initial=0.0) > tol:
            raise NotSimultaneouslyDiagonalized(f"P^t A_{i + 1} Q is not diagonal")
        rows.append([_snap_scalar(float(v), tol) for v in np.diag(Di)])
    Tr = P.T @ T @ Q
    Tsnap = np.empty((n, n), dtype=object)
    for r in range(n):
        for c in range(n):
            Tsnap[r, c] = _snap_scalar(float(Tr[r, c]), tol)
    return Basis.from_rows(rows), Tsnap


def linf_coapprox(spanning: Sequence[Sequence], target: Sequence | None = None,
                  **kwargs) -> CoapproxReport:
    """Best coapproximation in l-infinity: vectors become diagonal matrices."""
    basis = Basis.from_rows(spanning)
    T = None
    if target is not None:
        if len(target) != basis.n:
            raise DimensionMismatch(f"target has length {len(target)}, expected {basis.n}")
        T = np.empty((basis.n, basis.n), dtype=object)
        T[:] = Fraction(0)
        for i, v in enumerate(target):
            T[i, i] = parse_rational(v)
    return coapprox(basis, T, **kwargs)
