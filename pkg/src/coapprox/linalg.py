"""Exact and floating-point linear-algebra kernel.

Scalars in problem data are :class:`fractions.Fraction`. Matrices are numpy
arrays: ``dtype=object`` holding Fractions for exact data, ``float64``
otherwise. Nothing here keeps global state.

Contents:
    - parse_rational / as_rational_matrix: exact parsing of numeric input
    - solve_lp: dense two-phase simplex under Bland's rule. Rational mode
      pivots on an integer tableau (fraction-free, Bareiss-style), so every
      intermediate quantity is exact.
    - jacobi_eigh / symmetric_eigen_interval: cyclic Jacobi eigensolver
    - spectral_norm, rank, nullspace
"""

from __future__ import annotations

import enum
import math
import numbers
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import (
    ConvergenceError,
    CycleGuardExceeded,
    DimensionMismatch,
    InputError,
    InternalInvariantViolated,
    NotSymmetric,
)

EPS_LP = 1e-9
EPS_SYM = 1e-12
JACOBI_REL_TOL = 1e-14


def parse_rational(value) -> Fraction:
    """Parse ``"3"``, ``"-0.25"``, ``"7/2"``, ``1e-3`` or an int exactly.

    Python floats are read through their shortest repr, so ``0.1`` becomes
    ``1/10`` rather than the binary expansion.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (bool, np.bool_)):
        raise InputError(f"not a number: {value!r}")
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, numbers.Real):
        value = float(value)
        if not math.isfinite(value):
            raise InputError(f"non-finite number: {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text:
                num, den = text.split("/", 1)
                return Fraction(int(num.strip()), int(den.strip()))
            return Fraction(Decimal(text))
        except (ValueError, ZeroDivisionError, InvalidOperation, ArithmeticError):
            raise InputError(f"cannot parse number: {value!r}") from None
    raise InputError(f"not a number: {value!r}")


def as_rational_matrix(rows) -> np.ndarray:
    rows = [list(r) for r in rows]
    if not rows or len({len(r) for r in rows}) != 1:
        raise DimensionMismatch("matrix rows must be non-empty and of equal length")
    out = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            out[i, j] = parse_rational(v)
    return out


def is_rational(M) -> bool:
    M = np.asarray(M)
    return M.dtype == object and all(isinstance(v, Fraction) for v in M.flat)


def to_float(M) -> np.ndarray:
    return np.asarray(M, dtype=object).astype(float) if np.asarray(M).dtype == object \
        else np.asarray(M, dtype=float)


def format_scalar(x) -> str:
    """Canonical text form: ``p/q`` for Fractions, 17 significant digits for floats."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[lo, hi]``; ``exact`` marks Fraction endpoints."""

    lo: object
    hi: object
    exact: bool = False

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def width(self):
        return self.hi - self.lo

    def contains(self, x, tol=0.0) -> bool:
        return self.lo - tol <= x <= self.hi + tol

    def widened(self, eps: float) -> "Interval":
        return Interval(float(self.lo) - eps, float(self.hi) + eps, exact=False)

    def negated(self) -> "Interval":
        return Interval(-self.hi, -self.lo, exact=self.exact)

    def as_floats(self) -> tuple[float, float]:
        return float(self.lo), float(self.hi)


# ---------------------------------------------------------------------------
# Linear programming
# ---------------------------------------------------------------------------


class LPStatus(enum.Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


@dataclass(frozen=True)
class LPResult:
    status: LPStatus
    objective: object = None
    point: tuple | None = None

    @property
    def optimal(self) -> bool:
        return self.status is LPStatus.OPTIMAL


_RELATIONS = {"<=": "<=", "≤": "<=", "le": "<=", ">=": ">=", "≥": ">=", "ge": ">=",
              "=": "=", "==": "=", "eq": "="}


def _to_float_scalar(v) -> float:
    return float(parse_rational(v)) if isinstance(v, str) else float(v)


def _lcm_den(values) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, v.denominator)
    return out


class _Tableau:
    """Dense simplex tableau.

    Rational mode keeps integer entries with a common positive denominator
    ``d`` (the actual tableau is ``T / d``), updated by fraction-free
    pivoting; every division is exact. Float mode keeps a normalized float
    tableau with ``d == 1``.
    """

    def __init__(self, rows, rhs, basis, cost, exact, eps):
        self.exact = exact
        self.eps = 0 if exact else eps
        self.d = 1
        self.basis = list(basis)
        if exact:
            self.T = [list(r) + [b] for r, b in zip(rows, rhs)]
        else:
            self.T = np.array([list(r) + [b] for r, b in zip(rows, rhs)], dtype=float)
        self.ncols = len(cost)
        self.objs: dict[str, list] = {}

    def add_objective(self, name, reduced, value):
        row = list(reduced) + [value]
        self.objs[name] = row if self.exact else np.array(row, dtype=float)

    def pivot(self, r, c):
        if self.exact:
            T, d = self.T, self.d
            p = T[r][c]
            pr = T[r]
            for rows in (T, list(self.objs.values())):
                for row in rows:
                    if row is pr:
                        continue
                    f = row[c]
                    for j in range(len(row)):
                        q, rem = divmod(row[j] * p - f * pr[j], d)
                        if rem:
                            raise InternalInvariantViolated("inexact fraction-free pivot")
                        row[j] = q
            self.d = p
            if p < 0:
                for row in T:
                    row[:] = [-v for v in row]
                for row in self.objs.values():
                    row[:] = [-v for v in row]
                self.d = -p
        else:
            T = self.T
            T[r] = T[r] / T[r, c]
            for i in range(T.shape[0]):
                if i != r and T[i, c] != 0.0:
                    T[i] -= T[i, c] * T[r]
            for name, row in self.objs.items():
                if row[c] != 0.0:
                    self.objs[name] = row - row[c] * T[r]
        self.basis[r] = c

    def entry(self, i, j):
        return self.T[i][j]

    def nrows(self):
        return len(self.T)

    def run(self, name, allowed, max_iter):
        """Bland's-rule primal simplex on objective ``name``; returns status."""
        obj = lambda: self.objs[name]  # noqa: E731 - row object is replaced in float mode
        eps = self.eps
        for _ in range(max_iter):
            row = obj()
            enter = next((j for j in allowed if row[j] < -eps), None)
            if enter is None:
                return LPStatus.OPTIMAL
            best = None
            for i in range(self.nrows()):
                a = self.T[i][enter]
                if a <= eps:
                    continue
                b = self.T[i][-1]
                if best is None:
                    best = (i, a, b)
                    continue
                _, ba, bb = best
                if self.exact:
                    lhs, rhs = b * ba, bb * a
                    better = lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best[0]])
                else:
                    r1, r2 = b / a, bb / ba
                    better = r1 < r2 - 1e-12 * max(1.0, abs(r2)) or (
                        abs(r1 - r2) <= 1e-12 * max(1.0, abs(r2))
                        and self.basis[i] < self.basis[best[0]])
                if better:
                    best = (i, a, b)
            if best is None:
                return LPStatus.UNBOUNDED
            self.pivot(best[0], enter)
        raise CycleGuardExceeded(f"simplex exceeded {max_iter} pivots")

    def value(self, i):
        v = self.T[i][-1]
        return Fraction(v, self.d) if self.exact else float(v)

    def obj_value(self, name):
        v = self.objs[name][-1]
        return Fraction(v, self.d) if self.exact else float(v)

    def drop_row(self, i):
        if self.exact:
            del self.T[i]
        else:
            self.T = np.delete(self.T, i, axis=0)
        del self.basis[i]


def solve_lp(objective: Sequence, constraints: Sequence, mode: str = "rational",
             nonneg: Sequence[int] = (), max_iter: int = 20000) -> LPResult:
    """Maximize ``objective . x`` subject to linear constraints.

    ``constraints`` is a sequence of ``(row, relation, rhs)`` with relation one
    of ``"<="``, ``">="``, ``"="``. Variables are free unless listed in
    ``nonneg``. In rational mode all data must be rational and the result is
    exact; in float mode the returned point is checked against every
    constraint to within ``EPS_LP`` (scaled by the row magnitude).
    """
    if mode not in ("rational", "float"):
        raise ValueError(f"unknown LP mode {mode!r}")
    exact = mode == "rational"
    nvar = len(objective)
    nonneg = set(nonneg)
    conv = parse_rational if exact else _to_float_scalar

    cobj = [conv(v) for v in objective]
    cons = []
    for row, rel, rhs in constraints:
        if len(row) != nvar:
            raise DimensionMismatch(f"constraint has {len(row)} coefficients, expected {nvar}")
        if rel not in _RELATIONS:
            raise ValueError(f"unknown relation {rel!r}")
        cons.append(([conv(v) for v in row], _RELATIONS[rel], conv(rhs)))

    # column layout: one column per nonneg variable, a +/- pair per free one
    colmap = []
    for j in range(nvar):
        colmap.append((j, 1))
        if j not in nonneg:
            colmap.append((j, -1))
    nstruct = len(colmap)

    def expand(row):
        return [row[j] * s for j, s in colmap]

    norm_rows = []
    for row, rel, rhs in cons:
        er = expand(row)
        if rhs < 0:
            er = [-v for v in er]
            rhs = -rhs
            rel = {"<=": ">=", ">=": "<=", "=": "="}[rel]
        norm_rows.append((er, rel, rhs))

    n_slack = sum(1 for _, rel, _ in norm_rows if rel != "=")
    n_art = sum(1 for _, rel, _ in norm_rows if rel != "<=")
    ncols = nstruct + n_slack + n_art
    art_start = nstruct + n_slack

    rows, rhs_list, basis = [], [], []
    s_idx, a_idx = nstruct, art_start
    for er, rel, rhs in norm_rows:
        full = er + [0] * (n_slack + n_art)
        if exact:
            scale = _lcm_den(er + [rhs])
            full = [int(v * scale) for v in full]
            rhs = int(rhs * scale)
        if rel == "<=":
            full[s_idx] = 1
            basis.append(s_idx)
            s_idx += 1
        elif rel == ">=":
            full[s_idx] = -1
            s_idx += 1
            full[a_idx] = 1
            basis.append(a_idx)
            a_idx += 1
        else:
            full[a_idx] = 1
            basis.append(a_idx)
            a_idx += 1
        rows.append(full)
        rhs_list.append(rhs)

    cexp = expand(cobj) + [0] * (n_slack + n_art)
    c_scale = 1
    if exact:
        c_scale = _lcm_den(cexp)
        cexp = [int(v * c_scale) for v in cexp]
    zero = 0 if exact else 0.0
    tab = _Tableau(rows, rhs_list, basis, cexp, exact, EPS_LP)
    tab.add_objective("main", [-v for v in cexp], zero)

    non_art = list(range(art_start))
    if n_art:
        art_rows = [i for i, b in enumerate(basis) if b >= art_start]
        w = [zero] * ncols
        wv = zero
        for i in art_rows:
            for j in range(art_start):
                w[j] -= rows[i][j]
            wv -= rhs_list[i]
        tab.add_objective("phase1", w, wv)
        tab.run("phase1", non_art, max_iter)
        infeas = -tab.obj_value("phase1")
        if (infeas > 0) if exact else (infeas > EPS_LP * max(1.0, max(abs(v) for v in rhs_list))):
            return LPResult(LPStatus.INFEASIBLE)
        # drive zero-level artificials out of the basis
        i = 0
        while i < tab.nrows():
            if tab.basis[i] >= art_start:
                col = next((j for j in non_art
                            if abs(tab.entry(i, j)) > (0 if exact else 1e-11)), None)
                if col is None:
                    tab.drop_row(i)
                    continue
                tab.pivot(i, col)
            i += 1
        del tab.objs["phase1"]

    status = tab.run("main", non_art, max_iter)
    if status is LPStatus.UNBOUNDED:
        return LPResult(LPStatus.UNBOUNDED)

    colval = [zero] * nstruct
    if exact:
        colval = [Fraction(0)] * nstruct
    for i, b in enumerate(tab.basis):
        if b < nstruct:
            colval[b] = tab.value(i)
    x = [Fraction(0) if exact else 0.0 for _ in range(nvar)]
    for k, (j, s) in enumerate(colmap):
        x[j] += s * colval[k]
    objective_value = tab.obj_value("main")
    if exact:
        objective_value = objective_value / c_scale
    else:
        objective_value = float(np.dot(cobj, x))
        _certify(cons, x)
    return LPResult(LPStatus.OPTIMAL, objective_value, tuple(x))


def _certify(cons, x):
    for row, rel, rhs in cons:
        lhs = float(np.dot(row, x))
        tol = EPS_LP * max(1.0, abs(rhs), float(np.abs(row).max(initial=0.0)) *
                           max(1.0, float(np.abs(x).max(initial=0.0))))
        bad = (rel == "<=" and lhs > rhs + tol) or (rel == ">=" and lhs < rhs - tol) or (
            rel == "=" and abs(lhs - rhs) > tol)
        if bad:
            raise ConvergenceError(f"float LP point violates constraint by more than {tol:g}")


# ---------------------------------------------------------------------------
# Eigenvalues and norms
# ---------------------------------------------------------------------------


def jacobi_eigh(S, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigendecomposition of a symmetric matrix.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvectors in columns,
    eigenvalues sorted ascending. Iterates until the off-diagonal Frobenius
    mass drops below ``1e-14 * ||S||_F``.
    """
    A = to_float(S).copy()
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch("eigenproblem needs a square matrix")
    n = A.shape[0]
    scale = max(1.0, float(np.abs(A).max(initial=0.0)))
    if float(np.abs(A - A.T).max(initial=0.0)) > EPS_SYM * scale:
        raise NotSymmetric("matrix is not symmetric")
    A = (A + A.T) / 2
    V = np.eye(n)
    fro = np.linalg.norm(A)
    target = JACOBI_REL_TOL * fro

    mask = ~np.eye(n, dtype=bool)

    def off(M):
        return float(np.sqrt(np.sum(M[mask] ** 2)))

    for _ in range(max_sweeps):
        if off(A) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                Ap, Aq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * Ap - s * Aq
                A[:, q] = s * Ap + c * Aq
                Ap, Aq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * Ap - s * Aq
                A[q, :] = s * Ap + c * Aq
                A[p, q] = A[q, p] = 0.0
                Vp, Vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * Vp - s * Vq
                V[:, q] = s * Vp + c * Vq
    else:
        if off(A) > target:
            raise ConvergenceError("Jacobi sweeps did not converge")
    w = np.diag(A).copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]


def symmetric_eigen_interval(S) -> Interval:
    """``[lambda_min, lambda_max]`` of a symmetric matrix (float endpoints)."""
    w, _ = jacobi_eigh(S)
    return Interval(float(w[0]), float(w[-1]))


def spectral_norm(M) -> float:
    """Largest singular value, ``sqrt(lambda_max(M^T M))``."""
    A = to_float(M)
    if A.size == 0:
        return 0.0
    w, _ = jacobi_eigh(A.T @ A)
    return math.sqrt(max(0.0, float(w[-1])))


# ---------------------------------------------------------------------------
# Exact row reduction
# ---------------------------------------------------------------------------


def row_echelon(M) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals; returns (rows, pivot columns)."""
    A = [[parse_rational(v) for v in row] for row in M]
    if not A:
        return [], []
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        pv = A[r][c]
        A[r] = [v / pv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(M) -> int:
    """Exact rank via fraction-free (Bareiss) elimination."""
    A = [[parse_rational(v) for v in row] for row in M]
    if not A or not A[0]:
        return 0
    # clear denominators row by row, then eliminate over the integers
    rows = []
    for row in A:
        s = _lcm_den(row)
        rows.append([int(v * s) for v in row])
    nrows, ncols = len(rows), len(rows[0])
    prev = 1
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        p = rows[r][c]
        for i in range(r + 1, nrows):
            f = rows[i][c]
            rows[i] = [(rows[i][j] * p - f * rows[r][j]) // prev for j in range(ncols)]
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def nullspace(M, ncols: int | None = None) -> list[list[Fraction]]:
    """Exact basis of ``{x : M x = 0}``."""
    rref, pivots = row_echelon(M)
    n = ncols if ncols is not None else (len(M[0]) if len(M) else 0)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(rref, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve_exact(M, b) -> list[Fraction] | None:
    """A solution of ``M x = b`` over the rationals (unique if M has full column rank)."""
    aug = [list(row) + [rhs] for row, rhs in zip(M, b)]
    ncols = len(M[0])
    rref, pivots = row_echelon(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(rref, pivots):
        x[pc] = row[-1]
    return x


def is_psd_exact(S) -> bool:
    """Exact positive-semidefiniteness test for a rational symmetric matrix.

    Symmetric Gaussian elimination on diagonal pivots: a negative pivot or a
    zero pivot with a nonzero row means the matrix is not PSD.
    """
    A = [[parse_rational(v) for v in row] for row in S]
    n = len(A)
    for k in range(n):
        p = A[k][k]
        if p < 0:
            return False
        if p == 0:
            if any(A[k][j] != 0 for j in range(k + 1, n)):
                return False
            continue
        for i in range(k + 1, n):
            f = A[i][k] / p
            if f:
                for j in range(k + 1, n):
                    A[i][j] -= f * A[k][j]
    return True


def det_exact(S) -> Fraction:
    rows = [[parse_rational(v) for v in row] for row in S]
    n = len(rows)
    det = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            det = -det
        p = rows[c][c]
        det *= p
        for i in range(c + 1, n):
            f = rows[i][c] / p
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det
