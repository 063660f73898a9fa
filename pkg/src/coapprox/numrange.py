"""*-associated matrices and real numerical ranges.

Over the reals ``<Mx, x> = <Sym(M)x, x>``, so the numerical range of any
square ``M`` is ``[lambda_min, lambda_max]`` of its symmetric part. For
rational input the float endpoints from Jacobi are snapped to exact
rationals when an exact test confirms them; otherwise they stay floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch, ZeroClass
from .linalg import Interval, det_exact, is_psd_exact, is_rational, jacobi_eigh, to_float
from .subspace import EquivClass

SNAP_MAX_DENOMINATOR = 10**6
SNAP_TOL = 1e-9


@dataclass(frozen=True)
class StarAssociatedMatrix:
    class_id: int | None
    index_order: tuple[int, ...]
    matrix: np.ndarray


def star_associated_matrix(T, cls: EquivClass, class_id: int | None = None) -> StarAssociatedMatrix:
    """Signed principal submatrix of ``T`` on the class members.

    Rows belonging to the negatively associated set are negated; columns
    are not. Members are taken in ascending order.
    """
    T = np.asarray(T)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise DimensionMismatch("target must be square")
    if cls.is_zero:
        raise ZeroClass("no *-associated matrix for the zero class")
    order = tuple(cls.members)
    if order[-1] >= T.shape[0]:
        raise DimensionMismatch(f"class index {order[-1] + 1} exceeds target size {T.shape[0]}")
    sub = T[np.ix_(order, order)].copy()
    for r, i in enumerate(order):
        if i in cls.p_minus:
            sub[r, :] = -sub[r, :]
    return StarAssociatedMatrix(class_id, order, sub)


def symmetric_part(M) -> np.ndarray:
    M = np.asarray(M)
    if M.dtype == object:
        return (M + M.T) * Fraction(1, 2)
    return (M + M.T) / 2.0


def _snap(S, value: float, lower: bool):
    k = S.shape[0]
    cand = Fraction(value).limit_denominator(SNAP_MAX_DENOMINATOR)
    if abs(float(cand) - value) > SNAP_TOL * max(1.0, abs(value)):
        return None
    shifted = S - np.diag([cand] * k).astype(object) if lower else \
        np.diag([cand] * k).astype(object) - S
    if is_psd_exact(shifted) and det_exact(shifted) == 0:
        return cand
    return None


def real_numerical_range(M, snap: bool = True) -> Interval:
    """Numerical range ``{<Mx, x> : ||x||_2 = 1}`` over real unit vectors."""
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatch("numerical range needs a square matrix")
    S = symmetric_part(M)
    if M.shape[0] == 1:
        v = S[0, 0]
        return Interval(v, v, exact=isinstance(v, Fraction))
    w, _ = jacobi_eigh(to_float(S))
    lo, hi = float(w[0]), float(w[-1])
    if snap and is_rational(S):
        elo = _snap(S, lo, lower=True)
        ehi = _snap(S, hi, lower=False)
        if elo is not None and ehi is not None:
            return Interval(elo, ehi, exact=True)
    return Interval(lo, hi, exact=False)


def numerical_range_extremals(M) -> tuple[Interval, np.ndarray, np.ndarray]:
    """Float interval plus unit vectors attaining its two endpoints."""
    S = to_float(symmetric_part(M))
    w, V = jacobi_eigh(S)
    return Interval(float(w[0]), float(w[-1])), V[:, 0], V[:, -1]
