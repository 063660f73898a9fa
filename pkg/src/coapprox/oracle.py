"""Independent checks of candidate best coapproximations.

Two routes, neither of which uses the constraint system:

* ``verify_by_definition`` samples the subspace and tests
  ``||y0 - y|| <= ||T - y||`` with spectral norms.
* ``verify_bj_directions`` tests Birkhoff-James orthogonality of diagonal
  directions ``D = sum beta_k A_k`` to the residual ``R = T - y0``. For a
  diagonal ``D`` the norm is attained exactly on unit vectors supported on
  ``S = argmax |d_i|``, so ``D`` is BJ-orthogonal to ``R`` iff the quadratic
  form ``x -> sum_{i,j in S} d_i r_ij x_i x_j`` vanishes somewhere on that
  sphere, i.e. iff its numerical range contains 0.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, ZeroDirection
from .linalg import spectral_norm, to_float
from .numrange import real_numerical_range
from .subspace import Basis, StarReport

PASS_TOL = 1e-9
FAIL_TOL = 1e-6


class Verdict(enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"


@dataclass(frozen=True)
class VerificationReport:
    verdict: Verdict
    samples_checked: int
    worst_violation: float
    failing_witness: tuple | None = None
    failing_class: int | None = None
    inconclusive: bool = False

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS


def _verdict(worst, witness, checked, failing_class=None) -> VerificationReport:
    if worst <= PASS_TOL:
        return VerificationReport(Verdict.PASS, checked, worst)
    return VerificationReport(Verdict.FAIL, checked, worst, witness, failing_class,
                              inconclusive=worst <= FAIL_TOL)


def _diag_entries(D) -> list:
    entries = getattr(D, "entries", D)
    return list(entries)


def bj_gap(D, R) -> float:
    """Distance from 0 to the numerical range of the restricted form, ``||D||``-normalized."""
    d = _diag_entries(D)
    R = to_float(R)
    if R.shape != (len(d), len(d)):
        raise DimensionMismatch("direction and residual sizes differ")
    if all(isinstance(v, Fraction) for v in d):
        top = max(abs(v) for v in d)
        if top == 0:
            raise ZeroDirection("direction is the zero matrix")
        S = [i for i, v in enumerate(d) if abs(v) == top]
        scale = [float(d[i] / top) for i in S]
    else:
        dv = np.asarray(d, dtype=float)
        top = float(np.abs(dv).max())
        if top == 0.0:
            raise ZeroDirection("direction is the zero matrix")
        S = [i for i in range(len(dv)) if abs(dv[i]) >= top * (1 - 1e-12)]
        scale = [dv[i] / top for i in S]
    M = np.array([[scale[a] * R[i, j] for j in S] for a, i in enumerate(S)])
    lo, hi = real_numerical_range(M, snap=False).as_floats()
    return max(0.0, lo, -hi)


def bj_orthogonal_diag(D, R, tol: float = PASS_TOL) -> bool:
    """Whether the diagonal matrix ``D`` is Birkhoff-James orthogonal to ``R``."""
    return bj_gap(D, R) <= tol


def _matrices(basis) -> list[np.ndarray]:
    if isinstance(basis, Basis):
        return [to_float(M) for M in basis.dense_matrices()]
    return [to_float(M) for M in basis]


def _combine(coeffs, mats):
    out = np.zeros_like(mats[0])
    for c, M in zip(coeffs, mats):
        out = out + float(c) * M
    return out


def _random_rational(rng, m) -> tuple[Fraction, ...]:
    while True:
        nums = rng.integers(-20, 21, size=m)
        dens = rng.integers(1, 6, size=m)
        beta = tuple(Fraction(int(a), int(b)) for a, b in zip(nums, dens))
        if any(beta):
            return beta


def verify_bj_directions(alpha, T, basis: Basis, report: StarReport, n_random: int = 50,
                         seed: int = 0) -> VerificationReport:
    """BJ-orthogonality of the class witness directions and random ones.

    Class witnesses are checked first, in class order, so a candidate that
    leaves the numerical range of a satisfying class is reported with that
    class's witness as the failing direction.
    """
    mats = _matrices(basis)
    R = to_float(T) - _combine(alpha, mats)
    rng = np.random.default_rng(seed)
    directions = [(w.beta, w.class_id) for w in report.satisfying]
    directions += [(_random_rational(rng, basis.m), None) for _ in range(n_random)]
    worst, witness, failing_class = 0.0, None, None
    for beta, cid in directions:
        gap = bj_gap(basis.combine(beta), R)
        worst = max(worst, gap)
        if gap > PASS_TOL and witness is None:
            witness, failing_class = beta, cid
    return _verdict(worst, witness, len(directions), failing_class)


def verify_by_definition(alpha, T, basis, samples: int = 200, seed: int = 0,
                         box: float = 10.0) -> VerificationReport:
    """Check ``||y0 - y|| <= ||T - y||`` for sampled ``y`` in the subspace.

    ``basis`` may be a :class:`Basis` or a list of general n x n matrices;
    ``y = sum c_k A_k`` with ``c`` uniform on ``[-box, box]^m``.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    mats = _matrices(basis)
    Tf = to_float(T)
    y0 = _combine(alpha, mats)
    rng = np.random.default_rng(seed)
    coeffs = rng.uniform(-box, box, size=(samples, len(mats)))
    worst, witness = -np.inf, None
    for c in coeffs:
        y = _combine(c, mats)
        v = spectral_norm(y0 - y) - spectral_norm(Tf - y)
        if v > worst:
            worst, witness = v, tuple(float(x) for x in c)
    worst = float(worst)
    if worst <= PASS_TOL:
        return VerificationReport(Verdict.PASS, samples, worst)
    return _verdict(worst, witness, samples)
