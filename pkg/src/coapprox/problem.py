"""Problem and candidate files (UTF-8 JSON).

Problem schema::

    {"n": 7, "mode": "diag" | "linf",
     "basis": [[...n numbers...], ...],
     "target": [[...], ...]}        # n x n in diag mode, length n in linf mode

Numbers may be JSON numbers or strings (``"3"``, ``"-0.5"``, ``"7/2"``);
all are parsed to exact rationals.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import DimensionMismatch, InputError
from .linalg import as_rational_matrix, parse_rational, solve_exact
from .subspace import Basis

MODES = ("diag", "linf")


@dataclass(frozen=True)
class Problem:
    n: int
    mode: str
    basis: Basis
    target: np.ndarray | None

    @property
    def m(self) -> int:
        return self.basis.m


def _read_json(path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def parse_problem(data: dict, mode: str | None = None) -> Problem:
    if not isinstance(data, dict):
        raise InputError("problem file must hold a JSON object")
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError("'n' must be a positive integer")
    mode = mode or data.get("mode", "diag")
    if mode not in MODES:
        raise InputError(f"'mode' must be one of {MODES}")
    rows = data.get("basis")
    if not isinstance(rows, list) or not rows:
        raise InputError("'basis' must be a non-empty list of rows")
    for r in rows:
        if not isinstance(r, list) or len(r) != n:
            raise DimensionMismatch(f"every basis row must have n={n} entries")
    basis = Basis.from_rows([[parse_rational(v) for v in r] for r in rows])

    target = data.get("target")
    T = None
    if target is not None:
        if mode == "linf":
            if not isinstance(target, list) or len(target) != n or any(isinstance(v, list) for v in target):
                raise DimensionMismatch(f"linf target must be a vector of length {n}")
            T = np.empty((n, n), dtype=object)
            T[:] = Fraction(0)
            for i, v in enumerate(target):
                T[i, i] = parse_rational(v)
        else:
            if not isinstance(target, list) or len(target) != n or \
                    any(not isinstance(r, list) or len(r) != n for r in target):
                raise DimensionMismatch(f"target must be an {n} x {n} grid")
            T = as_rational_matrix(target)
    return Problem(n, mode, basis, T)


def load_problem(path, mode: str | None = None) -> Problem:
    return parse_problem(_read_json(path), mode)


def parse_candidate(data, problem: Problem) -> tuple[Fraction, ...]:
    """Coefficients ``alpha`` from ``{"alpha": [...]}``, ``{"diagonal": [...]}`` or a bare list.

    A bare list of length m is read as coefficients, of length n as
    diagonal entries (m wins when m == n). Diagonals must lie in the subspace.
    """
    m, n = problem.m, problem.n
    if isinstance(data, dict):
        if "alpha" in data:
            kind, values = "alpha", data["alpha"]
        elif "diagonal" in data:
            kind, values = "diagonal", data["diagonal"]
        else:
            raise InputError("candidate needs an 'alpha' or 'diagonal' key")
    elif isinstance(data, list):
        kind, values = ("alpha" if len(data) == m else "diagonal"), data
    else:
        raise InputError("candidate must be a JSON list or object")
    if not isinstance(values, list):
        raise InputError("candidate values must be a list")
    values = [parse_rational(v) for v in values]
    if kind == "alpha":
        if len(values) != m:
            raise DimensionMismatch(f"candidate has {len(values)} coefficients, expected m={m}")
        return tuple(values)
    if len(values) != n:
        raise DimensionMismatch(f"candidate diagonal has {len(values)} entries, expected n={n}")
    alpha = solve_exact(problem.basis.components(), values)
    if alpha is None:
        raise InputError("candidate diagonal is not in the subspace")
    return tuple(alpha)


def load_candidate(path, problem: Problem) -> tuple[Fraction, ...]:
    return parse_candidate(_read_json(path), problem)
