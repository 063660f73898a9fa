"""Acceptance criteria 1-8; each test records one PASS/FAIL line."""

import random
import time
from fractions import Fraction

import numpy as np
import pytest

from coapprox.linalg import LPStatus, solve_exact, solve_lp, spectral_norm
from coapprox.numrange import real_numerical_range, star_associated_matrix
from coapprox.oracle import verify_bj_directions, verify_by_definition
from coapprox.problem import load_problem
from coapprox.solver import SolutionKind, coapprox
from coapprox.subspace import Basis, build_component_table, star_report
from conftest import PROBLEMS, Y1, Y2, case_target, random_basis, random_invertible

F = Fraction
TOL = 1e-7


def _close(iv, lo, hi, tol):
    return abs(float(iv.lo) - lo) <= tol and abs(float(iv.hi) - hi) <= tol


def test_criterion_1_case1_family(example_basis, criterion):
    start = time.perf_counter()
    sol = coapprox(example_basis, case_target(1)).solution
    elapsed = time.perf_counter() - start
    expected = [(0.5, 5.5), (-1.5, 3.5), (4, 4), (1, 1), (-5.5, -0.5), (-1.5, 3.5), (2, 2)]
    ok = (sol.kind is SolutionKind.FAMILY
          and len(sol.diag_ranges) == 7
          and all(_close(iv, lo, hi, TOL) for iv, (lo, hi) in zip(sol.diag_ranges, expected))
          and elapsed < 1.0)
    ranges = ", ".join(f"[{iv.lo}, {iv.hi}]" for iv in sol.diag_ranges)
    criterion(1, ok, f"{sol.kind.value}; {ranges}; {elapsed:.3f} s")


def test_criterion_2_case2_unique(example_basis, criterion):
    sol = coapprox(example_basis, case_target(2)).solution
    expected = (3, 1, 4, 1, -3, 1, 2)
    ok = sol.kind is SolutionKind.UNIQUE and all(
        abs(float(d) - e) <= TOL for d, e in zip(sol.diagonal, expected))
    criterion(2, ok, f"{sol.kind.value}; diagonal ({', '.join(map(str, sol.diagonal or ()))})")


def test_criterion_3_case3_empty(example_basis, criterion):
    sol = coapprox(example_basis, case_target(3)).solution
    criterion(3, sol.kind is SolutionKind.EMPTY, sol.kind.value)


def test_criterion_4_numerical_ranges(example_basis, criterion):
    table = build_component_table(example_basis)
    expected = {1: [(-3.5, 7.5), (-1.5, 3.5), (4, 4), (1, 1)], 2: [(3, 3)], 3: [(14, 14)]}
    found, ok = [], True
    for k, intervals in expected.items():
        T = case_target(k)
        for cid, (lo, hi) in enumerate(intervals):
            iv = real_numerical_range(star_associated_matrix(T, table.classes[cid]).matrix)
            ok &= _close(iv, lo, hi, 1e-9)
            found.append(f"T{k}/class {cid + 1}: [{iv.lo}, {iv.hi}]")
    criterion(4, ok, "; ".join(found))


def test_criterion_5_classifier(example_basis, criterion):
    standard = all(coapprox(Basis.standard(n)).classification.co_chebyshev for n in range(1, 11))
    example = not coapprox(example_basis).classification.coproximinal
    y1 = coapprox(Basis.from_rows(Y1)).classification.coproximinal
    y2 = not coapprox(Basis.from_rows(Y2)).classification.coproximinal
    ok = standard and example and y1 and y2
    criterion(5, ok, f"D_1..D_10 co-Chebyshev={standard}, example not coproximinal={example}, "
                     f"Y1 coproximinal={y1}, Y2 not coproximinal={y2}")


def _class_signature(table, report):
    classes = tuple((c.representative, c.p_plus, c.p_minus) for c in table.classes)
    reps = frozenset(table.classes[c].representative for c in report.satisfying_ids)
    return classes, reps


def _dot(u, v):
    return sum((a * b for a, b in zip(u, v)), F(0))


def test_criterion_6_property_suite(criterion):
    rng = random.Random(2024)
    start = time.perf_counter()
    failures = []
    for trial in range(500):
        basis = random_basis(rng, max_n=8, max_m=4, lo=-9, hi=9)
        table = build_component_table(basis)
        report = star_report(table)
        if not (report.p >= 1 and report.p >= basis.m):
            failures.append(f"trial {trial}: p={report.p}, m={basis.m}")

        Q = random_invertible(rng, basis.m)
        comps = [[_dot(row, [Q[j][k] for j in range(basis.m)]) for k in range(basis.m)]
                 for row in basis.components()]
        other = build_component_table(Basis.from_rows([[r[k] for r in comps] for k in range(basis.m)]))
        if _class_signature(table, report) != _class_signature(other, star_report(other)):
            failures.append(f"trial {trial}: basis change altered classes")

        reps = [table.rep_row(c) for c in report.satisfying_ids]
        for _ in range(20):
            beta = [F(rng.randint(-20, 20), rng.randint(1, 7)) for _ in range(basis.m)]
            full = max(abs(_dot(beta, row)) for row in table.a_tilde)
            if full != max(abs(_dot(beta, row)) for row in reps):
                failures.append(f"trial {trial}: norm attainment fails at {beta}")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60.0
    criterion(6, ok, f"500 bases, {len(failures)} failures, {elapsed:.1f} s"
                     + (f"; first: {failures[0]}" if failures else ""))


def _vertices(system, m):
    """Exact extreme points of the solution polyhedron in each coordinate direction."""
    cons = []
    for row, iv in zip(system.rows, system.intervals):
        cons += [(list(row), ">=", iv.lo), (list(row), "<=", iv.hi)]
    points = []
    for k in range(m):
        for sign in (1, -1):
            obj = [F(0)] * m
            obj[k] = F(sign)
            res = solve_lp(obj, cons)
            if res.optimal:
                points.append(tuple(res.point))
    return points


NON_EMPTY = ["example_case1.json", "example_case2.json", "standard_basis_4.json", "linf_segment.json"]


def test_criterion_7_oracle_agreement(example_basis, criterion):
    failures, checked, perturbed = [], 0, 0
    for name in NON_EMPTY:
        problem = load_problem(PROBLEMS / name)
        report = coapprox(problem.basis, problem.target)
        sol = report.solution
        if sol.kind is SolutionKind.EMPTY:
            failures.append(f"{name}: unexpectedly Empty")
            continue
        for alpha in [sol.point, *_vertices(report.system, problem.m)]:
            checked += 1
            d = verify_by_definition(alpha, problem.target, problem.basis, samples=200, seed=0)
            b = verify_bj_directions(alpha, problem.target, problem.basis, report.star, seed=0)
            if not (d.passed and b.passed):
                failures.append(f"{name}: valid alpha {alpha} rejected")
        for k, iv in enumerate(sol.alpha_box):
            for value in (iv.hi + F(1, 10), iv.lo - F(1, 10)):
                alpha = list(sol.point)
                alpha[k] = value
                perturbed += 1
                violated = [cid for cid, r in zip(report.system.class_ids, report.system.residuals(alpha))
                            if r > 0]
                b = verify_bj_directions(alpha, problem.target, problem.basis, report.star, seed=0)
                expected = violated[0] if violated else None
                if b.passed or b.failing_class != expected or \
                        b.failing_witness != report.star.witness(expected).beta:
                    failures.append(f"{name}: perturbed alpha {alpha} not pinned to class {expected}")

    table3 = coapprox(example_basis, case_target(3))
    rng = random.Random(7)
    empty_fail = 0
    for _ in range(500):
        alpha = tuple(F(rng.randint(-100, 100), 10) for _ in range(3))
        b = verify_bj_directions(alpha, case_target(3), example_basis, table3.star, n_random=0)
        empty_fail += (not b.passed) and b.failing_class is not None
    if empty_fail != 500:
        failures.append(f"case 3: only {empty_fail}/500 random candidates failed")
    criterion(7, not failures, f"{checked} valid candidates, {perturbed} perturbed, "
                               f"case 3 {empty_fail}/500 Fail"
                               + (f"; first: {failures[0]}" if failures else ""))


def _star_lp(table, cid):
    ai, m = table.rep_row(cid), table.m
    cons = []
    for j in range(len(table.classes)):
        if j == cid:
            continue
        aj = table.rep_row(j)
        for sign in (1, -1):
            cons.append(([x + sign * y for x, y in zip(ai, aj)] + [F(-1)], ">=", 0))
    cons.append((list(ai) + [F(-1)], ">=", 0))
    for k in range(m):
        e = [F(0)] * (m + 1)
        e[k] = F(1)
        cons += [(e, "<=", 1), (e, ">=", -1)]
    return [F(0)] * m + [F(1)], cons


def _exactly_feasible(point, cons):
    for row, rel, rhs in cons:
        v = _dot(row, point)
        if (rel == "<=" and v > rhs) or (rel == ">=" and v < rhs) or (rel == "=" and v != rhs):
            return False
    return True


def test_criterion_8_kernels(criterion):
    rng = np.random.default_rng(8)
    worst = 0.0
    for _ in range(200):
        r, c = rng.integers(1, 9, size=2)
        M = rng.normal(size=(r, c)) * rng.uniform(0.01, 100)
        ref = np.sqrt(max(np.linalg.eigvalsh(M.T @ M)[-1], 0.0))
        worst = max(worst, abs(spectral_norm(M) - ref) / ref)

    lp_failures, lps = [], 0
    fixtures = [Basis.from_rows(r) for r in ([[7, -5, 2, 6, -7, -5, 1], [1, 3, 4, 3, -1, 3, 2],
                                              [3, -7, -4, 5, -3, -7, -2]], Y1, Y2)]
    fixtures += [load_problem(PROBLEMS / n).basis for n in ("standard_basis_4.json", "linf_segment.json")]
    for basis in fixtures:
        table = build_component_table(basis)
        decided = set(star_report(table, use_fast_path=False).satisfying_ids)
        for cid, cls in enumerate(table.classes):
            if cls.is_zero:
                continue
            obj, cons = _star_lp(table, cid)
            res = solve_lp(obj, cons)
            lps += 1
            if res.status is not LPStatus.OPTIMAL or not _exactly_feasible(res.point, cons) \
                    or res.objective != res.point[-1] or (res.objective > 0) != (cid in decided):
                lp_failures.append(f"class {cid + 1} of a {table.n}x{table.m} table")
    ok = worst <= 1e-8 and not lp_failures
    criterion(8, ok, f"spectral norm worst rel err {worst:.2e} over 200; "
                     f"{lps} *-Property LPs exactly feasible, {len(lp_failures)} failures")
