"""JSON and text rendering of solver and oracle results.

JSON output is canonical: sorted keys, two-space indent, every scalar that
is not a count rendered as a string (``p/q`` for exact values, 17
significant digits for floats). Component indices are 1-based.
"""

from __future__ import annotations

import json

from .linalg import Interval, format_scalar
from .oracle import VerificationReport
from .solver import CoapproxReport, ConstraintSystem, SolutionSet
from .subspace import Classification, ComponentTable, StarReport


def _vec(values):
    return [format_scalar(v) for v in values]


def _interval(iv: Interval) -> dict:
    return {"lo": format_scalar(iv.lo), "hi": format_scalar(iv.hi)}


def classification_dict(c: Classification) -> dict:
    return {"coproximinal": c.coproximinal, "co_chebyshev": c.co_chebyshev,
            "p": c.p, "m": c.m, "singleton_classes": c.singleton_classes}


def star_dict(table: ComponentTable, star: StarReport) -> dict:
    classes = []
    for cls in table.classes:
        classes.append({
            "representative": cls.representative + 1,
            "component": _vec(table.a_tilde[cls.representative]),
            "p_plus": sorted(i + 1 for i in cls.p_plus),
            "p_minus": sorted(i + 1 for i in cls.p_minus),
            "is_zero": cls.is_zero,
        })
    rep = lambda cid: table.classes[cid].representative + 1  # noqa: E731
    return {
        "classes": classes,
        "satisfying": [{"representative": rep(w.class_id), "witness": _vec(w.beta),
                        "margin": format_scalar(w.margin), "method": w.method}
                       for w in star.satisfying],
        "non_satisfying": [rep(c) for c in star.non_satisfying],
        "p": star.p,
        "m": star.m,
    }


def system_dict(table: ComponentTable, system: ConstraintSystem) -> dict:
    return {
        "mode": "rational" if system.exact else "float",
        "rows": [{"representative": table.classes[cid].representative + 1,
                  "row": _vec(row), "interval": _interval(iv)}
                 for cid, row, iv in zip(system.class_ids, system.rows, system.intervals)],
    }


def solution_dict(sol: SolutionSet) -> dict:
    out = {"kind": sol.kind.value, "exact": sol.exact}
    if sol.point is not None:
        out["point"] = _vec(sol.point)
        out["alpha_box"] = [_interval(iv) for iv in sol.alpha_box]
        out["diag_ranges"] = [_interval(iv) for iv in sol.diag_ranges]
        out["diagonal"] = _vec(sol.diagonal)
    return out


def verification_dict(v: VerificationReport) -> dict:
    out = {"verdict": v.verdict.value, "samples_checked": v.samples_checked,
           "worst_violation": format_scalar(v.worst_violation), "inconclusive": v.inconclusive}
    if v.failing_witness is not None:
        out["failing_witness"] = _vec(v.failing_witness)
    return out


def report_dict(report: CoapproxReport, oracle: dict | None = None, classify_only=False) -> dict:
    out = {"classification": classification_dict(report.classification),
           "star_report": star_dict(report.table, report.star)}
    if not classify_only and report.system is not None:
        out["system"] = system_dict(report.table, report.system)
        out["solution"] = solution_dict(report.solution)
    if oracle is not None:
        out["oracle"] = oracle
    return out


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def render_text(obj: dict) -> str:
    """Human-readable rendering of a report dictionary."""
    lines = []
    if "classification" in obj:
        c = obj["classification"]
        lines.append(f"subspace: m={c['m']}, p={c['p']} satisfying classes")
        lines.append(f"  coproximinal: {'yes' if c['coproximinal'] else 'no'}")
        lines.append(f"  co-Chebyshev: {'yes' if c['co_chebyshev'] else 'no'}")
    if "star_report" in obj:
        s = obj["star_report"]
        sat = {w["representative"]: w for w in s["satisfying"]}
        lines.append("classes:")
        for cls in s["classes"]:
            r = cls["representative"]
            tag = "zero" if cls["is_zero"] else ("*" if r in sat else "-")
            members = f"P+={cls['p_plus']} P-={cls['p_minus']}"
            line = f"  [{tag}] {r}: ({', '.join(cls['component'])})  {members}"
            if r in sat:
                line += f"  witness=({', '.join(sat[r]['witness'])}) margin={sat[r]['margin']}"
            lines.append(line)
    if "system" in obj:
        lines.append(f"constraints ({obj['system']['mode']}):")
        for row in obj["system"]["rows"]:
            iv = row["interval"]
            lines.append(f"  <({', '.join(row['row'])}), alpha> in [{iv['lo']}, {iv['hi']}]")
    if "solution" in obj:
        sol = obj["solution"]
        lines.append(f"solution: {sol['kind']}")
        if "point" in sol:
            lines.append(f"  alpha = ({', '.join(sol['point'])})")
            lines.append(f"  diagonal = ({', '.join(sol['diagonal'])})")
            if sol["kind"] == "Family":
                for i, iv in enumerate(sol["diag_ranges"], 1):
                    lines.append(f"  entry {i}: [{iv['lo']}, {iv['hi']}]")
    if "oracle" in obj:
        for name, v in sorted(obj["oracle"].items()):
            if not isinstance(v, dict) or "verdict" not in v:
                continue
            extra = f", failing witness ({', '.join(v['failing_witness'])})" if "failing_witness" in v else ""
            lines.append(f"oracle {name}: {v['verdict']} (worst violation {v['worst_violation']}, "
                         f"{v['samples_checked']} checks{extra})")
    return "\n".join(lines) + "\n"
