"""JSON and CSV serialisation of results.

Reports are plain dicts with stable key order.  Non-finite floats are written
as ``null``.  Wall-clock times are left out unless asked for, so that repeated
runs with the same seed give byte-identical output.
"""

from __future__ import annotations

import io
import json
import math
import platform

import numpy as np

from . import __version__
from .constants import CertificateEntry, CertificateReport, SharpConstantResult
from .verifiers import InequalityReport, RadiusEstimate, SharpnessProbe, Violation

SWEEP_HEADER = ("a", "r", "value", "tail_bound", "margin")


def _num(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


def _unnum(x):
    return math.nan if x is None else float(x)


def _plain(obj):
    """Convert numpy scalars and fractions into JSON-native values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    if obj is None or isinstance(obj, str):
        return obj
    # Fraction and friends
    try:
        as_int = int(obj)
        if as_int == obj:
            return as_int
    except (TypeError, ValueError):
        pass
    return float(obj)


def environment_stamp(seed=None) -> dict:
    return {
        "tool": "bohrlab",
        "version": __version__,
        "numpy": np.__version__,
        "python": platform.python_version(),
        "seed": seed,
    }


def violation_to_dict(v: Violation) -> dict:
    return {
        "params": _plain(v.params),
        "value": _num(v.value),
        "bound": _num(v.bound),
        "tolerance": _num(v.tolerance),
        "excess": _num(v.excess),
    }


def inequality_report_to_dict(rep: InequalityReport, timing=False) -> dict:
    d = {
        "target": rep.target,
        "passed": rep.passed,
        "max_value": _num(rep.max_value),
        "bound_at_argmax": _num(rep.bound_at_argmax),
        "argmax": _plain(rep.argmax),
        "margin": _num(rep.margin),
        "checks": rep.checks,
        "seed": rep.seed,
        "truncation": rep.truncation,
        "samples": rep.samples,
        "details": _plain(rep.details),
        "violations": [violation_to_dict(v) for v in rep.violations],
    }
    if timing and rep.wall_time is not None:
        d["wall_time"] = rep.wall_time
    return d


def inequality_report_from_dict(d: dict) -> InequalityReport:
    violations = [
        Violation(v["params"], _unnum(v["value"]), _unnum(v["bound"]), _unnum(v["tolerance"]))
        for v in d["violations"]
    ]
    return InequalityReport(
        target=d["target"],
        max_value=_unnum(d["max_value"]),
        bound_at_argmax=_unnum(d["bound_at_argmax"]),
        argmax=d["argmax"],
        margin=_unnum(d["margin"]),
        violations=violations,
        checks=d["checks"],
        seed=d["seed"],
        truncation=d["truncation"],
        samples=d["samples"],
        details=d["details"],
        wall_time=d.get("wall_time"),
    )


_CONSTANT_NAMES = {"psi": "lambda", "phi": "mu", "viniti": "lambda"}


def constant_to_dict(res: SharpConstantResult) -> dict:
    return {
        "polynomial": res.name,
        "root": res.root,
        _CONSTANT_NAMES.get(res.name, "constant"): _num(res.derived_constant),
        "bracket": list(res.bracket),
        "residual": res.residual,
        "iterations": res.iterations,
    }


def constant_from_dict(d: dict) -> SharpConstantResult:
    key = _CONSTANT_NAMES.get(d["polynomial"], "constant")
    return SharpConstantResult(
        name=d["polynomial"],
        root=d["root"],
        residual=d["residual"],
        bracket=tuple(d["bracket"]),
        derived_constant=_unnum(d[key]) if d.get(key) is not None else None,
        iterations=d["iterations"],
    )


def radius_to_dict(est: RadiusEstimate) -> dict:
    return {
        "radius": est.radius,
        "bracket": list(est.bracket),
        "family": est.family,
        "functional": est.functional,
        "members": est.members,
    }


def radius_from_dict(d: dict) -> RadiusEstimate:
    return RadiusEstimate(d["radius"], tuple(d["bracket"]), d["family"], d["functional"], d["members"])


def certificate_to_dict(rep: CertificateReport) -> dict:
    return {
        "passed": rep.passed,
        "entries": [
            {
                "name": e.name,
                "claim": e.claim,
                "expected": _plain(e.expected),
                "computed": _plain(e.computed),
                "passed": e.passed,
            }
            for e in rep.entries
        ],
    }


def certificate_from_dict(d: dict) -> CertificateReport:
    return CertificateReport(
        [CertificateEntry(e["name"], e["claim"], e["expected"], e["computed"], e["passed"])
         for e in d["entries"]]
    )


def sharpness_to_dict(p: SharpnessProbe) -> dict:
    return {
        "theorem": p.theorem,
        "delta": p.delta,
        "extremal_a": p.extremal_a,
        "extremal_r": p.extremal_r,
        "excess": _num(p.excess),
        "predicted": p.predicted,
        "violations": p.violations,
        "passed": p.passed,
    }


def sharpness_from_dict(d: dict) -> SharpnessProbe:
    return SharpnessProbe(d["theorem"], d["delta"], d["extremal_a"], d["extremal_r"],
                          d["excess"], d["predicted"], d["violations"])


def document(command: str, config: dict, results, seed=None) -> dict:
    return {
        "command": command,
        "config": _plain(config),
        "environment": environment_stamp(seed),
        "results": results,
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def format_float(x) -> str:
    if x is None or not math.isfinite(x):
        return "nan"
    return repr(float(x)) if float(x).is_integer() else format(float(x), ".17g")


def sweep_csv(rows) -> str:
    """Rows of ``(a, r, value, tail_bound, margin)`` as CSV with a trailing newline."""
    out = io.StringIO()
    out.write(",".join(SWEEP_HEADER) + "\n")
    for row in rows:
        out.write(",".join(format_float(v) for v in row) + "\n")
    return out.getvalue()


def summary_csv(reports) -> str:
    out = io.StringIO()
    out.write("target,passed,max_value,margin,violations,checks\n")
    for rep in reports:
        out.write(
            f"{rep.target},{str(rep.passed).lower()},{format_float(rep.max_value)},"
            f"{format_float(rep.margin)},{len(rep.violations)},{rep.checks}\n"
        )
    return out.getvalue()
