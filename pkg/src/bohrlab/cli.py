"""Command-line front end.

Commands: ``constants``, ``verify``, ``sweep``, ``radius``, ``sharpness`` and
``certify``.  Exit codes are 0 when everything holds, 1 for a bad invocation
and 2 when a violation (or failed certificate) is found.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import functionals as fn
from . import reports
from .constants import constant_for, lemma_sign_certificates
from .series import DEFAULT_ORDER, MoebiusParam, moebius_series
from .verifiers import (
    LEMMA1_N,
    LEMMA4_J,
    LEMMA4_K,
    SUITES,
    TOLERANCE,
    SweepGrid,
    estimate_radius,
    sharpness_probe,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2

COMMANDS = ("constants", "verify", "sweep", "radius", "sharpness", "certify")
CONSTANT_TARGETS = ("psi", "phi", "viniti", "all")
VERIFY_TARGETS = tuple(SUITES) + ("all",)
SWEEP_TARGETS = ("A", "B", "bohr", "area")
SHARPNESS_TARGETS = ("thm1", "thm2", "all")
SHARPNESS_DELTAS = (1e-3, 1e-2, 0.5)

SWEEP_A_DEFAULT = "0:0.95:20"
SWEEP_R_DEFAULT = "0.05:0.5:10"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Range:
    lo: float
    hi: float
    n: Optional[int]

    @classmethod
    def parse(cls, text: str) -> "Range":
        """``lo``, ``lo:hi`` or ``lo:hi:n``.  A bare value is a single point."""
        parts = text.split(":")
        if not 1 <= len(parts) <= 3:
            raise UsageError(f"bad range {text!r}, expected lo[:hi[:n]]")
        try:
            lo = float(parts[0])
            hi = float(parts[1]) if len(parts) > 1 else lo
            n = int(parts[2]) if len(parts) > 2 else (1 if len(parts) == 1 else None)
        except ValueError as exc:
            raise UsageError(f"bad range {text!r}: {exc}") from None
        if lo > hi:
            raise UsageError(f"range {text!r} has lo > hi")
        if n is not None and n < 1:
            raise UsageError(f"range {text!r} needs a positive count")
        return cls(lo, hi, n)

    def values(self, default_n: int) -> np.ndarray:
        n = self.n if self.n is not None else default_n
        if n == 1 or self.lo == self.hi:
            return np.array([self.lo if self.lo == self.hi else self.hi])
        return np.linspace(self.lo, self.hi, n)


@dataclass(frozen=True)
class RunConfig:
    command: str
    target: Optional[str] = None
    a: Optional[str] = None
    r: Optional[str] = None
    samples: int = 1000
    seed: int = 42
    truncation: int = DEFAULT_ORDER
    tol: float = TOLERANCE
    lam: Optional[float] = None
    mu: Optional[float] = None
    b: float = 1.0
    k: Optional[int] = None
    j: Optional[int] = None
    N: Optional[int] = None
    delta: Optional[tuple] = None
    family: str = "moebius"
    functional: str = "bohr"
    a_max: Optional[float] = None
    out: Optional[str] = None
    format: str = "json"
    timing: bool = False

    def __post_init__(self):
        if self.samples < 0:
            raise UsageError("--samples must be >= 0")
        if self.truncation < 1:
            raise UsageError("--truncation must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise UsageError("--seed must be a 64-bit unsigned integer")
        if not self.tol > 0:
            raise UsageError("--tol must be positive")
        for name in ("lam", "mu"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise UsageError(f"--{'lambda' if name == 'lam' else name} must be >= 0")
        if not 0 < self.b <= 1:
            raise UsageError("--b must lie in (0, 1]")
        if self.k is not None and self.k < 0:
            raise UsageError("--k must be >= 0")
        if self.j is not None and self.j < 1:
            raise UsageError("--j must be >= 1")
        if self.N is not None and self.N < 1:
            raise UsageError("--N must be >= 1")
        if self.a_max is not None and not 0 <= self.a_max < 1:
            raise UsageError("--a-max must lie in [0, 1)")

    def echo(self) -> dict:
        d = dataclasses.asdict(self)
        d.pop("timing")
        d.pop("out")
        return d

    def grid(self) -> SweepGrid:
        kw = {"samples": self.samples, "seed": self.seed,
              "truncation": self.truncation, "tolerance": self.tol}
        if self.a is not None:
            a = Range.parse(self.a)
            kw.update(a_lo=a.lo, a_hi=a.hi)
            if a.n is not None:
                kw["a_n"] = a.n
        if self.a_max is not None:
            kw["a_hi"] = self.a_max
            kw.setdefault("a_lo", 0.0)
        if self.r is not None:
            r = Range.parse(self.r)
            kw.update(r_lo=r.lo, r_hi=r.hi)
            if r.n is not None:
                kw["r_n"] = r.n
        try:
            return SweepGrid(**kw)
        except ValueError as exc:
            raise UsageError(str(exc)) from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bohrlab", description="Numerical checks of refined Bohr-type inequalities.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("target", nargs="?")
    p.add_argument("--a", help="Moebius parameter range lo[:hi[:n]]")
    p.add_argument("--r", help="radius range lo[:hi[:n]]")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--truncation", type=int, default=DEFAULT_ORDER)
    p.add_argument("--tol", type=float, default=TOLERANCE,
                   help="violation tolerance (verify) or bisection tolerance (radius)")
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--mu", type=float)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--k", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--delta", type=float, action="append",
                   help="constant increment for sharpness probes (repeatable)")
    p.add_argument("--family", choices=("moebius", "blaschke"), default="moebius")
    p.add_argument("--functional", choices=("bohr", "A", "B"), default="bohr")
    p.add_argument("--a-max", dest="a_max", type=float)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--timing", action="store_true", help="include wall-clock times in reports")
    return p


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    d = vars(ns)
    if d["delta"] is not None:
        d["delta"] = tuple(d["delta"])
    return RunConfig(**d)


def _require_target(cfg, allowed, default=None):
    target = cfg.target if cfg.target is not None else default
    if target not in allowed:
        raise UsageError(f"{cfg.command} target must be one of {', '.join(allowed)}; got {target!r}")
    return target


# Commands return (text, exit code).


def cmd_constants(cfg: RunConfig):
    target = _require_target(cfg, CONSTANT_TARGETS, "all")
    names = ("psi", "phi", "viniti") if target == "all" else (target,)
    results = {name: reports.constant_to_dict(constant_for(name)) for name in names}
    doc = reports.document("constants", cfg.echo(), results if target == "all" else results[target])
    return reports.dumps(doc), EXIT_OK


def _suite_kwargs(name, cfg):
    if name == "thm1" and cfg.lam is not None:
        return {"lam": cfg.lam}
    if name == "thm2" and cfg.mu is not None:
        return {"mu": cfg.mu}
    if name == "thm3" and cfg.k is not None:
        return {"k": cfg.k}
    if name == "thm7":
        return {"b": cfg.b}
    if name == "lemma1":
        return {"N": LEMMA1_N if cfg.N is None else (cfg.N,)}
    if name == "lemma4":
        return {"j": LEMMA4_J if cfg.j is None else (cfg.j,),
                "k": LEMMA4_K if cfg.k is None else (cfg.k,)}
    return {}


def cmd_verify(cfg: RunConfig):
    target = _require_target(cfg, VERIFY_TARGETS)
    grid = cfg.grid()
    names = tuple(SUITES) if target == "all" else (target,)
    try:
        results = [SUITES[name](grid, **_suite_kwargs(name, cfg)) for name in names]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    code = EXIT_OK if all(rep.passed for rep in results) else EXIT_VIOLATION
    if cfg.format == "csv":
        return reports.summary_csv(results), code
    body = {rep.target: reports.inequality_report_to_dict(rep, cfg.timing) for rep in results}
    payload = {"passed": code == EXIT_OK, "suites": body}
    return reports.dumps(reports.document("verify", cfg.echo(), payload, cfg.seed)), code


def sweep_rows(functional, a_values, r_values, truncation=DEFAULT_ORDER, lam=None, mu=None):
    """Rows ``(a, r, value, tail_bound, margin)`` for the Moebius map with parameter ``a``.

    Values come from the truncated series; margins are ``1 - value`` except for
    ``area``, where the margin is taken against the sharp area bound.
    """
    lam = constant_for("psi").derived_constant if lam is None else lam
    mu = constant_for("phi").derived_constant if mu is None else mu
    r = np.asarray(r_values, dtype=float)
    rows = []
    for a in a_values:
        f = moebius_series(MoebiusParam(float(a)), truncation)
        if functional == "A":
            values, tails = fn.functional_A_grid(f, r, lam)
            bound = np.ones_like(r)
        elif functional == "B":
            values, tails = fn.functional_B_grid(f, r, mu)
            bound = np.ones_like(r)
        elif functional == "bohr":
            values, tails = fn.bohr_sum_grid(f, r)
            bound = np.ones_like(r)
        elif functional == "area":
            values, tails = fn.area_ratio_grid(f, r)
            bound = fn.area_bound(float(a), r)
        else:
            raise UsageError(f"unknown functional {functional!r}")
        for ri, v, t, bnd in zip(r, values, tails, bound):
            rows.append((float(a), float(ri), float(v), float(t), float(bnd - v)))
    return rows


def cmd_sweep(cfg: RunConfig):
    functional = _require_target(cfg, SWEEP_TARGETS)
    a = Range.parse(cfg.a or SWEEP_A_DEFAULT)
    r = Range.parse(cfg.r or SWEEP_R_DEFAULT)
    a_values, r_values = a.values(20), r.values(10)
    if np.any(a_values < 0) or np.any(a_values >= 1):
        raise UsageError("--a values must lie in [0, 1)")
    if np.any(r_values < 0) or np.any(r_values >= 1):
        raise UsageError("--r values must lie in [0, 1)")
    rows = sweep_rows(functional, a_values, r_values, cfg.truncation, cfg.lam, cfg.mu)
    if cfg.format == "csv":
        return reports.sweep_csv(rows), EXIT_OK
    payload = [dict(zip(reports.SWEEP_HEADER, row)) for row in rows]
    return reports.dumps(reports.document("sweep", cfg.echo(), payload)), EXIT_OK


def cmd_radius(cfg: RunConfig):
    grid = cfg.grid()
    tol = 1e-6 if cfg.tol == TOLERANCE else cfg.tol
    try:
        est = estimate_radius(cfg.family, cfg.functional, grid, tol=tol, lam=cfg.lam, mu=cfg.mu)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    doc = reports.document("radius", cfg.echo(), reports.radius_to_dict(est), cfg.seed)
    return reports.dumps(doc), EXIT_OK


def cmd_sharpness(cfg: RunConfig):
    """Raise each sharp constant and check that the predicted violation appears.

    Exit 0 means every probe behaved as predicted (the inequality is sharp).
    """
    target = _require_target(cfg, SHARPNESS_TARGETS, "all")
    theorems = ("thm1", "thm2") if target == "all" else (target,)
    deltas = cfg.delta or SHARPNESS_DELTAS
    if any(d <= 0 for d in deltas):
        raise UsageError("--delta must be positive")
    grid = cfg.grid()
    probes = [sharpness_probe(t, d, grid) for t in theorems for d in deltas]
    ok = all(p.passed for p in probes)
    payload = {"passed": ok, "probes": [reports.sharpness_to_dict(p) for p in probes]}
    doc = reports.document("sharpness", cfg.echo(), payload)
    return reports.dumps(doc), EXIT_OK if ok else EXIT_VIOLATION


def cmd_certify(cfg: RunConfig):
    rep = lemma_sign_certificates()
    doc = reports.document("certify", cfg.echo(), reports.certificate_to_dict(rep))
    return reports.dumps(doc), EXIT_OK if rep.passed else EXIT_VIOLATION


HANDLERS = {
    "constants": cmd_constants,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "radius": cmd_radius,
    "sharpness": cmd_sharpness,
    "certify": cmd_certify,
}


def run(argv=None):
    """Parse ``argv`` and run the command.  Returns ``(output text, exit code)``."""
    cfg = parse_config(argv)
    return HANDLERS[cfg.command](cfg)


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
        text, code = HANDLERS[cfg.command](cfg)
    except UsageError as exc:
        print(f"bohrlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    if cfg.out is None:
        sys.stdout.write(text)
        return code
    try:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"bohrlab: error: cannot write {cfg.out}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return code


if __name__ == "__main__":
    sys.exit(main())
