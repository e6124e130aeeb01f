"""
Command line entry point.

    catdiscord sweep       discord / correlations over a (p, rsq) grid
    catdiscord trajectory  concurrence and discord under dephasing
    catdiscord report      every measure at a single (p, rsq) point
    catdiscord verify      Fock-oracle and Koashi-Winter checks

Exit codes: 0 success, 1 validation or verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import fock_oracle
from .cat_damping import CatDampingParams, bloch_correlations, damped_bell_xstate, rank2_decomposition
from .correlations import (
    DEFAULT_GRID,
    classical_correlation,
    concurrence_wootters,
    concurrence_xstate,
    entanglement_of_formation,
    koashi_winter_smin,
    minimize_conditional_entropy,
    mutual_information,
    quantum_discord_closed,
    quantum_discord_numeric,
    rho_bc,
)
from .density import bloch_from_xstate
from .dephasing import DephasingParams, concurrence_t, dephase, sudden_death_time, trajectory
from .errors import DomainError, TruncationWarning

SWEEP_COLUMNS = (
    "p",
    "rsq",
    "mutual_information",
    "classical_correlation",
    "discord_closed",
    "discord_numeric",
    "abs_gap",
    "concurrence",
)
TRAJECTORY_COLUMNS = ("t", "gamma", "concurrence_closed", "concurrence_wootters", "discord_numeric")
DEFAULT_RSQ = tuple(round(0.1 * k, 10) for k in range(11))


def fmt(x: float) -> str:
    """12 significant digits, locale independent."""
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    out = f"{float(x):.12g}"
    return "0" if out == "-0" else out


def _json_value(x):
    if isinstance(x, float):
        if math.isinf(x) or math.isnan(x):
            return fmt(x)
        return float(fmt(x))
    return x


@dataclass(frozen=True)
class SweepConfig:
    p_min: float = 0.05
    p_max: float = 0.95
    p_steps: int = 19
    rsq_values: Sequence[float] = DEFAULT_RSQ
    output_path: Optional[str] = None
    format: str = "csv"
    workers: int = 1

    def validate(self):
        if not (0.0 <= self.p_min < self.p_max <= 1.0):
            raise DomainError("need 0 <= p_min < p_max <= 1")
        if self.p_steps < 2:
            raise DomainError("p_steps must be at least 2")
        if not self.rsq_values or any(not 0.0 <= r <= 1.0 for r in self.rsq_values):
            raise DomainError("rsq values must lie in [0, 1]")
        if self.format not in ("csv", "json"):
            raise DomainError(f"unknown format {self.format!r}")

    def p_grid(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, self.p_steps)


@dataclass(frozen=True)
class TrajectoryConfig:
    p: float = 0.5
    rsq: float = 0.5
    gamma_rate: float = 1.0
    t_max: float = 4.0
    t_steps: int = 81
    output_path: Optional[str] = None
    format: str = "csv"

    def validate(self):
        CatDampingParams(self.p, self.rsq)
        if not self.gamma_rate > 0:
            raise DomainError("gamma rate must be positive")
        if not self.t_max > 0:
            raise DomainError("t_max must be positive")
        if self.t_steps < 2:
            raise DomainError("t_steps must be at least 2")
        if self.format not in ("csv", "json"):
            raise DomainError(f"unknown format {self.format!r}")

    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.t_steps)


def sweep_row(p: float, rsq: float) -> dict:
    params = CatDampingParams(p, rsq)
    closed = quantum_discord_closed(params)
    numeric = quantum_discord_numeric(damped_bell_xstate(params)).discord
    return {
        "p": p,
        "rsq": rsq,
        "mutual_information": mutual_information(params),
        "classical_correlation": classical_correlation(params),
        "discord_closed": closed,
        "discord_numeric": numeric,
        "abs_gap": abs(closed - numeric),
        "concurrence": concurrence_xstate(damped_bell_xstate(params)),
    }


def _sweep_row_star(args):
    return sweep_row(*args)


def cmd_sweep(config: SweepConfig) -> list[dict]:
    config.validate()
    points = [(float(p), float(r)) for p in config.p_grid() for r in config.rsq_values]
    if config.workers > 1:
        with ProcessPoolExecutor(config.workers) as pool:
            return list(pool.map(_sweep_row_star, points, chunksize=8))
    return [sweep_row(p, r) for p, r in points]


def cmd_trajectory(config: TrajectoryConfig) -> tuple[float, list[dict]]:
    config.validate()
    params = CatDampingParams(config.p, config.rsq)
    t0 = sudden_death_time(params, config.gamma_rate)
    rows = [
        {
            "t": pt.time,
            "gamma": pt.gamma,
            "concurrence_closed": pt.concurrence_closed,
            "concurrence_wootters": pt.concurrence,
            "discord_numeric": pt.discord,
        }
        for pt in trajectory(params, config.gamma_rate, config.times())
    ]
    return t0, rows


def cmd_report(p: float, rsq: float) -> dict:
    params = CatDampingParams(p, rsq)
    X = damped_bell_xstate(params)
    report = quantum_discord_numeric(X)
    closed = quantum_discord_closed(params)
    lam1, lam2 = rank2_decomposition(params).values
    bloch = bloch_correlations(params)
    return {
        "p": p,
        "rsq": rsq,
        "mutual_information": report.mutual_information,
        "classical_correlation": report.classical_correlation,
        "classical_correlation_closed": classical_correlation(params),
        "discord_closed": closed,
        "discord_numeric": report.discord,
        "abs_gap": abs(closed - report.discord),
        "smin_numeric": report.smin,
        "smin_koashi_winter": koashi_winter_smin(params),
        "concurrence": report.concurrence,
        "theta_opt": report.optimal_angles.theta,
        "phi_opt": report.optimal_angles.phi,
        "lambda1": lam1,
        "lambda2": lam2,
        "R30": bloch.R30,
        "R03": bloch.R03,
        "R11": bloch.R11,
        "R22": bloch.R22,
        "R33": bloch.R33,
    }


# -- verification suite -------------------------------------------------------


@dataclass
class Check:
    name: str
    deviation: float
    tolerance: float
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance


@dataclass
class VerifyResult:
    checks: list[Check] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def cmd_verify(dim: int = fock_oracle.DEFAULT_DIM, tolerance: float = 1e-10) -> VerifyResult:
    """Fock-oracle agreement (at ``tolerance``) plus Koashi-Winter checks (at 1e-8)."""
    if dim < 20:
        raise DomainError("dim must be at least 20")
    result = VerifyResult()
    for alpha in (0.5, 1.0, 1.5):
        if dim < fock_oracle.recommended_dim(alpha):
            result.warnings.append(
                f"truncation: dim={dim} below recommended {fock_oracle.recommended_dim(alpha)} "
                f"for |alpha|={alpha} (tail bound {fock_oracle.truncation_bound(alpha, dim):.2e})"
            )
        worst, deficit = 0.0, 0.0
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", TruncationWarning)
            for rsq in (0.0, 0.25, 0.5, 0.75, 1.0):
                params = CatDampingParams.from_alpha(alpha, rsq)
                out = fock_oracle.damped_bell_matrix(alpha, rsq, dim)
                worst = max(worst, float(np.abs(out.matrix - damped_bell_xstate(params).to_array()).max()))
                deficit = max(deficit, abs(out.deficit))
        for w in {str(w.message) for w in caught}:
            result.warnings.append(f"truncation: {w}")
        result.checks.append(
            Check(f"fock_oracle |alpha|={alpha}", worst, tolerance, f"max trace deficit {deficit:.2e}")
        )

    kw_num, kw_bc = 0.0, 0.0
    for p in np.arange(1, 20) * 0.05:
        for rsq in np.arange(11) * 0.1:
            params = CatDampingParams(float(p), float(rsq))
            smin = koashi_winter_smin(params)
            num, _ = minimize_conditional_entropy(bloch_from_xstate(damped_bell_xstate(params)))
            kw_num = max(kw_num, abs(num - smin))
            eof = entanglement_of_formation(concurrence_wootters(rho_bc(params).to_array()))
            kw_bc = max(kw_bc, abs(eof - smin))
    result.checks.append(Check("koashi_winter numeric minimum", kw_num, 1e-8))
    result.checks.append(Check("koashi_winter rho_BC formation", kw_bc, 1e-8))

    dev = 0.0
    for p in (0.1, 0.25, 0.5, 0.75, 0.9):
        for rsq in (0.25, 0.5, 0.75):
            params = CatDampingParams(p, rsq)
            X = damped_bell_xstate(params)
            for gt in np.linspace(0.0, 3.0, 10):
                d = DephasingParams(1.0, float(gt))
                dev = max(dev, abs(concurrence_t(params, d) - concurrence_wootters(dephase(X, d).to_array())))
    result.checks.append(Check("dephasing concurrence closed vs Wootters", dev, 1e-10))
    return result


def render_verify(result: VerifyResult) -> str:
    lines = []
    for c in result.checks:
        status = "PASS" if c.passed else "FAIL"
        extra = f"  ({c.note})" if c.note else ""
        lines.append(f"{status}  {c.name}: deviation={c.deviation:.3e} tol={c.tolerance:.1e}{extra}")
    for w in result.warnings:
        lines.append(f"WARN  {w}")
    failed = [c for c in result.checks if not c.passed]
    if failed:
        c = failed[0]
        lines.append(f"FAILED: {len(failed)} check(s); first: {c.name} deviation {c.deviation:.3e} > {c.tolerance:.1e}")
    else:
        lines.append(f"OK: {len(result.checks)} checks passed")
    return "\n".join(lines) + "\n"


# -- output -------------------------------------------------------------------


def render_csv(columns: Sequence[str], rows: Sequence[dict], comments: Sequence[str] = ()) -> str:
    buf = io.StringIO()
    for c in comments:
        buf.write(f"# {c}\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(fmt(row[c]) for c in columns) + "\n")
    return buf.getvalue()


def render_json(payload) -> str:
    def convert(obj):
        if isinstance(obj, dict):
            return {k: convert(v) for k, v in obj.items()}
        if isinstance(obj, (list, tuple)):
            return [convert(v) for v in obj]
        return _json_value(obj)

    return json.dumps(convert(payload), indent=2) + "\n"


def _emit(text: str, path: Optional[str]):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="catdiscord", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", default=None, help="output file (default: stdout)")

    sp = sub.add_parser("sweep", help="correlations over a (p, rsq) grid")
    sp.add_argument("--p-min", type=float, default=0.05)
    sp.add_argument("--p-max", type=float, default=0.95)
    sp.add_argument("--p-steps", type=int, default=19)
    sp.add_argument("--rsq", type=_float_list, default=list(DEFAULT_RSQ), help="comma-separated r^2 values")
    sp.add_argument("--workers", type=int, default=1)
    add_output(sp)

    tp = sub.add_parser("trajectory", help="dephasing dynamics of one state")
    tp.add_argument("--p", type=float, default=0.5)
    tp.add_argument("--rsq", type=float, default=0.5)
    tp.add_argument("--gamma-rate", type=float, default=1.0)
    tp.add_argument("--t-max", type=float, default=4.0)
    tp.add_argument("--t-steps", type=int, default=81)
    add_output(tp)

    rp = sub.add_parser("report", help="all measures at one point")
    rp.add_argument("--p", type=float, required=True)
    rp.add_argument("--rsq", type=float, required=True)
    rp.add_argument("--format", choices=("text", "json"), default="text")
    rp.add_argument("--output", default=None)

    vp = sub.add_parser("verify", help="oracle and Koashi-Winter checks")
    vp.add_argument("--dim", type=int, default=fock_oracle.DEFAULT_DIM)
    vp.add_argument("--tol", type=float, default=1e-10)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "sweep":
            cfg = SweepConfig(args.p_min, args.p_max, args.p_steps, args.rsq, args.output, args.format, args.workers)
            rows = cmd_sweep(cfg)
            text = render_csv(SWEEP_COLUMNS, rows) if cfg.format == "csv" else render_json({"rows": rows})
            _emit(text, cfg.output_path)
        elif args.command == "trajectory":
            cfg = TrajectoryConfig(
                args.p, args.rsq, args.gamma_rate, args.t_max, args.t_steps, args.output, args.format
            )
            t0, rows = cmd_trajectory(cfg)
            if cfg.format == "csv":
                text = render_csv(TRAJECTORY_COLUMNS, rows, [f"t0={fmt(t0)}"])
            else:
                text = render_json({"t0": t0, "rows": rows})
            _emit(text, cfg.output_path)
        elif args.command == "report":
            rep = cmd_report(args.p, args.rsq)
            if args.format == "json":
                text = render_json(rep)
            else:
                width = max(len(k) for k in rep)
                text = "".join(f"{k:<{width}}  {fmt(v)}\n" for k, v in rep.items())
            _emit(text, args.output)
        elif args.command == "verify":
            result = cmd_verify(args.dim, args.tol)
            sys.stdout.write(render_verify(result))
            return 0 if result.passed else 1
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
