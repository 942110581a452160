"""Command-line front end.

Three subcommands, all with deterministic, machine-readable output:

* ``dispersion``   sweep a (k, inv_bu) grid and tabulate growth rates
* ``convergence``  tabulate the lower-bound ladder r_n for one point
* ``verify``       cross-check the three growth-rate estimators

Floats are printed with 17 significant digits so repeated runs with the same
configuration are byte-identical.  Exit codes: 0 on success, 1 on a
configuration error, 2 when any grid point reports an anomaly (for
``verify``: when the estimators disagree).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Sequence

from .dispersion import growth_lower_bound, solve_dispersion, sweep
from .errors import ShearSpectrumError
from .evolve import integrate
from .model import FlowParams, Profile, jacobi_coefficients
from .oracle import truncated_spectrum
from .orthopoly import negative_root

__all__ = ["SweepConfig", "main", "build_parser",
           "cmd_dispersion", "cmd_convergence", "cmd_verify"]

_DISPERSION_COLUMNS = (
    "k", "inv_bu", "stable", "r", "growth_rate",
    "n_used", "lower_bound_at_n8", "error",
)
_CONVERGENCE_COLUMNS = ("n", "r_n", "growth_lower_bound")


class _ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; this CLI reserves 2 for
    # per-point anomalies, so parse failures are rerouted to status 1
    def error(self, message):
        raise _ConfigError(message)


@dataclass(frozen=True)
class SweepConfig:
    """Resolved grid and output options for the dispersion subcommand."""

    ks: tuple[float, ...]
    inv_bus: tuple[float, ...]
    tol: float
    n_max: int
    fmt: str
    out: str | None


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _cell(x: float | None) -> str:
    return "" if x is None else _fmt(x)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _rows_to_csv(columns: Sequence[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        cells = []
        for col in columns:
            val = row[col]
            if val is None:
                cells.append("")
            elif isinstance(val, bool):
                cells.append("true" if val else "false")
            elif isinstance(val, float):
                cells.append(_fmt(val))
            else:
                cells.append(str(val))
        writer.writerow(cells)
    return buf.getvalue()


def _rows_to_json(rows: list[dict]) -> str:
    return json.dumps(rows, indent=2, sort_keys=True) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="shear-spectrum", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    disp = sub.add_parser("dispersion", help="growth rates over a (k, inv_bu) grid")
    kgrid = disp.add_mutually_exclusive_group()
    disp.add_argument("--k-start", type=float, default=0.1)
    disp.add_argument("--k-stop", type=float, default=0.9)
    disp.add_argument("--k-count", type=int, default=9)
    kgrid.add_argument("--k-list", type=str, default=None,
                       help="comma-separated k values; overrides the range flags")
    disp.add_argument("--inv-bu", type=float, action="append", default=None,
                      help="inverse Burger number; repeatable (default 0)")
    disp.add_argument("--tol", type=float, default=1e-10)
    disp.add_argument("--n-max", type=int, default=16384)
    disp.add_argument("--format", choices=("csv", "json"), default="csv")
    disp.add_argument("--out", type=str, default=None)

    conv = sub.add_parser("convergence", help="lower-bound ladder for one point")
    conv.add_argument("--k", type=float, required=True)
    conv.add_argument("--inv-bu", type=float, default=0.0)
    conv.add_argument("--n-list", type=str,
                      default="1,2,4,8,16,32,64,128,256",
                      help="comma-separated truncation orders")
    conv.add_argument("--tol", type=float, default=1e-12)
    conv.add_argument("--format", choices=("csv", "json"), default="csv")
    conv.add_argument("--out", type=str, default=None)

    verify = sub.add_parser("verify", help="three-way growth-rate cross-check")
    verify.add_argument("--k", type=float, required=True)
    verify.add_argument("--inv-bu", type=float, default=0.0)
    verify.add_argument("--n-trunc", type=int, default=128,
                        help="half-width of the Fourier truncation")
    verify.add_argument("--t-final", type=float, default=400.0)
    verify.add_argument("--dt", type=float, default=0.2)
    verify.add_argument("--seed", type=int, default=12345)
    verify.add_argument("--tol", type=float, default=1e-10)
    verify.add_argument("--out", type=str, default=None)
    return parser


def _parse_k_values(args) -> tuple[float, ...]:
    if args.k_list is not None:
        try:
            ks = tuple(float(tok) for tok in args.k_list.split(",") if tok.strip())
        except ValueError as exc:
            raise _ConfigError(f"bad --k-list: {exc}") from exc
        if not ks:
            raise _ConfigError("--k-list is empty")
        return ks
    if args.k_count < 1:
        raise _ConfigError("--k-count must be >= 1")
    if args.k_count == 1:
        return (args.k_start,)
    step = (args.k_stop - args.k_start) / (args.k_count - 1)
    return tuple(args.k_start + i * step for i in range(args.k_count))


def cmd_dispersion(config: SweepConfig) -> int:
    grid = [FlowParams(k=k, inv_bu=s) for k in config.ks for s in config.inv_bus]
    points = sweep(grid, tol=config.tol, n_max=config.n_max)
    rows = []
    anomalous = False
    for point in points:
        p = point.params
        bound8 = growth_lower_bound(p, 8) if p.k < 1.0 else None
        if bound8 == 0.0:
            bound8 = None
        r_val = None
        if point.r_trace.roots:
            r_val = point.r_trace.r_limit
            if r_val is None:
                r_val = point.r_trace.roots[-1]
        if point.anomaly is not None:
            anomalous = True
        rows.append({
            "k": p.k,
            "inv_bu": p.inv_bu,
            "stable": point.stable,
            "r": r_val,
            "growth_rate": point.growth_rate,
            "n_used": point.n_used,
            "lower_bound_at_n8": bound8,
            "error": point.anomaly,
        })
    if config.fmt == "json":
        text = _rows_to_json(rows)
    else:
        text = _rows_to_csv(_DISPERSION_COLUMNS, rows)
    _emit(text, config.out)
    return 2 if anomalous else 0


def cmd_convergence(k: float, inv_bu: float, n_list: Sequence[int],
                    tol: float = 1e-12, fmt: str = "csv",
                    out: str | None = None) -> int:
    params = FlowParams(k=k, inv_bu=inv_bu)
    coeffs = jacobi_coefficients(params, max(n_list))
    rows = []
    for n in n_list:
        r_n = negative_root(coeffs, n, tol)
        rows.append({
            "n": n,
            "r_n": r_n,
            "growth_lower_bound": None if r_n is None else k * math.sqrt(r_n),
        })
    if fmt == "json":
        text = _rows_to_json(rows)
    else:
        text = _rows_to_csv(_CONVERGENCE_COLUMNS, rows)
    _emit(text, out)
    return 0


def cmd_verify(k: float, inv_bu: float, N: int = 128, t_final: float = 400.0,
               dt: float = 0.2, seed: int = 12345, tol: float = 1e-10,
               out: str | None = None) -> int:
    params = FlowParams(k=k, inv_bu=inv_bu)
    point = solve_dispersion(params, tol=tol)
    rate_poly = point.growth_rate
    estimate = truncated_spectrum(Profile.cosine(), params, N)
    rate_spec = k * max(estimate.dominant_imag, 0.0)
    run = integrate(params, N=min(N, 64), dt=dt, t_final=t_final, seed=seed)
    rate_evol = run.fitted_rate

    pairs = (
        ("recurrence_vs_spectrum", rate_poly, rate_spec),
        ("recurrence_vs_evolution", rate_poly, rate_evol),
        ("spectrum_vs_evolution", rate_spec, rate_evol),
    )
    lines = ["method,growth_rate",
             f"recurrence,{_fmt(rate_poly)}",
             f"truncated_spectrum,{_fmt(rate_spec)}",
             f"time_evolution,{_fmt(rate_evol)}"]
    worst = 0.0
    worst_name = pairs[0][0]
    for name, left, right in pairs:
        # relative to the larger magnitude, floored at 1 so that rates that
        # are all numerically zero compare as equal
        delta = abs(left - right) / max(abs(left), abs(right), 1.0)
        if delta > worst:
            worst, worst_name = delta, name
        lines.append(f"delta_{name},{_fmt(delta)}")
    text = "\n".join(lines) + "\n"
    _emit(text, out)
    if worst >= 1e-3:
        print(f"error: estimators disagree: {worst_name} delta={_fmt(worst)}",
              file=sys.stderr)
        return 2
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "dispersion":
            inv_bus = tuple(args.inv_bu) if args.inv_bu else (0.0,)
            config = SweepConfig(
                ks=_parse_k_values(args),
                inv_bus=inv_bus,
                tol=args.tol,
                n_max=args.n_max,
                fmt=args.format,
                out=args.out,
            )
            return cmd_dispersion(config)
        if args.command == "convergence":
            try:
                n_list = [int(tok) for tok in args.n_list.split(",") if tok.strip()]
            except ValueError as exc:
                raise _ConfigError(f"bad --n-list: {exc}") from exc
            if not n_list or any(n < 1 for n in n_list):
                raise _ConfigError("--n-list needs positive integers")
            return cmd_convergence(args.k, args.inv_bu, n_list, tol=args.tol,
                                   fmt=args.format, out=args.out)
        if args.command == "verify":
            return cmd_verify(args.k, args.inv_bu, N=args.n_trunc,
                              t_final=args.t_final, dt=args.dt,
                              seed=args.seed, tol=args.tol, out=args.out)
        raise _ConfigError(f"unknown command {args.command!r}")
    except _ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ShearSpectrumError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
