"""Command line interface.

Exit status is 0 on success, 1 when a verification fails and 2 on usage or
parse errors. Floats are printed with 12 significant digits.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import thermo, verify
from .opexpr import OpSyntaxError, parse_op
from .qnum import QContext

FIGURE_KS = (2, 3, 4, 5, 10)


class UsageError(Exception):
    pass


def fmt(x) -> str:
    if x is None:
        return "inf"
    return f"{x:.12g}"


def _k_label(k):
    return "inf" if k is None else str(k)


def _write(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _report(checks) -> int:
    for c in checks:
        print(c.line())
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return 0 if failed == 0 else 1


def cmd_verify(args) -> int:
    if args.target == "algebra":
        checks = verify.algebra_suite(args.k, args.m, alpha=args.alpha, seed=args.seed)
    elif args.target == "identity":
        checks = verify.identity_suite(args.k, args.m, alpha=args.alpha)
    else:
        if args.op is not None:
            parse_op(args.op)
        checks = verify.trace_suite(args.k, args.m, trials=args.trials, seed=args.seed,
                                    alpha=args.alpha, op=args.op)
    return _report(checks)


def _single_value(ctx, observable, prime, eps, beta):
    if prime:
        return thermo.partition_single_prime(ctx, eps, beta)
    if observable == "z":
        return thermo.partition_single(ctx, eps, beta)
    if observable == "energy":
        return thermo.mean_energy_single(ctx, eps, beta)
    return thermo.specific_heat_single(ctx, eps, beta)


def cmd_thermo_single(args) -> int:
    ctx = QContext(args.k)
    if args.prime and args.observable != "z":
        raise UsageError("--prime is only available with --observable z")
    if args.beta is not None:
        if args.t_min is not None or args.t_max is not None or args.points is not None:
            raise UsageError("give either --beta or a temperature grid, not both")
        if args.beta < 0:
            raise UsageError("--beta must be nonnegative")
        betas = [args.beta]
    else:
        if None in (args.t_min, args.t_max, args.points):
            raise UsageError("a temperature grid needs --t-min, --t-max and --points")
        if args.t_min <= 0 or args.t_max <= args.t_min or args.points < 1:
            raise UsageError("need 0 < t-min < t-max and points >= 1")
        betas = [1.0 / t for t in np.linspace(args.t_min, args.t_max, args.points)]
    rows = []
    for b in betas:
        value = _single_value(ctx, args.observable, args.prime, args.eps, b)
        rows.append((math.inf if b == 0 else 1.0 / b, b, value))
    if args.format == "json":
        # infinite temperature (beta = 0) is written as null
        data = [{"T": t if math.isfinite(t) else None, "beta": b, "value": v, "k": args.k} for t, b, v in rows]
        text = json.dumps(data, indent=1) + "\n"
    else:
        text = _csv(["T", "value", "k"], [(fmt(t), fmt(v), args.k) for t, _, v in rows])
    _write(text, args.out)
    return 0


def _read_levels(path: str) -> list[float]:
    levels = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            levels.append(float(line))
        except ValueError:
            raise UsageError(f"{path}:{lineno}: not a real number: {line!r}") from None
    if not levels:
        raise UsageError(f"{path}: no levels found")
    return levels


def cmd_thermo_grand(args) -> int:
    ctx = QContext(args.k)
    if args.beta <= 0:
        raise UsageError("--beta must be positive")
    levels = _read_levels(args.levels)
    if args.occupation:
        rows = [(j, e, thermo.mean_occupation(ctx, e, args.mu, args.beta)) for j, e in enumerate(levels, 1)]
        if args.format == "json":
            text = json.dumps([{"level": j, "eps": e, "value": v, "k": args.k} for j, e, v in rows], indent=1) + "\n"
        else:
            text = _csv(["level", "eps", "value", "k"], [(j, fmt(e), fmt(v), args.k) for j, e, v in rows])
    else:
        z = thermo.grand_partition(ctx, levels, args.mu, args.beta)
        if args.format == "json":
            text = json.dumps([{"T": 1.0 / args.beta, "beta": args.beta, "value": z, "k": args.k}], indent=1) + "\n"
        else:
            text = _csv(["T", "value", "k"], [(fmt(1.0 / args.beta), fmt(z), args.k)])
    _write(text, args.out)
    return 0


def figure_data(which: int) -> tuple[str, list[str], list[tuple]]:
    """File name, header and rows for one of the three figure data sets."""
    ks = list(FIGURE_KS) + [None]
    if which in (1, 2):
        temps = np.geomspace(0.02, 200.0, 400)
        kind = "mean_energy" if which == 1 else "specific_heat"
        points = thermo.emit_curve(kind, ks, temps, eps=1.0)
        rows = [(fmt(p.T), fmt(p.value), _k_label(p.k)) for p in points]
        name = "fig1_mean_energy.csv" if which == 1 else "fig2_specific_heat.csv"
        return name, ["T", "value", "k"], rows
    if which == 3:
        energies = np.linspace(-1.0, 2.0, 301)
        points = thermo.emit_curve("occupation", ks, energies, mu=0.0, beta=20.0)
        rows = [(fmt(p.eps), fmt(p.value), _k_label(p.k)) for p in points]
        return "fig3_occupation.csv", ["eps", "value", "k"], rows
    raise UsageError(f"unknown figure {which}")


def cmd_figures(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for which in (args.which or [1, 2, 3]):
        name, header, rows = figure_data(which)
        (out / name).write_text(_csv(header, rows))
        print(out / name)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paragrass",
        description="q-boson coherent states, para-Grassmann integration and q-boson thermodynamics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run verification suites")
    vsub = p_verify.add_subparsers(dest="target", required=True)
    for name, help_ in (("algebra", "operator and para-Grassmann identities"),
                        ("identity", "resolution of unity, orthonormality, symbol calculus"),
                        ("trace", "symbolic trace against the matrix trace")):
        p = vsub.add_parser(name, help=help_)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--alpha", type=float, default=1.0, required=(name == "algebra"))
        if name != "identity":
            p.add_argument("--seed", type=int, default=0)
        if name == "trace":
            p.add_argument("--trials", type=int, required=True)
            p.add_argument("--op", help="check a single operator expression instead of random ones")
        p.set_defaults(func=cmd_verify)

    p_thermo = sub.add_parser("thermo", help="thermodynamic observables")
    tsub = p_thermo.add_subparsers(dest="system", required=True)
    p = tsub.add_parser("single", help="one oscillator H = eps N (or eps ad a with --prime)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--beta", type=float)
    p.add_argument("--t-min", type=float)
    p.add_argument("--t-max", type=float)
    p.add_argument("--points", type=int)
    p.add_argument("--observable", choices=["z", "energy", "cv"], default="z")
    p.add_argument("--prime", action="store_true", help="use the spectrum [n]_q eps")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_thermo_single)

    p = tsub.add_parser("grand", help="grand canonical ensemble of independent levels")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--levels", required=True, help="file with one real level per line")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--occupation", action="store_true", help="print mean occupations per level")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_thermo_grand)

    p = sub.add_parser("figures", help="write the data behind the three figures as CSV")
    p.add_argument("--which", type=int, choices=[1, 2, 3], action="append")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_figures)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, OpSyntaxError, ValueError, OSError) as exc:
        print(f"paragrass: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
