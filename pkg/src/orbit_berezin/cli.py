"""Command-line front end.

Exit codes: 0 success, 1 failed verification, 2 bad arguments or limits,
3 I/O failure. Results go to stdout as JSON (or CSV); diagnostics go to
stderr. Exact rationals are always serialised as ``"p/q"`` strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from . import exact
from .config import MAX_SCAN_TWICE_J, TOL
from .exact import format_rational
from .halfint import HalfInt

THREADS_ENV = "ORBIT_BEREZIN_THREADS"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _envelope(command, parameters, results):
    return {"command": command, "parameters": parameters, "results": results,
            "toolVersion": __version__}


def _emit_json(obj, out):
    out.write(json.dumps(obj, indent=2) + "\n")


def _emit_csv(header, rows, out):
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _spin(value, twice, name):
    if twice is not None:
        return HalfInt(twice)
    if value is None:
        raise UsageError(f"--{name} (or --{name}{name}) is required")
    try:
        return HalfInt.parse(value)
    except (ValueError, TypeError) as err:
        raise UsageError(str(err)) from None


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


def _threads():
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _ordered_map(fn, items):
    items = list(items)
    if _threads() > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=_threads()) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


# -- spectrum ---------------------------------------------------------------

def cmd_spectrum(args, out):
    j = _spin(args.j, args.jj, "j")
    m = _spin(args.m, args.mm, "m")
    try:
        table = exact.spectrum(j, m)
    except ValueError as err:
        raise UsageError(str(err)) from None
    if args.format == "csv":
        header = ["J", "lambda", "multiplicity"] + (["lambda_float"] if args.float else [])
        rows = []
        for e in table.entries:
            row = [e.J, format_rational(e.value), e.multiplicity]
            if args.float:
                row.append(f"{float(e.value):.15g}")
            rows.append(row)
        _emit_csv(header, rows, out)
    else:
        results = table.to_dict()
        if args.float:
            for entry, e in zip(results["entries"], table.entries):
                entry["lambda_float"] = f"{float(e.value):.15g}"
        _emit_json(_envelope("spectrum", {"j": str(j), "m": str(m)}, results), out)
    return EXIT_OK


# -- scan -------------------------------------------------------------------

def _scan_row(pair):
    tj, d = pair
    j, m = HalfInt(tj), HalfInt(tj - 2 * d)
    values = exact.spectrum(j, m).values
    prof = exact.extrema(values)
    return {
        "j": str(j),
        "d": d,
        "m": str(m),
        "gap": format_rational(1 - max(values[1:])),
        "dominance": all(values[1] > v for v in values[2:]) if tj >= 2 else None,
        "minima": prof.minima,
        "maxima": prof.maxima,
        "n_minima": len(prof.minima),
        "n_maxima": len(prof.maxima),
        "plateaus": prof.plateaus,
    }


def cmd_scan(args, out):
    j_max = _spin(args.j_max, None, "j-max")
    j_min = _spin(args.j_min, None, "j-min")
    if j_max.twice > MAX_SCAN_TWICE_J:
        raise UsageError(f"--j-max exceeds the configured cap {MAX_SCAN_TWICE_J / 2}")
    if j_min.twice < 1:
        raise UsageError("--j-min must be at least 1/2")
    ds = _int_list(args.d_list)
    if any(d < 0 for d in ds):
        raise UsageError("d must be nonnegative")
    twice_values = [j_max.twice] if args.only_max else range(j_min.twice, j_max.twice + 1)
    pairs = [(tj, d) for tj in twice_values for d in ds if d <= tj]
    rows = _ordered_map(_scan_row, pairs)
    if args.format == "csv":
        header = ["j", "d", "m", "gap", "dominance", "n_minima", "n_maxima",
                  "minima", "maxima", "plateaus"]
        _emit_csv(header, [
            [r["j"], r["d"], r["m"], r["gap"], r["dominance"], r["n_minima"], r["n_maxima"],
             " ".join(map(str, r["minima"])), " ".join(map(str, r["maxima"])),
             " ".join(map(str, r["plateaus"]))]
            for r in rows], out)
    else:
        params = {"j_min": str(j_min), "j_max": str(j_max), "d_list": ds,
                  "only_max": args.only_max}
        _emit_json(_envelope("scan", params, rows), out)
    return EXIT_OK


# -- figure1 ----------------------------------------------------------------

def cmd_figure1(args, out):
    j = _spin(args.j, args.jj, "j")
    ds = _int_list(args.d_list)
    outdir = Path(args.out)
    written = []
    for d in ds:
        try:
            values = exact.spectrum(j, HalfInt(j.twice - 2 * d)).values
        except ValueError as err:
            raise UsageError(str(err)) from None
        path = outdir / f"figure1_jj{j.twice}_d{d}.csv"
        try:
            outdir.mkdir(parents=True, exist_ok=True)
            with open(path, "w", newline="", encoding="utf-8") as fh:
                _emit_csv(["J", "lambda_exact", "lambda_float"],
                          [[J, format_rational(v), repr(float(v))] for J, v in enumerate(values)],
                          fh)
        except OSError as err:
            print(f"error: cannot write {path}: {err}", file=sys.stderr)
            return EXIT_IO
        written.append({"d": d, "path": str(path), "rows": len(values)})
    _emit_json(_envelope("figure1", {"j": str(j), "d_list": ds, "out": str(outdir)}, written), out)
    return EXIT_OK


# -- verify -----------------------------------------------------------------

def _verify_exact(args):
    cases = []
    for tj in range(0, int(2 * args.j_max) + 1):
        failures = []
        tables = {tm: exact.spectrum(HalfInt(tj), HalfInt(tm)).values for tm in range(-tj, tj + 1, 2)}
        for tm, vals in tables.items():
            j, m = HalfInt(tj), HalfInt(tm)
            mirror = tables[-tm]
            if vals[0] != 1:
                failures.append(f"m={m}: lambda^(0) != 1")
            if any(not 0 <= v <= 1 for v in vals):
                failures.append(f"m={m}: eigenvalue outside [0, 1]")
            if sum((2 * J + 1) * v for J, v in enumerate(vals)) != tj + 1:
                failures.append(f"m={m}: sum rule fails")
            if tj and vals[1] != Fraction(tm * tm, tj * (tj + 2)):
                failures.append(f"m={m}: lambda^(1) != m^2/(j(j+1))")
            if vals != mirror:
                failures.append(f"m={m}: m -> -m symmetry fails")
            if tm == tj and vals != [exact.highest_weight_closed_form(j, J) for J in range(tj + 1)]:
                failures.append("highest-weight closed form disagrees")
        cases.append({"case": f"j={HalfInt(tj)}", "max_deviation": 0.0 if not failures else None,
                      "failures": failures, "passed": not failures})
    return cases


def _verify_funk_hecke(args):
    from .su2 import funk_hecke_eigenvalue

    cases = []
    for tj in range(0, int(2 * args.j_max) + 1):
        for tm in range(-tj, tj + 1, 2):
            j, m = HalfInt(tj), HalfInt(tm)
            exact_vals = exact.spectrum(j, m).values
            dev = 0.0
            for k in range(tj + 5):
                target = float(exact_vals[k]) if k <= tj else 0.0
                dev = max(dev, abs(funk_hecke_eigenvalue(j, m, k, args.order) - target))
            cases.append({"case": f"j={j},m={m}", "max_deviation": dev,
                          "passed": dev <= TOL.funk_hecke})
    return cases


def _verify_su2(args):
    from .su2 import character_inner_product

    cases = []
    for tj in range(0, int(2 * args.j_max) + 1):
        for tm in range(-tj, tj + 1, 2):
            j, m = HalfInt(tj), HalfInt(tm)
            exact_vals = exact.spectrum(j, m).values
            dev = 0.0
            for tJ in range(0, 2 * tj + 3):
                target = float(exact_vals[tJ // 2]) if tJ % 2 == 0 and tJ // 2 <= tj else 0.0
                value = character_inner_product(j, m, HalfInt(tJ), 2 * tj + 2 * tJ + 8)
                dev = max(dev, abs(value - target))
            cases.append({"case": f"j={j},m={m}", "max_deviation": dev,
                          "passed": dev <= TOL.character_integral})
    return cases


FINITE_CATALOG = ["cyclic(5)", "dihedral(3)", "dihedral(4)", "dihedral(6)", "symmetric3",
                  "quaternion8", "frobenius21"]


def finite_cases(group_name):
    """Catalog (group, irrep index, vector) cases: ``e1`` and a generic vector."""
    from .finite import irreps_of, make_group, normalized

    G = make_group(group_name)
    irreps = irreps_of(G)
    generic = [1.0, 0.5, 1.0 / 3.0]
    cases = []
    for idx, rho in enumerate(irreps):
        d = rho.dimension
        vectors = [np.eye(d)[0]]
        if d > 1:
            vectors.append(normalized(generic[:d]))
        for v in vectors:
            cases.append((G, idx, v, irreps))
    return cases


def _verify_finite(args):
    from .finite import verification_report

    names = FINITE_CATALOG if args.group == "all" else [args.group]
    cases = []
    for name in names:
        for G, idx, v, irreps in finite_cases(name):
            rep = verification_report(G, idx, v, irreps)
            passed = rep["max_deviation"] <= TOL.spectrum_match and rep.get("rank_one", True)
            rep["passed"] = passed
            rep["case"] = f"{rep['group']} irrep {idx} v={np.round(np.real(v), 6).tolist()}"
            cases.append(rep)
    return cases


def _verify_chain(args):
    from .chain import ChainConfig, estimate_lambda1

    cases = []
    for tj, tm, seed in [(1, 1, args.seed), (10, 10, args.seed + 1), (10, 0, args.seed + 2)]:
        j, m = HalfInt(tj), HalfInt(tm)
        est = estimate_lambda1(ChainConfig(j, m, args.steps, seed))
        target = float(exact.eigenvalue(j, m, 1))
        dev = abs(est.lambda1_hat - target)
        cases.append({"case": f"j={j},m={m},seed={seed}", "lambda1_hat": est.lambda1_hat,
                      "std_error": est.std_error, "max_deviation": dev,
                      "passed": dev <= 3 * est.std_error})
    return cases


SUITES = {
    "exact": _verify_exact,
    "funk-hecke": _verify_funk_hecke,
    "finite": _verify_finite,
    "su2-characters": _verify_su2,
    "chain": _verify_chain,
}

SUITE_CAPS = {"exact": 400, "funk-hecke": 40, "su2-characters": 20}


def cmd_verify(args, out):
    if args.j_max is None:
        args.j_max = {"exact": "100", "funk-hecke": "15", "su2-characters": "5"}.get(args.suite, "0")
    try:
        twice = HalfInt.parse(args.j_max).twice
    except (ValueError, TypeError) as err:
        raise UsageError(str(err)) from None
    cap = SUITE_CAPS.get(args.suite)
    if cap is not None and twice > cap:
        raise UsageError(f"--j-max above the {args.suite} cap {Fraction(cap, 2)}")
    args.j_max = Fraction(twice, 2)
    if args.suite == "chain" and args.steps < 1000:
        raise UsageError("--steps must be at least 1000")
    try:
        cases = SUITES[args.suite](args)
    except ValueError as err:
        raise UsageError(str(err)) from None
    failed = [c for c in cases if not c["passed"]]
    deviations = [c["max_deviation"] for c in cases if c.get("max_deviation") is not None]
    summary = {"cases": cases, "n_cases": len(cases), "n_failed": len(failed),
               "max_deviation": max(deviations) if deviations else 0.0}
    params = {"suite": args.suite, "j_max": str(args.j_max), "group": args.group,
              "order": args.order, "steps": args.steps, "seed": args.seed}
    _emit_json(_envelope("verify", params, summary), out)
    for c in failed:
        print(f"FAILED: {args.suite}: {c['case']}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


# -- chain ------------------------------------------------------------------

def cmd_chain(args, out):
    from dataclasses import asdict

    from .chain import MIN_STEPS, ChainConfig, estimate_lambda1, export_trajectory, run_chain

    j = _spin(args.j, args.jj, "j")
    m = _spin(args.m, args.mm, "m")
    if args.steps < MIN_STEPS:
        raise UsageError(f"--steps must be at least {MIN_STEPS}")
    try:
        config = ChainConfig(j, m, args.steps, args.seed, args.burn_in)
    except ValueError as err:
        raise UsageError(str(err)) from None
    est = estimate_lambda1(config)
    if args.export:
        traj, _ = run_chain(config)
        try:
            export_trajectory(args.export, traj)
        except OSError as err:
            print(f"error: cannot write {args.export}: {err}", file=sys.stderr)
            return EXIT_IO
    params = {"j": str(j), "m": str(m), "steps": args.steps, "seed": args.seed,
              "burn_in": config.burn_in, "export": args.export}
    results = asdict(est)
    results["lambda1_exact"] = format_rational(exact.eigenvalue(j, m, 1)) if j.twice else None
    _emit_json(_envelope("chain", params, results), out)
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbit-berezin",
        description="Spectra of Berezin transforms of orbit POVMs.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def spin_args(p, with_m=True):
        p.add_argument("--j", help='spin, e.g. "7/2" or "3.5"')
        p.add_argument("--jj", type=int, help="spin as twice-value, e.g. 7 for j = 7/2")
        if with_m:
            p.add_argument("--m", help="weight, same syntax as --j")
            p.add_argument("--mm", type=int, help="weight as twice-value")

    p = sub.add_parser("spectrum", help="exact spectrum table for one (j, m)")
    spin_args(p)
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.add_argument("--float", action="store_true", help="add 15-digit decimal values")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("scan", help="gap, dominance and extrema over (j, d = j - m)")
    p.add_argument("--j-max", required=True)
    p.add_argument("--j-min", default="1/2")
    p.add_argument("--only-max", action="store_true", help="scan only j = j-max")
    p.add_argument("--d-list", default="0,1,2,3,4")
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("figure1", help="CSV data for the eigenvalue sequences at fixed j")
    spin_args(p, with_m=False)
    p.add_argument("--d-list", default="1,2,3,4")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_figure1)

    p = sub.add_parser("verify", help="run an oracle-equivalence suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--j-max", default=None)
    p.add_argument("--group", default="all", help="finite suite: catalog group or 'all'")
    p.add_argument("--order", type=int, default=200, help="funk-hecke quadrature nodes")
    p.add_argument("--steps", type=int, default=100_000, help="chain suite steps")
    p.add_argument("--seed", type=int, default=20240101, help="chain suite seed")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("chain", help="Monte-Carlo estimate of lambda^(1)")
    spin_args(p)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--burn-in", type=int, default=None)
    p.add_argument("--export", default=None, help="CSV trajectory path")
    p.set_defaults(func=cmd_chain)
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


def run(argv=None) -> tuple[int, str]:
    """Invoke the CLI in-process and capture stdout."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
