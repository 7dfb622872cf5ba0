"""Command-line front end: parameter sweeps, critical-point estimation,
estimator comparison, and figure-dataset emission.

Subcommands: sweep, cp, compare, figure.  All outputs are deterministic:
CSV values carry 12 significant digits and the JSON mirror stores the same
rounded numbers, so re-parsing either yields bit-identical floats.

Exit codes: 0 success, 2 configuration error, 3 model or numeric failure,
4 derivative extremum on the sweep boundary.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import critical, figures
from .critical import MEASURES, MODELS
from .errors import ExtremumOnBoundary, SpinQCorrError, SweepPointFailure

KT_MIN = 1e-3


class ConfigError(Exception):
    pass


def _sig(x: float) -> float:
    """Round through the 12-significant-digit wire format."""
    return float(f"{float(x):.12g}")


def _parse_kt_list(text: str) -> list[float]:
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise ConfigError(f"bad kt list {text!r}: {exc}") from None
    if not values:
        raise ConfigError("empty kt list")
    for v in values:
        if v < KT_MIN:
            raise ConfigError(f"kt must be >= {KT_MIN}, got {v}")
    return values


def _parse_window(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ConfigError(f"window must be 'lo,hi', got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise ConfigError(f"bad window {text!r}: {exc}") from None
    if not lo < hi:
        raise ConfigError(f"window needs lo < hi, got {text!r}")
    return lo, hi


def _parse_measures(text: str | None) -> list[str]:
    if text is None:
        return list(MEASURES)
    chosen = [tok.strip() for tok in text.split(",") if tok.strip()]
    for name in chosen:
        if name not in MEASURES:
            raise ConfigError(f"unknown measure {name!r}; choose from {', '.join(MEASURES)}")
    return [m for m in MEASURES if m in chosen]


_MODEL_FLAGS = {
    "xyz2": ("jx", "jy", "jz", "j", "b"),
    "xxz": ("delta", "h", "j", "length"),
    "xy": ("lam", "gamma", "k"),
}


def _collect_fixed(args, model: str, sweep_param: str | None) -> dict:
    if model not in MODELS:
        raise ConfigError(f"unknown model {model!r}; choose from {', '.join(MODELS)}")
    fixed = {}
    for name in _MODEL_FLAGS[model]:
        value = getattr(args, name, None)
        if value is not None:
            fixed[name] = value
    if getattr(args, "xxx", False):
        if model != "xyz2":
            raise ConfigError("--xxx applies to the xyz2 model only")
        fixed["xxx"] = True
    if sweep_param is not None and sweep_param in fixed:
        raise ConfigError(f"--{sweep_param} cannot be fixed while sweeping it")
    if model == "xyz2" and sweep_param not in ("j", "jx", "jy", "jz"):
        has_triple = all(k in fixed for k in ("jx", "jy", "jz"))
        has_j = "j" in fixed
        if not (has_triple or has_j or (("jx" in fixed) and ("jy" in fixed))):
            raise ConfigError("xyz2 needs couplings: --j (with optional --xxx/--jz) or --jx/--jy/--jz")
    if model == "xxz" and sweep_param != "delta" and "delta" not in fixed:
        raise ConfigError("xxz needs --delta unless sweeping it")
    if model == "xy":
        if sweep_param != "lam" and "lam" not in fixed:
            raise ConfigError("xy needs --lambda unless sweeping it")
        if sweep_param != "gamma" and "gamma" not in fixed:
            raise ConfigError("xy needs --gamma unless sweeping it")
    return fixed


def _require_kt(args, sweeping_kt: bool) -> list[float]:
    if sweeping_kt:
        if args.kt is not None:
            raise ConfigError("--kt conflicts with sweeping kt")
        return [None]
    if args.kt is None:
        raise ConfigError("--kt is required")
    return _parse_kt_list(args.kt)


def _write_sweep_outputs(out_base: str | None, columns, rows, meta) -> None:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(f"{v:.12g}" for v in row))
    text = "\n".join(lines) + "\n"
    if out_base is None:
        sys.stdout.write(text)
        return
    base = Path(out_base)
    base = base.with_suffix("") if base.suffix == ".csv" else base
    base.parent.mkdir(parents=True, exist_ok=True)
    with open(base.with_suffix(".csv"), "w", newline="") as fh:
        fh.write(text)
    mirror = {
        "meta": meta,
        "columns": list(columns),
        "rows": [[_sig(v) for v in row] for row in rows],
    }
    with open(base.with_suffix(".json"), "w") as fh:
        json.dump(mirror, fh, indent=1)
        fh.write("\n")


def cmd_sweep(args) -> int:
    measures = _parse_measures(args.measures)
    if args.steps < 16:
        raise ConfigError(f"--steps must be >= 16, got {args.steps}")
    fixed = _collect_fixed(args, args.model, args.param)
    kt_values = _require_kt(args, sweeping_kt=(args.param == "kt"))
    columns = ["param", "kt"] + measures
    rows = []
    for kt in kt_values:
        fixed_kt = dict(fixed)
        if kt is not None:
            fixed_kt["kt"] = kt
        series = critical.sweep(args.model, fixed_kt, args.param, args.start, args.stop, args.steps)
        for x, cs in zip(series.grid, series.values):
            kt_out = x if args.param == "kt" else kt
            rows.append([float(x), float(kt_out)] + [getattr(cs, m) for m in measures])
    meta = {
        "model": args.model,
        "param": args.param,
        "window": [args.start, args.stop],
        "steps": args.steps,
        "kt": kt_values if kt_values != [None] else "swept",
        "fixed": {k: v for k, v in fixed.items()},
        "measures": measures,
    }
    _write_sweep_outputs(args.out, columns, rows, meta)
    return 0


_DEFAULT_CP_PARAM = {"xxz": "delta", "xy": "lam", "xyz2": "j"}


def cmd_cp(args) -> int:
    window = _parse_window(args.window)
    param = args.param or _DEFAULT_CP_PARAM.get(args.model)
    if param is None:
        raise ConfigError("--param is required for this model")
    fixed = _collect_fixed(args, args.model, param)
    kt_values = _require_kt(args, sweeping_kt=False)
    if len(kt_values) != 1:
        raise ConfigError("cp expects a single --kt value")
    fixed["kt"] = kt_values[0]
    series = critical.sweep(args.model, fixed, param, window[0], window[1], args.steps)
    estimates = critical.estimate_cp(series, args.estimator, args.rule)
    if not isinstance(estimates, dict):
        estimates = {args.rule: estimates}
    report = []
    for rule, est in estimates.items():
        entry = {
            "estimator": est.estimator,
            "rule": rule,
            "derivative_order": est.derivative_order,
            "location": _sig(est.location),
            "reference": None if est.reference is None else _sig(est.reference),
            "abs_error": None if est.error is None else _sig(est.error),
            "candidates": [[_sig(loc), _sig(val)] for loc, val in est.candidates],
        }
        report.append(entry)
        line = f"estimator={est.estimator} rule={rule} location={entry['location']:.12g}"
        if entry["reference"] is not None:
            line += f" reference={entry['reference']:.12g} abs_error={entry['abs_error']:.12g}"
        print(line)
    if args.json:
        path = Path(args.json)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as fh:
            json.dump(report, fh, indent=1)
            fh.write("\n")
    return 0


def cmd_compare(args) -> int:
    window = _parse_window(args.window)
    param = args.param or _DEFAULT_CP_PARAM.get(args.model)
    fixed = _collect_fixed(args, args.model, param)
    kt_values = _parse_kt_list(args.kt_list)
    estimators = [tok.strip() for tok in args.estimators.split(",") if tok.strip()]
    for est in estimators:
        if est not in MEASURES:
            raise ConfigError(f"unknown estimator {est!r}")
    rows = critical.estimator_comparison(
        args.model, fixed, param, window, kt_values, estimators, rule=args.rule, steps=args.steps
    )
    columns = ["kt", "estimator", "rule", "location", "reference", "abs_error"]
    table = [
        [r["kt"], r["estimator"], r["rule"], _sig(r["location"]),
         None if r["reference"] is None else _sig(r["reference"]),
         None if r["error"] is None else _sig(r["error"])]
        for r in rows
    ]
    lines = [",".join(columns)]
    for row in table:
        lines.append(
            ",".join("" if v is None else (f"{v:.12g}" if isinstance(v, float) else str(v)) for v in row)
        )
    text = "\n".join(lines) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        base = Path(args.out)
        base = base.with_suffix("") if base.suffix == ".csv" else base
        base.parent.mkdir(parents=True, exist_ok=True)
        with open(base.with_suffix(".csv"), "w", newline="") as fh:
            fh.write(text)
        with open(base.with_suffix(".json"), "w") as fh:
            json.dump({"columns": columns, "rows": table}, fh, indent=1)
            fh.write("\n")
    return 0


def cmd_figure(args) -> int:
    if args.id not in figures.FIGURE_IDS:
        raise ConfigError(f"unknown figure id {args.id!r}; known: {', '.join(figures.FIGURE_IDS)}")
    result = figures.build_figure(
        args.id,
        outdir=args.outdir,
        steps=args.steps,
        length=args.length,
        plot=not args.no_plot,
    )
    for path in result.csv_files:
        print(path)
    print(result.manifest_file)
    if result.png_file is not None:
        print(result.png_file)
    return 0


def _add_model_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", required=True, choices=sorted(MODELS))
    parser.add_argument("--jx", type=float)
    parser.add_argument("--jy", type=float)
    parser.add_argument("--jz", type=float)
    parser.add_argument("--j", type=float)
    parser.add_argument("--b", type=float)
    parser.add_argument("--xxx", action="store_true", help="xyz2: set jx = jy = jz = --j")
    parser.add_argument("--delta", type=float)
    parser.add_argument("--h", type=float)
    parser.add_argument("--L", dest="length", type=int, help="xxz chain length (even, >= 4)")
    parser.add_argument("--lambda", dest="lam", type=float, help="xy inverse-field coupling")
    parser.add_argument("--gamma", type=float)
    parser.add_argument("--k", type=int, help="xy neighbor distance (1..4)")
    parser.add_argument("--kt", type=str, help="temperature, or comma-separated list")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spinqcorr", description=__doc__, allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="evaluate correlation measures on a parameter grid",
                             allow_abbrev=False)
    _add_model_flags(p_sweep)
    p_sweep.add_argument("--param", required=True)
    p_sweep.add_argument("--from", dest="start", type=float, required=True)
    p_sweep.add_argument("--to", dest="stop", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, default=critical.DEFAULT_STEPS)
    p_sweep.add_argument("--measures", type=str, help="comma-separated subset of measures")
    p_sweep.add_argument("--out", type=str, help="output base path (writes .csv and .json)")
    p_sweep.set_defaults(func=cmd_sweep)

    p_cp = sub.add_parser("cp", help="estimate a critical point from derivative extrema",
                          allow_abbrev=False)
    _add_model_flags(p_cp)
    p_cp.add_argument("--param", type=str)
    p_cp.add_argument("--estimator", required=True, choices=sorted(MEASURES))
    p_cp.add_argument("--rule", default="first-order",
                      choices=["first-order", "infinite-order", "auto"])
    p_cp.add_argument("--window", required=True, help="sweep window 'lo,hi'")
    p_cp.add_argument("--steps", type=int, default=critical.DEFAULT_STEPS)
    p_cp.add_argument("--json", type=str, help="also write the report as JSON")
    p_cp.set_defaults(func=cmd_cp)

    p_cmp = sub.add_parser("compare", help="CP-estimation error of several measures vs kt",
                           allow_abbrev=False)
    _add_model_flags(p_cmp)
    p_cmp.add_argument("--param", type=str)
    p_cmp.add_argument("--window", required=True)
    p_cmp.add_argument("--kt-list", dest="kt_list", required=True)
    p_cmp.add_argument("--estimators", default="discord,eof,sxx,szz")
    p_cmp.add_argument("--rule", default="auto",
                       choices=["first-order", "infinite-order", "auto"])
    p_cmp.add_argument("--steps", type=int, default=critical.DEFAULT_STEPS)
    p_cmp.add_argument("--out", type=str)
    p_cmp.set_defaults(func=cmd_compare)

    p_fig = sub.add_parser("figure", help="emit a replication dataset (CSVs, manifest, PNG)",
                           allow_abbrev=False)
    p_fig.add_argument("--id", required=True)
    p_fig.add_argument("--outdir", default="figures")
    p_fig.add_argument("--steps", type=int, default=critical.DEFAULT_STEPS)
    p_fig.add_argument("--length", type=int, default=12, help="xxz chain length for fig4/5/6")
    p_fig.add_argument("--no-plot", action="store_true", help="skip PNG rendering")
    p_fig.set_defaults(func=cmd_figure)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ExtremumOnBoundary as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except SweepPointFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (SpinQCorrError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
