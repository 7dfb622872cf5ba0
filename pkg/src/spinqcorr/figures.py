"""Replication datasets: named figure recipes that sweep the models over
frozen parameter tables and write one CSV per curve, a manifest, and a
rendered PNG.

Zero-temperature curves are rendered at kt = 1e-3 (the temperature floor);
the manifest records this plus every parameter that produced the data, so a
dataset is reproducible from its manifest alone.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from . import critical

KT_FLOOR = 1e-3
KT_FLOOR_NOTE = "zero-temperature curves are evaluated at kt = 1e-3"

LINE_STYLES = ("-", "--", ":", "-.", (0, (3, 1, 1, 1, 1, 1)))


def format_sig(x: float) -> str:
    return f"{float(x):.12g}"


def write_table(path: Path, columns: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(format_sig(v) if isinstance(v, float) else str(v) for v in row) + "\n")


@dataclass(frozen=True)
class FigureResult:
    figure_id: str
    csv_files: list[Path]
    manifest_file: Path
    png_file: Path | None


# --------------------------------------------------------------------------
# frozen caption parameters

FIG1A_COUPLINGS = (0.1, 0.2, 0.3, 0.4)
FIG1A_JZ = -0.5
FIG1B_J = 0.4
FIG1B_JZ = (-0.8, -0.7, -0.6, -0.5)
FIG1_KT_WINDOW = (KT_FLOOR, 2.0)

FIG2_KT = (0.05, 0.1, 0.5, 1.0)
FIG2_J_WINDOW = (-2.0, 2.0)

FIG3_JX, FIG3_JY = 2.6, 1.4
FIG3_FIELDS = (1.1, 2.0, 2.5)
FIG3_KT_WINDOW = (KT_FLOOR, 3.0)

FIG4_KT = (KT_FLOOR, 0.1, 0.5, 1.0, 2.0)
FIG4_H0_WINDOW = (-2.0, 2.0)
FIG4_H12_WINDOW = (0.0, 6.0)

FIG5_KT = (0.02, 0.1, 0.5)
FIG5_WINDOW = (0.0, 6.0)

FIG6_FIELDS = (6.0, 12.0)
FIG6_KT = tuple(round(0.1 * i, 1) for i in range(1, 11))
FIG6_ESTIMATORS = ("discord", "eof", "sxx", "szz")
FIG6_WINDOW = (0.0, 6.0)

FIG7_GAMMAS = (0.0, 0.5, 1.0)
FIG7_KT = (0.01, 0.1, 0.5)
FIG7_WINDOW = (0.0, 2.0)

FIG8_GAMMAS = (0.0, 0.5, 1.0)
FIG8_KT = (0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0)
FIG8_ESTIMATORS = ("discord", "eof")
FIG8_WINDOW = (0.5, 1.5)

FIG9_LAMBDA = 1.5
FIG9_KT = (0.001, 0.1, 0.5, 1.0, 2.0)
FIG9_WINDOW = (-1.0, 1.0)


def _curve_csv(outdir: Path, fig_id: str, curve: str, series, measure: str) -> Path:
    path = outdir / f"{fig_id}_{curve}.csv"
    vals = series.measure(measure)
    kt_col = series.meta["fixed"].get("kt")
    rows = []
    for x, v in zip(series.grid, vals):
        kt = x if series.param_name == "kt" else kt_col
        rows.append([float(x), float(kt), float(v)])
    write_table(path, ["param", "kt", measure], rows)
    return path


def _sweep_figure(
    fig_id: str,
    outdir: Path,
    curves: list[tuple[str, str, dict, str, tuple, str]],
    steps: int,
    panel_of: Callable[[str], int],
    panel_titles: list[str],
    xlabel: str,
    plot: bool,
) -> FigureResult:
    """curves: (curve_name, model, fixed, param, window, measure)."""
    csv_files = []
    panels: dict[int, list] = {}
    series_cache: dict[tuple, object] = {}
    for name, model, fixed, param, window, measure in curves:
        key = (model, tuple(sorted(fixed.items())), param, window)
        if key not in series_cache:
            series_cache[key] = critical.sweep(model, fixed, param, window[0], window[1], steps)
        series = series_cache[key]
        csv_files.append(_curve_csv(outdir, fig_id, name, series, measure))
        panels.setdefault(panel_of(name), []).append((name, series.grid, series.measure(measure)))

    png = None
    if plot:
        png = outdir / f"{fig_id}.png"
        n = len(panel_titles)
        fig, axes = plt.subplots(1, n, figsize=(4.2 * n, 3.4), squeeze=False)
        for idx, title in enumerate(panel_titles):
            ax = axes[0][idx]
            for style, (name, xs, ys) in zip(
                LINE_STYLES * 4, sorted(panels.get(idx, []), key=lambda t: t[0])
            ):
                ax.plot(xs, ys, linestyle=style if isinstance(style, str) else "-", label=name)
            ax.set_xlabel(xlabel)
            ax.set_title(title)
            ax.legend(fontsize=6)
        fig.tight_layout()
        fig.savefig(png, dpi=120, metadata={"Software": "spinqcorr"})
        plt.close(fig)
    return FigureResult(fig_id, csv_files, outdir / f"{fig_id}_manifest.json", png)


def _two_spin_kt_sweeps(fig_id, outdir, curve_params, measures, window, steps, plot):
    """Shared builder for the two-spin kt-sweep figures (fig1*, fig3)."""
    curves = []
    for label, fixed in curve_params:
        for measure in measures:
            curves.append((f"{measure}_{label}", "xyz2", fixed, "kt", window, measure))
    panel_titles = list(measures)
    return _sweep_figure(
        fig_id,
        outdir,
        curves,
        steps,
        panel_of=lambda name: measures.index(name.split("_")[0]),
        panel_titles=panel_titles,
        xlabel="kt",
        plot=plot,
    )


def fig1a(outdir: Path, steps: int, length: int, plot: bool) -> FigureResult:
    params = [(f"J{j}", {"j": j, "jz": FIG1A_JZ, "b": 0.0}) for j in FIG1A_COUPLINGS]
    return _two_spin_kt_sweeps("fig1a", outdir, params, ("discord",), FIG1_KT_WINDOW, steps, plot)


def fig1b(outdir: Path, steps: int, length: int, plot: bool) -> FigureResult:
    params = [(f"Jz{jz}", {"j": FIG1B_J, "jz": jz, "b": 0.0}) for jz in FIG1B_JZ]
    return _two_spin_kt_sweeps("fig1b", outdir, params, ("discord",), FIG1_KT_WINDOW, steps, plot)


def fig2(outdir: Path, steps: int, length: int, plot: bool) -> FigureResult:
    curves = []
    for measure in ("discord", "eof"):
        for kt in FIG2_KT:
            curves.append(
                (f"{measure}_kt{kt}", "xyz2", {"xxx": True, "b": 0.0, "kt": kt}, "j", FIG2_J_WINDOW, measure)
            )
    return _sweep_figure(
        "fig2",
        outdir,
        curves,
        steps,
        panel_of=lambda name: 0 if name.startswith("discord") else 1,
        panel_titles=["discord", "eof"],
        xlabel="j",
        plot=plot,
    )


def fig3(outdir: Path, steps: int, length: int, plot: bool) -> FigureResult:
    params = [
        (f"B{b}", {"jx": FIG3_JX, "jy": FIG3_JY, "jz": 0.0, "b": b}) for b in FIG3_FIELDS
    ]
    return _two_spin_kt_sweeps("fig3", outdir, params, ("discord", "eof"), FIG3_KT_WINDOW, steps, plot)


def _fig4(fig_id, outdir, h, window, measure, steps, length, plot):
    curves = [
        (f"{measure}_kt{kt}", "xxz", {"h": h, "kt": kt, "length": length}, "delta", window, measure)
        for kt in FIG4_KT
    ]
    return _sweep_figure(
        fig_id,
        outdir,
        curves,
        steps,
        panel_of=lambda name: 0,
        panel_titles=[f"{measure}, h={h}"],
        xlabel="delta",
        plot=plot,
    )


def fig4a(outdir, steps, length, plot):
    return _fig4("fig4a", outdir, 0.0, FIG4_H0_WINDOW, "discord", steps, length, plot)


def fig4b(outdir, steps, length, plot):
    return _fig4("fig4b", outdir, 12.0, FIG4_H12_WINDOW, "discord", steps, length, plot)


def fig4c(outdir, steps, length, plot):
    return _fig4("fig4c", outdir, 0.0, FIG4_H0_WINDOW, "eof", steps, length, plot)


def fig4d(outdir, steps, length, plot):
    return _fig4("fig4d", outdir, 12.0, FIG4_H12_WINDOW, "eof", steps, length, plot)


def fig5(outdir: Path, steps: int, length: int, plot: bool) -> FigureResult:
    csv_files = []
    panels = {0: [], 1: []}
    for kt in FIG5_KT:
        series = critical.sweep(
            "xxz", {"h": 12.0, "kt": kt, "length": length}, "delta", FIG5_WINDOW[0], FIG5_WINDOW[1], steps
        )
        for order in (1, 2):
            norm = critical.normalize(critical.derivative(series, "discord", order))
            x = series.grid[1:-1]
            path = outdir / f"fig5_d{order}_kt{kt}.csv"
            write_table(
                path,
                ["param", "kt", f"d{order}_discord_normalized"],
                [[float(a), float(kt), float(b)] for a, b in zip(x, norm)],
            )
            csv_files.append(path)
            panels[order - 1].append((f"kt={kt}", x, norm))
    png = None
    if plot:
        png = outdir / "fig5.png"
        fig, axes = plt.subplots(1, 2, figsize=(8.4, 3.4))
        for idx, title in enumerate(["normalized d(discord)/d(delta)", "normalized d2(discord)/d(delta)2"]):
            for style, (name, xs, ys) in zip(LINE_STYLES, panels[idx]):
                axes[idx].plot(xs, ys, linestyle=style if isinstance(style, str) else "-", label=name)
            axes[idx].set_xlabel("delta")
            axes[idx].set_title(title, fontsize=9)
            axes[idx].legend(fontsize=6)
        fig.tight_layout()
        fig.savefig(png, dpi=120, metadata={"Software": "spinqcorr"})
        plt.close(fig)
    return FigureResult("fig5", csv_files, outdir / "fig5_manifest.json", png)


def _comparison_figure(fig_id, outdir, model, panel_specs, kt_list, estimators, rule, steps, length, plot):
    """panel_specs: list of (panel_name, fixed, param, window, rule)."""
    csv_files = []
    panel_rows = []
    for panel_name, fixed, param, window, panel_rule in panel_specs:
        if model == "xxz":
            fixed = dict(fixed, length=length)
        rows = critical.estimator_comparison(
            model, fixed, param, window, kt_list, estimators, rule=panel_rule, steps=steps
        )
        path = outdir / f"{fig_id}_{panel_name}.csv"
        write_table(
            path,
            ["kt", "estimator", "rule", "location", "reference", "abs_error"],
            [
                [r["kt"], r["estimator"], r["rule"], r["location"], r["reference"], r["error"]]
                for r in rows
            ],
        )
        csv_files.append(path)
        panel_rows.append((panel_name, rows))
    png = None
    if plot:
        png = outdir / f"{fig_id}.png"
        n = len(panel_rows)
        fig, axes = plt.subplots(1, n, figsize=(3.6 * n, 3.2), squeeze=False)
        markers = {"discord": "s", "eof": "o", "sxx": "^", "szz": "v"}
        for idx, (panel_name, rows) in enumerate(panel_rows):
            ax = axes[0][idx]
            for est in estimators:
                pts = [(r["kt"], r["error"]) for r in rows if r["estimator"] == est]
                ax.plot(
                    [p[0] for p in pts],
                    [p[1] for p in pts],
                    marker=markers.get(est, "x"),
                    linestyle="-",
                    markersize=3,
                    label=est,
                )
            ax.set_xlabel("kt")
            ax.set_ylabel("|reference - estimate|")
            ax.set_title(panel_name, fontsize=9)
            ax.legend(fontsize=6)
        fig.tight_layout()
        fig.savefig(png, dpi=120, metadata={"Software": "spinqcorr"})
        plt.close(fig)
    return FigureResult(fig_id, csv_files, outdir / f"{fig_id}_manifest.json", png)


def fig6(outdir: Path, steps: int, length: int, plot: bool) -> FigureResult:
    panels = []
    for h in FIG6_FIELDS:
        for rule in critical.RULES:
            panels.append((f"h{h:g}_{rule}", {"h": h}, "delta", FIG6_WINDOW, rule))
    return _comparison_figure(
        "fig6", outdir, "xxz", panels, list(FIG6_KT), list(FIG6_ESTIMATORS), None, steps, length, plot
    )


def fig7(outdir: Path, steps: int, length: int, plot: bool) -> FigureResult:
    curves = []
    for g_idx, gamma in enumerate(FIG7_GAMMAS):
        for measure in ("discord", "eof"):
            for kt in FIG7_KT:
                curves.append(
                    (
                        f"{measure}_gamma{gamma}_kt{kt}",
                        "xy",
                        {"gamma": gamma, "kt": kt, "k": 1},
                        "lam",
                        FIG7_WINDOW,
                        measure,
                    )
                )
    def panel_of(name):
        measure, gamma_tag, _ = name.split("_")
        row = 0 if measure == "discord" else 1
        col = [f"gamma{g}" for g in FIG7_GAMMAS].index(gamma_tag)
        return row * len(FIG7_GAMMAS) + col
    titles = [f"{m}, gamma={g}" for m in ("discord", "eof") for g in FIG7_GAMMAS]
    return _sweep_figure("fig7", outdir, curves, steps, panel_of, titles, "lambda", plot)


def fig8(outdir: Path, steps: int, length: int, plot: bool) -> FigureResult:
    panels = [
        (f"gamma{gamma}", {"gamma": gamma, "k": 1}, "lam", FIG8_WINDOW, "first-order")
        for gamma in FIG8_GAMMAS
    ]
    return _comparison_figure(
        "fig8", outdir, "xy", panels, list(FIG8_KT), list(FIG8_ESTIMATORS), None, steps, length, plot
    )


def fig9(outdir: Path, steps: int, length: int, plot: bool) -> FigureResult:
    curves = []
    for measure in ("discord", "eof"):
        for kt in FIG9_KT:
            curves.append(
                (
                    f"{measure}_kt{kt}",
                    "xy",
                    {"lam": FIG9_LAMBDA, "kt": kt, "k": 1},
                    "gamma",
                    FIG9_WINDOW,
                    measure,
                )
            )
    return _sweep_figure(
        "fig9",
        outdir,
        curves,
        steps,
        panel_of=lambda name: 0 if name.startswith("discord") else 1,
        panel_titles=["discord", "eof"],
        xlabel="gamma",
        plot=plot,
    )


BUILDERS: dict[str, Callable] = {
    "fig1a": fig1a,
    "fig1b": fig1b,
    "fig2": fig2,
    "fig3": fig3,
    "fig4a": fig4a,
    "fig4b": fig4b,
    "fig4c": fig4c,
    "fig4d": fig4d,
    "fig5": fig5,
    "fig6": fig6,
    "fig7": fig7,
    "fig8": fig8,
    "fig9": fig9,
}

FIGURE_IDS = tuple(BUILDERS)

#: parameters frozen into each figure, recorded in the manifest
FIGURE_PARAMS: dict[str, dict] = {
    "fig1a": {"model": "xyz2", "j": FIG1A_COUPLINGS, "jz": FIG1A_JZ, "b": 0.0, "kt_window": FIG1_KT_WINDOW},
    "fig1b": {"model": "xyz2", "j": FIG1B_J, "jz": FIG1B_JZ, "b": 0.0, "kt_window": FIG1_KT_WINDOW},
    "fig2": {"model": "xyz2", "xxx": True, "b": 0.0, "kt": FIG2_KT, "j_window": FIG2_J_WINDOW},
    "fig3": {"model": "xyz2", "jx": FIG3_JX, "jy": FIG3_JY, "jz": 0.0, "b": FIG3_FIELDS, "kt_window": FIG3_KT_WINDOW},
    "fig4a": {"model": "xxz", "h": 0.0, "kt": FIG4_KT, "delta_window": FIG4_H0_WINDOW},
    "fig4b": {"model": "xxz", "h": 12.0, "kt": FIG4_KT, "delta_window": FIG4_H12_WINDOW},
    "fig4c": {"model": "xxz", "h": 0.0, "kt": FIG4_KT, "delta_window": FIG4_H0_WINDOW},
    "fig4d": {"model": "xxz", "h": 12.0, "kt": FIG4_KT, "delta_window": FIG4_H12_WINDOW},
    "fig5": {"model": "xxz", "h": 12.0, "kt": FIG5_KT, "delta_window": FIG5_WINDOW},
    "fig6": {"model": "xxz", "h": FIG6_FIELDS, "kt": FIG6_KT, "estimators": FIG6_ESTIMATORS, "delta_window": FIG6_WINDOW},
    "fig7": {"model": "xy", "gamma": FIG7_GAMMAS, "kt": FIG7_KT, "lambda_window": FIG7_WINDOW, "k": 1},
    "fig8": {"model": "xy", "gamma": FIG8_GAMMAS, "kt": FIG8_KT, "estimators": FIG8_ESTIMATORS, "lambda_window": FIG8_WINDOW, "k": 1},
    "fig9": {"model": "xy", "lam": FIG9_LAMBDA, "kt": FIG9_KT, "gamma_window": FIG9_WINDOW, "k": 1},
}


def build_figure(
    fig_id: str,
    outdir: str | Path,
    steps: int = critical.DEFAULT_STEPS,
    length: int = 12,
    plot: bool = True,
) -> FigureResult:
    """Run one figure recipe: CSV per curve, manifest JSON, optional PNG."""
    if fig_id not in BUILDERS:
        raise KeyError(f"unknown figure id {fig_id!r}; known: {', '.join(FIGURE_IDS)}")
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    result = BUILDERS[fig_id](outdir, steps, length, plot)
    manifest = {
        "figure": fig_id,
        "parameters": json.loads(json.dumps(FIGURE_PARAMS[fig_id], default=list)),
        "steps": steps,
        "kt_floor_note": KT_FLOOR_NOTE,
        "files": [p.name for p in result.csv_files],
        "png": result.png_file.name if result.png_file else None,
    }
    if FIGURE_PARAMS[fig_id]["model"] == "xxz":
        manifest["length"] = length
    with open(result.manifest_file, "w") as fh:
        json.dump(manifest, fh, indent=1, sort_keys=False)
        fh.write("\n")
    return result
