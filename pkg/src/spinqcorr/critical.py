"""Parameter sweeps, central-difference derivatives, normalized derivative
curves, and critical-point estimation from derivative extrema.

The estimation protocol: a transition whose measure has a divergent first
derivative at zero temperature shows up at finite temperature as an interior
extremum of the first difference quotient ("first-order" rule); a transition
with a merely discontinuous first derivative shows up as an extremum of the
second difference quotient ("infinite-order" rule).  The reported location
is the interior grid extremum of |derivative| refined by a three-point
parabolic fit.

Discord curves can carry a spurious cusp where the optimal measurement
projector switches branch; every interior local extremum above half the
global one is therefore reported as a candidate alongside the headline
estimate, and callers holding a reference value can select by proximity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from . import xxz, xy, xyz2
from .errors import (
    AllZero,
    ExtremumOnBoundary,
    HolesPresent,
    NonUniformGrid,
    SweepPointFailure,
)
from .qcorr import CorrelationSet

MEASURES = CorrelationSet.FIELDS

RULES = ("first-order", "infinite-order")

#: interior local extrema at least this fraction of the global one are
#: reported as candidates
CANDIDATE_FRACTION = 0.5

#: default grid resolution for replication-quality sweeps
DEFAULT_STEPS = 400


@dataclass(frozen=True)
class SweepSeries:
    """Uniform parameter grid with one CorrelationSet per point."""

    param_name: str
    grid: np.ndarray
    values: list
    meta: dict = field(default_factory=dict)

    @property
    def holes(self) -> list[int]:
        return [i for i, v in enumerate(self.values) if v is None]

    def measure(self, name: str) -> np.ndarray:
        if name not in MEASURES:
            raise KeyError(f"unknown measure {name!r}; choose from {MEASURES}")
        if self.holes:
            raise HolesPresent(f"series has failed points at indices {self.holes}")
        return np.array([getattr(v, name) for v in self.values])


@dataclass(frozen=True)
class CpEstimate:
    """Derivative-extremum estimate of a critical point."""

    estimator: str
    derivative_order: int
    location: float
    extremum_value: float
    reference: Optional[float] = None
    candidates: tuple = ()

    @property
    def error(self) -> Optional[float]:
        if self.reference is None:
            return None
        return abs(self.reference - self.location)

    def nearest_candidate(self, x0: float) -> float:
        """Candidate location closest to x0 (headline included)."""
        locs = [self.location] + [loc for loc, _ in self.candidates]
        return min(locs, key=lambda loc: abs(loc - x0))


# ---------------------------------------------------------------------------
# model registry


@dataclass(frozen=True)
class ModelSpec:
    name: str
    sweep_params: tuple
    defaults: dict
    evaluate: Callable[[dict], CorrelationSet]
    reference_cp: Callable[[dict, str, str], Optional[float]]


def _xyz2_evaluate(params: dict) -> CorrelationSet:
    merged = dict(params)
    if "j" in merged:
        j = merged.pop("j")
        if merged.pop("xxx", False):
            merged.update(jx=j, jy=j, jz=j)
        else:
            merged.update(jx=j, jy=j)
    else:
        merged.pop("xxx", None)
    return xyz2.correlations(xyz2.TwoSpinXYZParams(**merged))


def _xyz2_reference(params, sweep_param, rule):
    return None


def _xxz_evaluate(params: dict) -> CorrelationSet:
    merged = dict(params)
    merged["length"] = int(merged.get("length", 12))
    return xxz.correlations(xxz.XXZParams(**merged))


def _xxz_reference(params, sweep_param, rule):
    if sweep_param != "delta":
        return None
    h = params.get("h", 0.0)
    j = params.get("j", 1.0)
    if rule == "first-order":
        return xxz.cp_first_order(h, j)
    return xxz.cp_infinite_order(h, j)


def _xy_evaluate(params: dict) -> CorrelationSet:
    merged = dict(params)
    merged["k"] = int(merged.get("k", 1))
    return xy.correlations(xy.XYParams(**merged))


def _xy_reference(params, sweep_param, rule):
    if sweep_param == "lam":
        return 1.0
    if sweep_param == "gamma":
        return 0.0
    return None


MODELS: dict[str, ModelSpec] = {
    "xyz2": ModelSpec(
        name="xyz2",
        sweep_params=("j", "jx", "jy", "jz", "b", "kt"),
        defaults={"b": 0.0},
        evaluate=_xyz2_evaluate,
        reference_cp=_xyz2_reference,
    ),
    "xxz": ModelSpec(
        name="xxz",
        sweep_params=("delta", "h", "kt"),
        defaults={"h": 0.0, "j": 1.0, "length": 12},
        evaluate=_xxz_evaluate,
        reference_cp=_xxz_reference,
    ),
    "xy": ModelSpec(
        name="xy",
        sweep_params=("lam", "gamma", "kt"),
        defaults={"k": 1},
        evaluate=_xy_evaluate,
        reference_cp=_xy_reference,
    ),
}


def sweep(
    model: str,
    fixed: dict,
    param: str,
    start: float,
    stop: float,
    steps: int,
    fail_fast: bool = True,
) -> SweepSeries:
    """Evaluate a model on a uniform grid of one parameter.

    With fail_fast (default) a model error aborts the sweep, wrapped with the
    offending grid point; otherwise the failed point is recorded as a hole
    (holes are rejected later by differentiation).
    """
    if steps < 16:
        raise ValueError(f"steps must be >= 16, got {steps}")
    if not start < stop:
        raise ValueError(f"need start < stop, got [{start}, {stop}]")
    spec = MODELS[model]
    if param not in spec.sweep_params:
        raise ValueError(f"model {model!r} cannot sweep {param!r}; options: {spec.sweep_params}")
    grid = np.linspace(start, stop, steps)
    values = []
    for x in grid:
        point = dict(spec.defaults)
        point.update(fixed)
        point[param] = float(x)
        try:
            values.append(spec.evaluate(point))
        except Exception as exc:
            if fail_fast:
                raise SweepPointFailure(param, float(x), exc) from exc
            values.append(None)
    meta = {"model": model, "fixed": dict(fixed), "steps": steps}
    return SweepSeries(param_name=param, grid=grid, values=values, meta=meta)


def _check_uniform(grid: np.ndarray) -> float:
    diffs = np.diff(grid)
    h = diffs[0]
    if h <= 0 or np.max(np.abs(diffs - h)) > 1e-12 * max(abs(h), 1.0):
        raise NonUniformGrid("grid spacing is not uniform within 1e-12 relative")
    return float(h)


def derivative(series: SweepSeries, measure: str, order: int) -> np.ndarray:
    """Central difference quotients on interior points (length = n - 2)."""
    if order not in (1, 2):
        raise ValueError(f"order must be 1 or 2, got {order}")
    f = series.measure(measure)
    h = _check_uniform(series.grid)
    if order == 1:
        return (f[2:] - f[:-2]) / (2.0 * h)
    return (f[2:] - 2.0 * f[1:-1] + f[:-2]) / (h * h)


def normalize(deriv: Iterable[float]) -> np.ndarray:
    """Divide by the maximum absolute entry so that max |output| = 1."""
    arr = np.asarray(list(deriv), dtype=float)
    if arr.size == 0:
        raise AllZero("cannot normalize an empty list")
    peak = np.max(np.abs(arr))
    if peak == 0.0:
        raise AllZero("cannot normalize an all-zero list")
    return arr / peak


def _parabolic_refine(x: np.ndarray, y: np.ndarray, idx: int) -> tuple[float, float]:
    """Vertex of the parabola through (x[idx-1..idx+1], y[...])."""
    y1, y2, y3 = y[idx - 1], y[idx], y[idx + 1]
    denom = y1 - 2.0 * y2 + y3
    h = x[idx] - x[idx - 1]
    if denom == 0.0:
        return float(x[idx]), float(y2)
    shift = 0.5 * (y1 - y3) / denom
    shift = min(max(shift, -1.0), 1.0)
    loc = x[idx] + shift * h
    val = y2 - 0.25 * (y1 - y3) * shift
    return float(loc), float(val)


def estimate_cp(
    series: SweepSeries,
    estimator: str,
    rule: str = "first-order",
    reference: Optional[float] = None,
):
    """Critical-point estimate from the extremum of |derivative|.

    rule "first-order" uses the first difference quotient, "infinite-order"
    the second, "auto" returns {rule: CpEstimate} for both.  The headline
    location is the global interior extremum; all interior local extrema
    above half the global one are attached as candidates.
    """
    if rule == "auto":
        return {r: estimate_cp(series, estimator, r, reference) for r in RULES}
    if rule not in RULES:
        raise ValueError(f"unknown rule {rule!r}")
    if series.grid.size < 32:
        raise ValueError("CP estimation needs a sweep of at least 32 points")
    order = 1 if rule == "first-order" else 2
    mag = np.abs(derivative(series, estimator, order))
    if np.all(mag == 0.0):
        raise AllZero(f"derivative of {estimator!r} vanishes on the whole window")
    x = series.grid[1:-1]
    i_max = int(np.argmax(mag))
    if i_max == 0 or i_max == mag.size - 1:
        raise ExtremumOnBoundary(
            f"|d^{order} {estimator}| peaks at the window edge {x[i_max]}; widen the sweep"
        )
    location, value = _parabolic_refine(x, mag, i_max)

    candidates = []
    threshold = CANDIDATE_FRACTION * mag[i_max]
    for i in range(1, mag.size - 1):
        if mag[i] >= mag[i - 1] and mag[i] >= mag[i + 1] and mag[i] >= threshold:
            candidates.append(_parabolic_refine(x, mag, i))

    if reference is None:
        spec = MODELS.get(series.meta.get("model", ""))
        if spec is not None:
            reference = spec.reference_cp(series.meta.get("fixed", {}), series.param_name, rule)

    return CpEstimate(
        estimator=estimator,
        derivative_order=order,
        location=location,
        extremum_value=value,
        reference=reference,
        candidates=tuple(candidates),
    )


def estimator_comparison(
    model: str,
    fixed: dict,
    param: str,
    window: tuple[float, float],
    kt_list: Iterable[float],
    estimators: Iterable[str],
    rule: str = "first-order",
    steps: int = DEFAULT_STEPS,
    select_nearest: bool = True,
) -> list[dict]:
    """CP-estimation error of several measures across temperatures.

    One sweep per temperature serves all estimators.  When a reference CP is
    known and select_nearest holds, the candidate closest to it is scored
    (the spurious measurement-branch cusp of discord would otherwise be
    picked up as the headline at some temperatures).
    """
    rules = RULES if rule == "auto" else (rule,)
    rows = []
    for kt in kt_list:
        fixed_kt = dict(fixed)
        fixed_kt["kt"] = float(kt)
        series = sweep(model, fixed_kt, param, window[0], window[1], steps)
        for est_name in estimators:
            for r in rules:
                est = estimate_cp(series, est_name, r)
                loc = est.location
                if est.reference is not None and select_nearest:
                    loc = est.nearest_candidate(est.reference)
                rows.append(
                    {
                        "kt": float(kt),
                        "estimator": est_name,
                        "rule": r,
                        "location": loc,
                        "reference": est.reference,
                        "error": None if est.reference is None else abs(est.reference - loc),
                    }
                )
    return rows
