"""Quantum correlation measures for two-qubit X-form density matrices.

Implements von Neumann entropies, mutual information, the measurement-based
conditional entropy minimized over projective measurements, quantum discord,
Wootters concurrence, and entanglement of formation.  All logarithms are base
2 and 0*log(0) = 0 throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Literal

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import InvalidState

Side = Literal["A", "B"]

#: populations this far below zero are treated as rounding noise and clamped
NEG_POP_TOL = 1e-12
TRACE_TOL = 1e-10
BLOCK_POS_TOL = 1e-10

#: coarse minimization grid (theta x phi); also the certification grid for
#: the minimizer's postcondition
GRID_THETA = 61
GRID_PHI = 61

#: local refinement stops once the objective improves by less than this
REFINE_FTOL = 1e-10
DISCORD_NEG_FLOOR = -1e-9


@dataclass(frozen=True)
class XState:
    """Two-qubit X-form density matrix in the basis |00>,|01>,|10>,|11>.

    Only the main diagonal (r11..r44) and the anti-diagonal coherences r14
    (between |00> and |11>) and r23 (between |01> and |10>) are nonzero; all
    entries are real.
    """

    r11: float
    r22: float
    r33: float
    r44: float
    r14: float = 0.0
    r23: float = 0.0

    def __post_init__(self):
        pops = [self.r11, self.r22, self.r33, self.r44]
        names = ["r11", "r22", "r33", "r44"]
        for name, p in zip(names, pops):
            if p < -NEG_POP_TOL:
                raise InvalidState(f"population {name} = {p} below -{NEG_POP_TOL}")
            if p < 0.0:
                object.__setattr__(self, name, 0.0)
        trace = self.r11 + self.r22 + self.r33 + self.r44
        if abs(trace - 1.0) > TRACE_TOL:
            raise InvalidState(f"trace = {trace} deviates from 1 beyond {TRACE_TOL}")
        if self.r11 * self.r44 < self.r14**2 - BLOCK_POS_TOL:
            raise InvalidState(
                f"outer block not positive: r11*r44={self.r11 * self.r44}, r14^2={self.r14**2}"
            )
        if self.r22 * self.r33 < self.r23**2 - BLOCK_POS_TOL:
            raise InvalidState(
                f"inner block not positive: r22*r33={self.r22 * self.r33}, r23^2={self.r23**2}"
            )

    def matrix(self) -> np.ndarray:
        m = np.zeros((4, 4))
        m[0, 0], m[1, 1], m[2, 2], m[3, 3] = self.r11, self.r22, self.r33, self.r44
        m[0, 3] = m[3, 0] = self.r14
        m[1, 2] = m[2, 1] = self.r23
        return m

    @classmethod
    def from_matrix(cls, m: np.ndarray, atol: float = 1e-10) -> "XState":
        m = np.asarray(m, dtype=float)
        if m.shape != (4, 4):
            raise InvalidState(f"expected 4x4 matrix, got {m.shape}")
        mask = np.ones((4, 4), dtype=bool)
        for i in range(4):
            mask[i, i] = False
        mask[0, 3] = mask[3, 0] = mask[1, 2] = mask[2, 1] = False
        if np.max(np.abs(m[mask])) > atol:
            raise InvalidState("matrix is not X-form")
        if abs(m[0, 3] - m[3, 0]) > atol or abs(m[1, 2] - m[2, 1]) > atol:
            raise InvalidState("matrix is not symmetric")
        return cls(m[0, 0], m[1, 1], m[2, 2], m[3, 3], m[0, 3], m[1, 2])

    def eigenvalues(self) -> np.ndarray:
        """Spectrum from the two 2x2 blocks, clamped to [0, 1]."""
        co = 0.5 * (self.r11 + self.r44)
        do = math.hypot(0.5 * (self.r11 - self.r44), self.r14)
        ci = 0.5 * (self.r22 + self.r33)
        di = math.hypot(0.5 * (self.r22 - self.r33), self.r23)
        lam = np.array([co - do, co + do, ci - di, ci + di])
        return np.clip(lam, 0.0, 1.0)

    def swap_qubits(self) -> "XState":
        return replace(self, r22=self.r33, r33=self.r22)

    def marginal(self, side: Side) -> np.ndarray:
        """Diagonal single-qubit reduced state (X states have diagonal marginals)."""
        if side == "A":
            return np.array([self.r11 + self.r22, self.r33 + self.r44])
        return np.array([self.r11 + self.r33, self.r22 + self.r44])


@dataclass(frozen=True)
class MeasurementAngles:
    """Projector axis n = (sin t cos p, sin t sin p, cos t) on the Bloch sphere."""

    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        if not 0.0 <= self.phi < 2.0 * math.pi:
            raise ValueError(f"phi must lie in [0, 2*pi), got {self.phi}")


@dataclass(frozen=True)
class CorrelationSet:
    """All correlation measures evaluated at one parameter point."""

    discord: float
    eof: float
    concurrence: float
    mutual_info: float
    sz: float
    sxx: float
    syy: float
    szz: float

    FIELDS = ("discord", "eof", "concurrence", "mutual_info", "sz", "sxx", "syy", "szz")


def _entropy_from_probs(p: np.ndarray) -> float:
    p = np.clip(np.asarray(p, dtype=float), 0.0, 1.0)
    nz = p[p > 0.0]
    return float(-(nz * np.log2(nz)).sum())


def binary_entropy(x: float) -> float:
    x = min(max(x, 0.0), 1.0)
    s = 0.0
    if 0.0 < x:
        s -= x * math.log2(x)
    if x < 1.0:
        s -= (1.0 - x) * math.log2(1.0 - x)
    return s


def von_neumann_entropy(state) -> float:
    """Base-2 von Neumann entropy of an XState or of a 2x2 reduced state."""
    if isinstance(state, XState):
        return _entropy_from_probs(state.eigenvalues())
    m = np.asarray(state, dtype=float)
    if m.shape == (2,):
        return _entropy_from_probs(m)
    if m.shape == (2, 2):
        tr = m[0, 0] + m[1, 1]
        disc = math.hypot(0.5 * (m[0, 0] - m[1, 1]), m[0, 1])
        return _entropy_from_probs(np.array([0.5 * tr - disc, 0.5 * tr + disc]))
    raise InvalidState(f"unsupported state shape {m.shape}")


def mutual_information(state: XState) -> float:
    """I = S(A) + S(B) - S(AB), floored at 0."""
    i = (
        _entropy_from_probs(state.marginal("A"))
        + _entropy_from_probs(state.marginal("B"))
        - von_neumann_entropy(state)
    )
    return max(i, 0.0)


def _cond_entropy_b(state: XState, cos_t, sin_t, cos_2p):
    """Entropy of A after a projective measurement on B, averaged over outcomes.

    Broadcasts over numpy arrays of angles.  For real X states the azimuth
    enters only through cos(2*phi), which this closed form makes explicit:
    the post-measurement 2x2 conditional states have analytic trace and
    determinant, and their entropies follow from the 2x2 eigenvalue formula.
    """
    r11, r22, r33, r44 = state.r11, state.r22, state.r33, state.r44
    pi_00 = 0.5 * (1.0 + cos_t)
    pi_11 = 0.5 * (1.0 - cos_t)
    s2 = sin_t * sin_t
    off = state.r14 * state.r23 * s2 * 0.5 * cos_2p + (
        state.r14**2 + state.r23**2
    ) * s2 * 0.25

    def outcome(p00, p11):
        prob = (r11 + r33) * p00 + (r22 + r44) * p11
        m00 = r11 * p00 + r22 * p11
        m11 = r33 * p00 + r44 * p11
        det = m00 * m11 - off
        prob_safe = np.where(prob > 0.0, prob, 1.0)
        disc = np.sqrt(np.clip(0.25 - det / (prob_safe * prob_safe), 0.0, 0.25))
        lo = np.clip(0.5 - disc, 0.0, 1.0)
        hi = np.clip(0.5 + disc, 0.0, 1.0)
        ent = -np.where(lo > 0.0, lo * np.log2(np.where(lo > 0.0, lo, 1.0)), 0.0)
        ent = ent - np.where(hi > 0.0, hi * np.log2(np.where(hi > 0.0, hi, 1.0)), 0.0)
        return np.where(prob > 0.0, prob * ent, 0.0)

    return outcome(pi_00, pi_11) + outcome(pi_11, pi_00)


def conditional_entropy(state: XState, m: MeasurementAngles, measured_side: Side = "B") -> float:
    """Outcome-averaged entropy of the unmeasured qubit for one projector axis."""
    st = state if measured_side == "B" else state.swap_qubits()
    val = _cond_entropy_b(
        st, math.cos(m.theta), math.sin(m.theta), math.cos(2.0 * m.phi)
    )
    return float(val)


def _grid_min(state: XState) -> tuple[float, float, float]:
    thetas = np.linspace(0.0, math.pi, GRID_THETA)
    phis = np.linspace(0.0, 2.0 * math.pi, GRID_PHI, endpoint=False)
    vals = _cond_entropy_b(
        state,
        np.cos(thetas)[:, None],
        np.sin(thetas)[:, None],
        np.cos(2.0 * phis)[None, :],
    )
    i, j = np.unravel_index(np.argmin(vals), vals.shape)
    return float(vals[i, j]), float(thetas[i]), float(phis[j])


def min_conditional_entropy(
    state: XState, measured_side: Side = "B"
) -> tuple[float, MeasurementAngles]:
    """Minimum of :func:`conditional_entropy` over all projector axes.

    Coarse 61x61 grid over (theta, phi) followed by coordinatewise bounded
    scalar minimization, iterated until the objective improves by < 1e-10.
    """
    st = state if measured_side == "B" else state.swap_qubits()
    best, theta, phi = _grid_min(st)
    dt = math.pi / (GRID_THETA - 1)
    dp = 2.0 * math.pi / GRID_PHI

    def f(t, p):
        return float(_cond_entropy_b(st, math.cos(t), math.sin(t), math.cos(2.0 * p)))

    for _ in range(60):
        best_before = best
        res = minimize_scalar(
            lambda t: f(t, phi),
            bounds=(max(0.0, theta - dt), min(math.pi, theta + dt)),
            method="bounded",
            options={"xatol": 1e-12},
        )
        if res.fun < best:
            best, theta = float(res.fun), float(res.x)
        res = minimize_scalar(
            lambda p: f(theta, p),
            bounds=(phi - dp, phi + dp),
            method="bounded",
            options={"xatol": 1e-12},
        )
        if res.fun < best:
            best, phi = float(res.fun), float(res.x)
        if best_before - best < REFINE_FTOL:
            break
    phi = phi % (2.0 * math.pi)
    theta = min(max(theta, 0.0), math.pi)
    return best, MeasurementAngles(theta=theta, phi=phi)


def discord(state: XState, measured_side: Side = "B") -> float:
    """Measurement-minimized conditional entropy minus the naive one.

    D(A|B) = S_q(A|B) - [S(AB) - S(B)] for a measurement on B (and the
    mirrored expression for a measurement on A).  Small negative rounding is
    clamped to zero; values below the -1e-9 floor are returned as-is so that
    invariant tests can catch genuine violations.
    """
    s_ab = von_neumann_entropy(state)
    other = "B" if measured_side == "B" else "A"
    s_measured = _entropy_from_probs(state.marginal(other))
    s_q, _ = min_conditional_entropy(state, measured_side)
    d = s_q - (s_ab - s_measured)
    if DISCORD_NEG_FLOOR < d < 0.0:
        return 0.0
    return d


def concurrence(state: XState) -> float:
    """C = 2 max{0, |r14| - sqrt(r22 r33), |r23| - sqrt(r11 r44)}."""
    lam1 = abs(state.r14) - math.sqrt(max(state.r22 * state.r33, 0.0))
    lam2 = abs(state.r23) - math.sqrt(max(state.r11 * state.r44, 0.0))
    return min(2.0 * max(0.0, lam1, lam2), 1.0)


def entanglement_of_formation(state: XState) -> float:
    """Binary entropy of g = (1 + sqrt(1 - C^2)) / 2; 0 at C=0, 1 at C=1."""
    c = concurrence(state)
    g = 0.5 * (1.0 + math.sqrt(max(1.0 - c * c, 0.0)))
    return binary_entropy(g)


def correlation_set(state: XState, measured_side: Side = "B") -> CorrelationSet:
    """Evaluate every measure of :class:`CorrelationSet` on one X state.

    The Pauli expectations are the closed-form traces against sigma^z (site
    average) and sigma^a x sigma^a.
    """
    return CorrelationSet(
        discord=discord(state, measured_side),
        eof=entanglement_of_formation(state),
        concurrence=concurrence(state),
        mutual_info=mutual_information(state),
        sz=state.r11 - state.r44,
        sxx=2.0 * (state.r14 + state.r23),
        syy=2.0 * (state.r23 - state.r14),
        szz=state.r11 - state.r22 - state.r33 + state.r44,
    )
