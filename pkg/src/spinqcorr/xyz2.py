"""Closed-form thermal state of two spins coupled by an anisotropic exchange
(couplings jx, jy, jz) in a transverse field b.

H = (jx/4) sx.sx + (jy/4) sy.sy + (jz/4) sz.sz + (b/2)(sz1 + sz2)

The Gibbs state of this 4x4 Hamiltonian is an X state whose entries have
closed forms; they are evaluated with a global exponent shift so that kt
down to 1e-3 with couplings of order 50 cannot overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonPositiveTemperature
from .qcorr import CorrelationSet, XState, correlation_set


@dataclass(frozen=True)
class TwoSpinXYZParams:
    """Couplings, transverse field, and temperature (energy units, k_B = 1)."""

    jx: float
    jy: float
    jz: float
    b: float = 0.0
    kt: float = 1.0

    def __post_init__(self):
        if not self.kt > 0:
            raise NonPositiveTemperature(f"kt must be > 0, got {self.kt}")
        for name in ("jx", "jy", "jz", "b", "kt"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


def hamiltonian(p: TwoSpinXYZParams) -> np.ndarray:
    """Explicit 4x4 matrix in the basis |00>,|01>,|10>,|11>."""
    h = np.zeros((4, 4))
    h[0, 0] = p.jz / 4.0 + p.b
    h[1, 1] = h[2, 2] = -p.jz / 4.0
    h[3, 3] = p.jz / 4.0 - p.b
    h[0, 3] = h[3, 0] = (p.jx - p.jy) / 4.0
    h[1, 2] = h[2, 1] = (p.jx + p.jy) / 4.0
    return h


def thermal_state(p: TwoSpinXYZParams) -> XState:
    """Gibbs state exp(-H/kt)/Z as an X state, via the closed-form entries."""
    delta = p.jx - p.jy
    sigma = p.jx + p.jy
    eta = math.hypot(delta, 4.0 * p.b)
    alpha = p.jz / (4.0 * p.kt)
    beta = eta / (4.0 * p.kt)
    gamma = sigma / (4.0 * p.kt)

    # shift all exponents by the largest so every exp() argument is <= 0
    q1, q2, q3, q4 = -alpha + beta, -alpha - beta, alpha + gamma, alpha - gamma
    m = max(q1, q2, q3, q4)
    e1, e2, e3, e4 = (math.exp(q - m) for q in (q1, q2, q3, q4))

    # ratio = exp(-alpha - m) * sinh(beta) / eta, with the removable
    # singularity at eta -> 0 taken as its limit 1/(4 kt)
    if beta > 1e-8:
        ratio = (e1 - e2) / (2.0 * eta)
    else:
        ratio = math.exp(-alpha - m) * (1.0 + beta * beta / 6.0) / (4.0 * p.kt)

    a11 = 0.5 * (e1 + e2) - 4.0 * p.b * ratio
    a22 = 0.5 * (e1 + e2) + 4.0 * p.b * ratio
    a12 = -delta * ratio
    b11 = 0.5 * (e3 + e4)
    b12 = -0.5 * (e3 - e4)
    z = e1 + e2 + e3 + e4

    return XState(
        r11=a11 / z, r22=b11 / z, r33=b11 / z, r44=a22 / z, r14=a12 / z, r23=b12 / z
    )


def correlations(p: TwoSpinXYZParams) -> CorrelationSet:
    """All correlation measures of the thermal state at these parameters."""
    return correlation_set(thermal_state(p))
