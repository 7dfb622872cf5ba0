"""Dense real-symmetric eigendecomposition and canonical-ensemble weighting.

All model backends funnel their Hamiltonian blocks through :func:`eigh` and
their Boltzmann averaging through :func:`thermal_weights`, so overflow policy
and determinism are decided in one place.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionZero, NonPositiveBeta, NotSymmetric

SYMMETRY_ATOL = 1e-12


@dataclass(frozen=True)
class EigenSystem:
    """Ascending eigenvalues and the matching orthonormal eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.values.shape[0]


def eigh(a: np.ndarray) -> EigenSystem:
    """Full eigendecomposition of a dense real symmetric matrix.

    Deterministic for identical input: the same LAPACK path is taken every
    time, so repeated calls return bitwise-identical spectra.

    Raises NotSymmetric if max|A - A^T| > 1e-12, DimensionZero for an empty
    matrix.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSymmetric(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] == 0:
        raise DimensionZero("cannot diagonalize a 0x0 matrix")
    asym = np.max(np.abs(a - a.T)) if a.shape[0] > 1 else 0.0
    if asym > SYMMETRY_ATOL:
        raise NotSymmetric(f"max|A - A^T| = {asym:.3e} exceeds {SYMMETRY_ATOL}")
    values, vectors = np.linalg.eigh(a)
    return EigenSystem(values=values, vectors=vectors)


def thermal_weights(values: np.ndarray, beta: float) -> tuple[np.ndarray, float]:
    """Normalized Boltzmann weights and log partition function.

    Weights are computed relative to the global minimum energy so that beta
    up to ~1e3 cannot overflow; the returned logZ restores the shift, i.e.
    logZ = log sum_i exp(-beta * values[i]) exactly.
    """
    if not beta > 0:
        raise NonPositiveBeta(f"beta must be > 0, got {beta}")
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise DimensionZero("no energy levels")
    if not np.all(np.isfinite(values)):
        raise ValueError("energy levels must be finite")
    emin = values.min()
    w = np.exp(-beta * (values - emin))
    total = w.sum()
    return w / total, float(np.log(total) - beta * emin)
