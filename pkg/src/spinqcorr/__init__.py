"""Thermal quantum correlations of spin-1/2 chains and QPT critical-point estimation."""

import os as _os

# QCORR_THREADS caps BLAS/OpenMP parallelism; it must be exported before the
# first numpy import to take effect, so this runs ahead of the submodules
if "QCORR_THREADS" in _os.environ:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        _os.environ.setdefault(_var, _os.environ["QCORR_THREADS"])

from . import critical, qcorr, spectral, xxz, xy, xyz2
from .qcorr import (
    CorrelationSet,
    MeasurementAngles,
    XState,
    concurrence,
    conditional_entropy,
    correlation_set,
    discord,
    entanglement_of_formation,
    min_conditional_entropy,
    mutual_information,
    von_neumann_entropy,
)
from .spectral import EigenSystem, eigh, thermal_weights

__all__ = [
    "CorrelationSet",
    "EigenSystem",
    "MeasurementAngles",
    "XState",
    "concurrence",
    "conditional_entropy",
    "correlation_set",
    "critical",
    "discord",
    "eigh",
    "entanglement_of_formation",
    "min_conditional_entropy",
    "mutual_information",
    "qcorr",
    "spectral",
    "thermal_weights",
    "von_neumann_entropy",
    "xxz",
    "xy",
    "xyz2",
]

__version__ = "0.1.0"
