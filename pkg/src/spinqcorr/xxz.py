"""Thermal nearest-neighbor observables of the periodic spin-1/2 XXZ chain
in a z field, by exact diagonalization in total-S^z sectors, plus the exact
critical-point equations of the infinite chain.

H = j * sum_i (sx_i sx_{i+1} + sy_i sy_{i+1} + delta * sz_i sz_{i+1})
    - (h/2) * sum_i sz_i          (periodic, sigma operators)

Total S^z is conserved, so the 2^L Hamiltonian splits into fixed-popcount
blocks (dimension C(L, n_up)), each diagonalized densely.  Thermal averages
weight every eigenstate of every sector with global Boltzmann factors, which
reproduces the full-space Gibbs trace exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import LengthTooLarge, NonPositiveTemperature, NoRoot, ZeroExchange
from .qcorr import CorrelationSet, XState, correlation_set
from .spectral import EigenSystem, eigh, thermal_weights

#: largest sector the default configuration will diagonalize; C(14,7) = 3432,
#: so chains up to L = 14 are supported out of the box
DEFAULT_MAX_SECTOR_DIM = 3432

DELTA_MAX = 1e3
ROOT_TOL = 1e-10


@dataclass(frozen=True)
class XXZParams:
    """Anisotropy, field, exchange, temperature, and chain length."""

    delta: float
    h: float = 0.0
    j: float = 1.0
    kt: float = 1.0
    length: int = 12

    def __post_init__(self):
        if not self.kt > 0:
            raise NonPositiveTemperature(f"kt must be > 0, got {self.kt}")
        if self.length < 4 or self.length % 2 != 0:
            raise ValueError(f"length must be an even integer >= 4, got {self.length}")


@dataclass(frozen=True)
class XXZCorrelators:
    """Single-site magnetization and nearest-neighbor two-point functions."""

    sz: float
    szz: float
    sxx: float


@lru_cache(maxsize=32)
def _sector_states(length: int, n_up: int) -> np.ndarray:
    """Ascending bit patterns with n_up set bits; bit i is site i, 1 = up."""
    states = [s for s in range(2**length) if bin(s).count("1") == n_up]
    return np.array(states, dtype=np.int64)


def _z_values(states: np.ndarray, site: int) -> np.ndarray:
    return 2.0 * ((states >> site) & 1) - 1.0


def _sector_hamiltonian(p: XXZParams, states: np.ndarray) -> np.ndarray:
    length = p.length
    dim = states.size
    ham = np.zeros((dim, dim))
    diag = np.zeros(dim)
    for site in range(length):
        nxt = (site + 1) % length
        z_a, z_b = _z_values(states, site), _z_values(states, nxt)
        diag += p.j * p.delta * z_a * z_b - 0.5 * p.h * z_a
        # flip-flop on anti-parallel neighbors: matrix element 2j
        mask = z_a * z_b < 0
        if np.any(mask):
            flipped = states[mask] ^ ((1 << site) | (1 << nxt))
            cols = np.searchsorted(states, flipped)
            rows = np.nonzero(mask)[0]
            ham[rows, cols] += 2.0 * p.j
    ham[np.diag_indices(dim)] = diag
    return ham


def _check_cap(p: XXZParams, max_sector_dim: int) -> None:
    largest = math.comb(p.length, p.length // 2)
    if largest > max_sector_dim:
        raise LengthTooLarge(
            f"largest sector of L={p.length} has dimension {largest}, "
            f"cap is {max_sector_dim}"
        )


def sector_spectra(p: XXZParams, max_sector_dim: int = DEFAULT_MAX_SECTOR_DIM) -> list[EigenSystem]:
    """One eigensystem per total-S^z sector, ordered by n_up = 0..L."""
    _check_cap(p, max_sector_dim)
    out = []
    for n_up in range(p.length + 1):
        states = _sector_states(p.length, n_up)
        out.append(eigh(_sector_hamiltonian(p, states)))
    return out


def correlators(p: XXZParams, max_sector_dim: int = DEFAULT_MAX_SECTOR_DIM) -> XXZCorrelators:
    """Thermal averages of sz, sz.sz, and sx.sx on the site pair (0, 1).

    sx.sx is evaluated through its S^z-conserving flip-flop part
    (s+ s- + s- s+)/2 -> 1/2 matrix element, exact because the S^z-changing
    part has zero expectation in a sector-block-diagonal state.
    """
    _check_cap(p, max_sector_dim)
    all_vals, all_sz, all_szz, all_sxx = [], [], [], []
    for n_up in range(p.length + 1):
        states = _sector_states(p.length, n_up)
        es = eigh(_sector_hamiltonian(p, states))
        vec_sq = es.vectors**2
        z0, z1 = _z_values(states, 0), _z_values(states, 1)
        all_sz.append(z0 @ vec_sq)
        all_szz.append((z0 * z1) @ vec_sq)
        # sigma^x sigma^x == flip-flop within the sector: element 1 between
        # states differing by one anti-parallel swap of sites (0, 1)
        mask = z0 * z1 < 0
        if np.any(mask):
            flipped = states[mask] ^ 0b11
            cols = np.searchsorted(states, flipped)
            rows = np.nonzero(mask)[0]
            sxx_diag = np.einsum("ik,ik->k", es.vectors[rows], es.vectors[cols])
        else:
            sxx_diag = np.zeros(states.size)
        all_sxx.append(sxx_diag)
        all_vals.append(es.values)

    w, _ = thermal_weights(np.concatenate(all_vals), beta=1.0 / p.kt)
    sz = float(w @ np.concatenate(all_sz))
    szz = float(w @ np.concatenate(all_szz))
    sxx = float(w @ np.concatenate(all_sxx))
    return XXZCorrelators(sz=sz, szz=szz, sxx=sxx)


def state_from_correlators(c: XXZCorrelators) -> XState:
    """Nearest-neighbor two-spin X state determined by (sz, szz, sxx)."""
    return XState(
        r11=(1.0 + 2.0 * c.sz + c.szz) / 4.0,
        r22=(1.0 - c.szz) / 4.0,
        r33=(1.0 - c.szz) / 4.0,
        r44=(1.0 - 2.0 * c.sz + c.szz) / 4.0,
        r14=0.0,
        r23=2.0 * c.sxx / 4.0,
    )


def reduced_state(p: XXZParams, max_sector_dim: int = DEFAULT_MAX_SECTOR_DIM) -> XState:
    """Thermal two-spin reduced state of neighboring sites."""
    return state_from_correlators(correlators(p, max_sector_dim))


def correlations(p: XXZParams, max_sector_dim: int = DEFAULT_MAX_SECTOR_DIM) -> CorrelationSet:
    """All correlation measures of the nearest-neighbor reduced state."""
    return correlation_set(reduced_state(p, max_sector_dim))


def cp_first_order(h: float, j: float = 1.0) -> float:
    """Anisotropy of the first-order ground-state transition: h/(4j) - 1."""
    if j == 0.0:
        raise ZeroExchange("exchange j must be nonzero")
    return h / (4.0 * j) - 1.0


def _cpinf_rhs(delta: float, j: float) -> float:
    """4j sinh(eta) sum_n (-1)^n / cosh(n eta) at eta = arccosh(delta)."""
    eta = math.acosh(delta)
    if eta == 0.0:
        return 0.0
    n_terms = min(int(math.ceil(30.0 / eta)) + 10, 10**6)
    n = np.arange(1, n_terms + 1, dtype=float)
    # 1/cosh decays like 2 exp(-n eta); the +10 margin puts the tail below 1e-12
    series = 1.0 + 2.0 * np.sum((-1.0) ** n / np.cosh(n * eta))
    return 4.0 * j * math.sinh(eta) * float(series)


def cp_infinite_order(h: float, j: float = 1.0) -> float:
    """Anisotropy >= 1 at which the infinite-order transition sits for field h.

    Solves h = rhs(delta) by bisection on [1, 1e3]; rhs is strictly
    increasing, vanishes at delta -> 1 (so h = 0 returns exactly 1), and a
    field beyond rhs(1e3) has no root.
    """
    if j <= 0.0:
        raise ZeroExchange(f"exchange j must be > 0, got {j}")
    if h < 0.0:
        raise NoRoot(f"field must be >= 0, got {h}")
    if h == 0.0:
        return 1.0
    lo, hi = 1.0 + 1e-9, DELTA_MAX
    if h > _cpinf_rhs(hi, j):
        raise NoRoot(f"h = {h} exceeds the saturation value {_cpinf_rhs(hi, j):.6g}")
    if h <= _cpinf_rhs(lo, j):
        return 1.0
    while hi - lo > ROOT_TOL:
        mid = 0.5 * (lo + hi)
        if _cpinf_rhs(mid, j) < h:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
