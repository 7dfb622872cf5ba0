import math

import numpy as np
import pytest

from spinqcorr.errors import NonPositiveTemperature
from spinqcorr.qcorr import discord, entanglement_of_formation
from spinqcorr.xy import (
    QUAD_ATOL,
    GFunction,
    XYParams,
    _adaptive_integrals,
    _fixed_panel_integrals,
    correlations,
    correlators,
    g_function,
    omega,
    reduced_state,
    transverse_magnetization,
    xx_correlator,
    yy_correlator,
    zz_correlator,
)

from oracles import xy_brute_correlators

# L=8 dense ED carries finite-size error of a few percent at kt ~ 0.5; the
# tight 2e-2 comparison against frozen L=16 values lives in the acceptance
# suite.
L8_TOL = 0.1


class TestOmega:
    def test_field_only_limit(self):
        p = XYParams(lam=0.0, gamma=0.3, kt=1.0)
        for phi in np.linspace(0.0, math.pi, 7):
            assert omega(phi, p) == pytest.approx(0.5, abs=1e-15)

    def test_ising_gap_closes(self):
        assert omega(math.pi, XYParams(lam=1.0, gamma=1.0, kt=1.0)) == pytest.approx(
            0.0, abs=1e-12
        )

    def test_direct_substitution(self):
        p = XYParams(lam=2.0, gamma=0.5, kt=1.0)
        assert omega(math.pi / 2.0, p) == pytest.approx(math.sqrt(2.0) / 2.0, abs=1e-14)

    def test_nonnegative(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            p = XYParams(lam=rng.uniform(0, 3), gamma=rng.uniform(-1, 1), kt=1.0)
            assert omega(rng.uniform(0, math.pi), p) >= 0.0


class TestTransverseMagnetization:
    def test_infinite_temperature(self):
        assert transverse_magnetization(
            XYParams(lam=1.2, gamma=0.6, kt=1e6)
        ) == pytest.approx(0.0, abs=1e-5)

    def test_field_only_single_spin_value(self):
        # decoupled spins in a unit field: <sz> = tanh(1/kt), verified also
        # by the two-site ED oracle
        kt = 0.5
        val = transverse_magnetization(XYParams(lam=0.0, gamma=1.0, kt=kt))
        assert val == pytest.approx(math.tanh(1.0 / kt), abs=1e-10)
        sz_ed, *_ = xy_brute_correlators(2, 0.0, 1.0, kt)
        assert val == pytest.approx(sz_ed, abs=1e-10)

    def test_against_small_chain_ed(self):
        sz_ed, *_ = xy_brute_correlators(8, 0.5, 1.0, 0.1)
        val = transverse_magnetization(XYParams(lam=0.5, gamma=1.0, kt=0.1))
        assert val == pytest.approx(sz_ed, abs=L8_TOL)

    def test_temperature_rejected(self):
        with pytest.raises(NonPositiveTemperature):
            XYParams(lam=1.0, gamma=1.0, kt=0.0)


class TestGFunction:
    def test_even_in_m_at_gamma_zero(self):
        p = XYParams(lam=1.3, gamma=0.0, kt=0.4, k=3)
        for m in (1, 2, 3):
            assert g_function(m, p) == pytest.approx(g_function(-m, p), abs=1e-12)

    def test_vanishes_at_infinite_temperature(self):
        p = XYParams(lam=1.3, gamma=0.7, kt=1e6, k=2)
        for m in range(-2, 3):
            assert g_function(m, p) == pytest.approx(0.0, abs=1e-5)

    def test_bounded_by_one(self):
        rng = np.random.default_rng(17)
        for _ in range(20):
            p = XYParams(
                lam=rng.uniform(0, 3), gamma=rng.uniform(-1, 1), kt=10 ** rng.uniform(-2, 1), k=2
            )
            for m in range(-2, 3):
                assert abs(g_function(m, p)) <= 1.0 + 1e-9

    def test_cache_bound(self):
        _, g = (0.0, GFunction(k=1, values=np.zeros(3)))
        with pytest.raises(IndexError):
            g.at(2)

    def test_nearest_neighbor_xx_against_ed(self):
        p = XYParams(lam=1.0, gamma=1.0, kt=0.1, k=1)
        _, xx_ed, _, _ = xy_brute_correlators(8, 1.0, 1.0, 0.1)
        assert g_function(-1, p) == pytest.approx(xx_ed, abs=L8_TOL)


class TestCorrelators:
    def test_k1_identities(self):
        p = XYParams(lam=1.4, gamma=0.6, kt=0.3, k=1)
        assert xx_correlator(p) == pytest.approx(g_function(-1, p), abs=1e-14)
        assert yy_correlator(p) == pytest.approx(g_function(1, p), abs=1e-14)

    def test_k1_gamma_zero_isotropy(self):
        p = XYParams(lam=1.4, gamma=0.0, kt=0.3, k=1)
        assert xx_correlator(p) == pytest.approx(yy_correlator(p), abs=1e-12)

    def test_k2_determinant_expansion(self):
        p = XYParams(lam=1.2, gamma=0.5, kt=0.4, k=2)
        expected = g_function(-1, p) ** 2 - g_function(-2, p) * g_function(0, p)
        assert xx_correlator(p) == pytest.approx(expected, abs=1e-13)

    def test_zz_infinite_temperature(self):
        assert zz_correlator(XYParams(lam=1.5, gamma=0.5, kt=1e6)) == pytest.approx(
            0.0, abs=1e-5
        )

    def test_zz_bounded(self):
        rng = np.random.default_rng(23)
        for _ in range(15):
            p = XYParams(
                lam=rng.uniform(0, 3), gamma=rng.uniform(-1, 1), kt=10 ** rng.uniform(-2, 1)
            )
            assert abs(zz_correlator(p)) <= 1.0 + 1e-9

    def test_all_against_small_chain_ed(self):
        for lam, gamma, kt in [(0.5, 1.0, 0.5), (1.5, 1.0, 0.5), (1.5, 0.5, 0.3), (1.0, 0.0, 0.5)]:
            sz, xx, yy, zz = correlators(XYParams(lam=lam, gamma=gamma, kt=kt))
            ed = xy_brute_correlators(8, lam, gamma, kt)
            assert sz == pytest.approx(ed[0], abs=L8_TOL), (lam, gamma, kt)
            assert xx == pytest.approx(ed[1], abs=L8_TOL), (lam, gamma, kt)
            assert yy == pytest.approx(ed[2], abs=L8_TOL), (lam, gamma, kt)
            assert zz == pytest.approx(ed[3], abs=L8_TOL), (lam, gamma, kt)

    def test_gamma_sign_flip_swaps_xx_yy(self):
        pp = XYParams(lam=1.7, gamma=0.45, kt=0.25, k=2)
        pm = XYParams(lam=1.7, gamma=-0.45, kt=0.25, k=2)
        assert xx_correlator(pp) == pytest.approx(yy_correlator(pm), abs=1e-12)
        assert yy_correlator(pp) == pytest.approx(xx_correlator(pm), abs=1e-12)
        assert zz_correlator(pp) == pytest.approx(zz_correlator(pm), abs=1e-12)


class TestQuadrature:
    def test_self_convergence_under_panel_doubling(self):
        for lam, gamma, kt in [(1.0, 1.0, 0.1), (1.5, 0.0, 0.01), (0.5, -0.5, 1.0)]:
            p = XYParams(lam=lam, gamma=gamma, kt=kt, k=2)
            _, delta, n_panels = _adaptive_integrals(p)
            assert delta < QUAD_ATOL
            once_more = _fixed_panel_integrals(p, 2 * n_panels)
            converged = _fixed_panel_integrals(p, n_panels)
            assert np.max(np.abs(once_more - converged)) < 1e-10


class TestReducedState:
    def test_infinite_temperature_maximally_mixed(self):
        st = reduced_state(XYParams(lam=1.2, gamma=0.8, kt=1e6))
        for pop in (st.r11, st.r22, st.r33, st.r44):
            assert pop == pytest.approx(0.25, abs=1e-5)

    def test_valid_over_parameter_box(self):
        for lam in (0.0, 0.5, 1.0, 1.5, 3.0):
            for gamma in (-1.0, -0.3, 0.0, 0.4, 1.0):
                for kt in (1e-3, 0.1, 1.0):
                    for k in (1, 2):
                        st = reduced_state(XYParams(lam=lam, gamma=gamma, kt=kt, k=k))
                        assert min(st.eigenvalues()) >= -1e-12, (lam, gamma, kt, k)

    def test_gamma_flip_leaves_measures_invariant(self):
        pp = XYParams(lam=1.5, gamma=0.6, kt=0.2)
        pm = XYParams(lam=1.5, gamma=-0.6, kt=0.2)
        assert discord(reduced_state(pp)) == pytest.approx(
            discord(reduced_state(pm)), abs=1e-8
        )
        assert entanglement_of_formation(reduced_state(pp)) == pytest.approx(
            entanglement_of_formation(reduced_state(pm)), abs=1e-12
        )

    def test_discord_robust_while_eof_near_zero(self):
        # at kt = 0.5 the discord stays finite across the field sweep while
        # entanglement is zero or close to zero everywhere
        lams = np.linspace(0.1, 2.0, 20)
        sets = [correlations(XYParams(lam=l, gamma=1.0, kt=0.5)) for l in lams]
        assert all(s.discord > 1e-4 for s in sets)
        assert all(s.eof <= 0.06 for s in sets)
        assert sum(1 for s in sets if s.eof < s.discord) >= 0.8 * len(sets)
        # by kt = 1.0 entanglement is exactly dead over a wide window
        sets = [correlations(XYParams(lam=l, gamma=1.0, kt=1.0)) for l in lams]
        assert sum(1 for s in sets if s.eof == 0.0) >= 0.35 * len(sets)
