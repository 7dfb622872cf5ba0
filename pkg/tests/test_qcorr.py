import math

import numpy as np
import pytest

from spinqcorr.errors import InvalidState
from spinqcorr.qcorr import (
    GRID_PHI,
    GRID_THETA,
    CorrelationSet,
    MeasurementAngles,
    XState,
    binary_entropy,
    concurrence,
    conditional_entropy,
    correlation_set,
    discord,
    entanglement_of_formation,
    min_conditional_entropy,
    mutual_information,
    von_neumann_entropy,
)

from oracles import (
    brute_discord,
    brute_min_cond_entropy,
    cond_entropy_projective,
    random_xstate_entries,
)

BELL_PHI_PLUS = XState(r11=0.5, r22=0.0, r33=0.0, r44=0.5, r14=0.5)
BELL_PSI_MINUS = XState(r11=0.0, r22=0.5, r33=0.5, r44=0.0, r23=-0.5)
MAX_MIXED = XState(r11=0.25, r22=0.25, r33=0.25, r44=0.25)

# equal mixture of |00><00|, |11><11|, and the projector on (|01>+|10>)/sqrt(2)
ONE_THIRD_STATE = XState(r11=1 / 3, r22=1 / 6, r33=1 / 6, r44=1 / 3, r23=1 / 6)


def random_xstate(rng):
    return XState(*random_xstate_entries(rng))


def werner(p):
    return XState(
        r11=(1 - p) / 4,
        r22=p / 2 + (1 - p) / 4,
        r33=p / 2 + (1 - p) / 4,
        r44=(1 - p) / 4,
        r23=-p / 2,
    )


class TestXState:
    def test_trace_violation_rejected(self):
        with pytest.raises(InvalidState):
            XState(r11=0.5, r22=0.5, r33=0.5, r44=0.5)

    def test_negative_population_rejected(self):
        with pytest.raises(InvalidState):
            XState(r11=-0.01, r22=0.51, r33=0.25, r44=0.25)

    def test_tiny_negative_population_clamped(self):
        st = XState(r11=-1e-13, r22=0.5, r33=0.25, r44=0.25 + 1e-13)
        assert st.r11 == 0.0

    def test_block_positivity_rejected(self):
        with pytest.raises(InvalidState):
            XState(r11=0.1, r22=0.4, r33=0.4, r44=0.1, r14=0.3)

    def test_invariants_hold_on_random_states(self):
        rng = np.random.default_rng(42)
        for _ in range(200):
            st = random_xstate(rng)
            tr = st.r11 + st.r22 + st.r33 + st.r44
            assert abs(tr - 1.0) <= 1e-10
            assert st.r11 * st.r44 >= st.r14**2 - 1e-10
            assert st.r22 * st.r33 >= st.r23**2 - 1e-10
            assert np.all(st.eigenvalues() >= 0.0)

    def test_matrix_roundtrip(self):
        rng = np.random.default_rng(1)
        st = random_xstate(rng)
        again = XState.from_matrix(st.matrix())
        assert again == st


class TestEntropy:
    def test_maximally_mixed(self):
        assert von_neumann_entropy(MAX_MIXED) == pytest.approx(2.0, abs=1e-12)

    def test_bell_state_pure(self):
        assert von_neumann_entropy(BELL_PHI_PLUS) == pytest.approx(0.0, abs=1e-12)

    def test_two_equal_levels(self):
        st = XState(r11=0.5, r22=0.5, r33=0.0, r44=0.0)
        assert von_neumann_entropy(st) == pytest.approx(1.0, abs=1e-12)

    def test_reduced_2x2_input(self):
        assert von_neumann_entropy(np.array([[0.5, 0.0], [0.0, 0.5]])) == pytest.approx(1.0)
        assert von_neumann_entropy(np.array([0.25, 0.75])) == pytest.approx(
            binary_entropy(0.25)
        )


class TestMutualInformation:
    def test_product_state(self):
        p = 0.3
        st = XState(r11=p, r22=1 - p, r33=0.0, r44=0.0)
        assert mutual_information(st) == pytest.approx(0.0, abs=1e-10)

    def test_bell_state(self):
        assert mutual_information(BELL_PHI_PLUS) == pytest.approx(2.0, abs=1e-10)

    def test_classical_correlated(self):
        st = XState(r11=0.5, r22=0.0, r33=0.0, r44=0.5)
        assert mutual_information(st) == pytest.approx(1.0, abs=1e-12)


class TestConditionalEntropy:
    def test_bell_sz_measurement(self):
        m = MeasurementAngles(theta=0.0, phi=0.0)
        assert conditional_entropy(BELL_PHI_PLUS, m) == pytest.approx(0.0, abs=1e-12)

    def test_maximally_mixed_any_angles(self):
        rng = np.random.default_rng(2)
        for _ in range(10):
            m = MeasurementAngles(
                theta=rng.uniform(0, math.pi), phi=rng.uniform(0, 2 * math.pi)
            )
            assert conditional_entropy(MAX_MIXED, m) == pytest.approx(1.0, abs=1e-12)

    def test_classical_state_sx_measurement(self):
        st = XState(r11=0.5, r22=0.0, r33=0.0, r44=0.5)
        m = MeasurementAngles(theta=math.pi / 2, phi=0.0)
        assert conditional_entropy(st, m) == pytest.approx(1.0, abs=1e-12)

    def test_matches_explicit_projector_algebra(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            st = random_xstate(rng)
            theta = rng.uniform(0, math.pi)
            phi = rng.uniform(0, 2 * math.pi)
            side = "A" if rng.random() < 0.5 else "B"
            ours = conditional_entropy(st, MeasurementAngles(theta, phi), side)
            ref = cond_entropy_projective(st.matrix(), theta, phi, side)
            assert ours == pytest.approx(ref, abs=1e-10)

    def test_angle_ranges_validated(self):
        with pytest.raises(ValueError):
            MeasurementAngles(theta=-0.1, phi=0.0)
        with pytest.raises(ValueError):
            MeasurementAngles(theta=0.1, phi=7.0)


class TestMinConditionalEntropy:
    def test_bell_state_zero(self):
        val, _ = min_conditional_entropy(BELL_PHI_PLUS)
        assert val == pytest.approx(0.0, abs=1e-9)

    def test_maximally_mixed_one(self):
        val, _ = min_conditional_entropy(MAX_MIXED)
        assert val == pytest.approx(1.0, abs=1e-9)

    def test_certification_grid_bound(self):
        rng = np.random.default_rng(21)
        thetas = np.linspace(0.0, math.pi, GRID_THETA)
        phis = np.linspace(0.0, 2 * math.pi, GRID_PHI, endpoint=False)
        for _ in range(10):
            st = random_xstate(rng)
            val, _ = min_conditional_entropy(st)
            for theta in thetas[::10]:
                for phi in phis[::10]:
                    assert val <= conditional_entropy(
                        st, MeasurementAngles(theta, phi)
                    ) + 1e-9

    def test_argmin_achieves_value(self):
        rng = np.random.default_rng(22)
        for _ in range(20):
            st = random_xstate(rng)
            val, angles = min_conditional_entropy(st)
            assert conditional_entropy(st, angles) == pytest.approx(val, abs=1e-9)

    def test_against_dense_grid_oracle(self):
        rng = np.random.default_rng(23)
        for _ in range(25):
            st = random_xstate(rng)
            val, _ = min_conditional_entropy(st)
            ref = brute_min_cond_entropy(st.matrix(), n_theta=361)
            assert abs(val - ref) <= 1e-4


class TestDiscord:
    def test_bell_state(self):
        assert discord(BELL_PHI_PLUS) == pytest.approx(1.0, abs=1e-8)
        assert discord(BELL_PSI_MINUS) == pytest.approx(1.0, abs=1e-8)

    def test_product_state_zero(self):
        st = XState(r11=0.42, r22=0.58, r33=0.0, r44=0.0)
        assert discord(st) == pytest.approx(0.0, abs=1e-8)

    def test_classical_state_zero(self):
        st = XState(r11=0.5, r22=0.0, r33=0.0, r44=0.5)
        assert discord(st) == pytest.approx(0.0, abs=1e-8)

    def test_one_third_state(self):
        assert discord(ONE_THIRD_STATE) == pytest.approx(1.0 / 3.0, abs=1e-4)

    def test_against_brute_force(self):
        rng = np.random.default_rng(31)
        for _ in range(10):
            st = random_xstate(rng)
            ref = brute_discord(st.matrix(), n_theta=361)
            assert discord(st) == pytest.approx(ref, abs=2e-4)


class TestConcurrenceEof:
    def test_bell_state(self):
        assert concurrence(BELL_PSI_MINUS) == pytest.approx(1.0, abs=1e-12)
        assert entanglement_of_formation(BELL_PSI_MINUS) == pytest.approx(1.0, abs=1e-12)

    def test_diagonal_states_zero(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            pops = rng.dirichlet(np.ones(4))
            st = XState(*pops)
            assert concurrence(st) == 0.0
            assert entanglement_of_formation(st) == 0.0

    def test_werner_half(self):
        st = werner(0.5)
        assert concurrence(st) == pytest.approx(0.25, abs=1e-12)
        g = 0.5 * (1.0 + math.sqrt(1.0 - 0.0625))
        expected = -g * math.log2(g) - (1 - g) * math.log2(1 - g)
        assert entanglement_of_formation(st) == pytest.approx(expected, abs=1e-12)

    def test_eof_monotone_in_concurrence(self):
        cs = np.linspace(0.0, 1.0, 101)
        gs = 0.5 * (1.0 + np.sqrt(1.0 - cs**2))
        eofs = [binary_entropy(g) for g in gs]
        assert all(b >= a - 1e-12 for a, b in zip(eofs, eofs[1:]))
        states = [werner(p) for p in np.linspace(1 / 3 + 0.01, 1.0, 40)]
        pairs = [(concurrence(s), entanglement_of_formation(s)) for s in states]
        for (c1, e1), (c2, e2) in zip(pairs, pairs[1:]):
            assert c2 >= c1
            assert e2 >= e1 - 1e-12


class TestProperties:
    def test_discord_symmetric_when_r22_equals_r33(self):
        rng = np.random.default_rng(51)
        for _ in range(100):
            r11, r22, _, r44, r14, _ = random_xstate_entries(rng)
            # rebalance so r22 == r33 while keeping positivity
            mid = (1.0 - r11 - r44) / 2.0
            r23 = rng.uniform(-1.0, 1.0) * mid
            st = XState(r11, mid, mid, r44, r14 * 0.9, r23)
            assert abs(discord(st, "A") - discord(st, "B")) <= 1e-6

    def test_pure_state_discord_equals_eof(self):
        rng = np.random.default_rng(52)
        for _ in range(100):
            if rng.random() < 0.5:
                a = rng.uniform(0.0, 1.0)
                amp = np.array([math.sqrt(a), 0.0, 0.0, math.copysign(math.sqrt(1 - a), rng.standard_normal())])
            else:
                a = rng.uniform(0.0, 1.0)
                amp = np.array([0.0, math.sqrt(a), math.copysign(math.sqrt(1 - a), rng.standard_normal()), 0.0])
            rho = np.outer(amp, amp)
            st = XState.from_matrix(rho)
            d = discord(st)
            e = entanglement_of_formation(st)
            s_a = von_neumann_entropy(st.marginal("A"))
            assert abs(d - e) <= 1e-5
            assert abs(d - s_a) <= 1e-5

    def test_discord_bounded_by_mutual_information(self):
        rng = np.random.default_rng(53)
        for _ in range(100):
            st = random_xstate(rng)
            d = discord(st)
            assert d >= -1e-9
            assert d <= mutual_information(st) + 1e-9


def test_correlation_set_fields():
    cs = correlation_set(ONE_THIRD_STATE)
    assert isinstance(cs, CorrelationSet)
    assert cs.discord == pytest.approx(1.0 / 3.0, abs=1e-4)
    assert cs.eof == 0.0
    assert cs.concurrence == 0.0
    assert cs.mutual_info >= cs.discord - 1e-9
    assert cs.sz == pytest.approx(0.0, abs=1e-15)
    assert cs.sxx == pytest.approx(2.0 * (0.0 + 1 / 6))
    assert cs.syy == pytest.approx(2.0 * (1 / 6 - 0.0))
    assert cs.szz == pytest.approx(1 / 3 - 1 / 6 - 1 / 6 + 1 / 3)
