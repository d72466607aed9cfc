import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import brentq

from dimerstate.correlations import (
    BellDiagonalState, binary_entropy, classical_correlation, concurrence, concurrence_at,
    concurrence_wootters_oracle, correlation_point, discord_oracle, entanglement_of_formation,
    entanglement_temperature, mutual_information, quantum_discord, xlog2x,
)
from dimerstate.dimer import correlation_function
from dimerstate.errors import DomainError

# mpmath, 30 digits
I_THRESHOLD = 0.207518749639421909
C_CL_THIRD = 0.0817041659455104852
Q_THRESHOLD = 0.125814583693911424
EOF_HALF = 0.354578902665269884


def luo_discord(c1, c2, c3):
    """Discord of a general Bell-diagonal state (closed form with max |c_i|)."""
    lam = np.array([1 - c1 - c2 - c3, 1 - c1 + c2 + c3, 1 + c1 - c2 + c3, 1 + c1 + c2 - c3]) / 4
    mi = 2 + sum(l * math.log2(l) for l in lam if l > 0)
    c = max(abs(c1), abs(c2), abs(c3))
    cl = sum(0.5 * t * math.log2(t) for t in (1 - c, 1 + c) if t > 0)
    return mi - cl


def bell_diagonal(c1, c2, c3):
    s = [np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.diag([1, -1])]
    return (np.eye(4) + c1 * np.kron(s[0], s[0]) + c2 * np.kron(s[1], s[1]) + c3 * np.kron(s[2], s[2])) / 4


def test_state_eigenvalues():
    for c in (-1.0, -0.5, 0.0, 1 / 3):
        st_ = BellDiagonalState(c)
        ev = np.sort(np.linalg.eigvalsh(st_.density_matrix()))
        np.testing.assert_allclose(ev, np.sort(st_.eigenvalues), atol=1e-15)
        assert st_.eigenvalues.sum() == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("c", [-1.01, 0.34, float("nan")])
def test_domain(c):
    for f in (mutual_information, classical_correlation, quantum_discord, concurrence, BellDiagonalState):
        with pytest.raises(DomainError):
            f(c)


def test_xlog2x_zero_branch():
    assert xlog2x(0.0) == 0.0
    assert xlog2x(1e-301) == 0.0
    assert xlog2x(0.5) == -0.5
    assert binary_entropy(0.5) == 1.0


@pytest.mark.parametrize("c,I", [(0.0, 0.0), (-1.0, 2.0), (-1 / 3, I_THRESHOLD)])
def test_mutual_information(c, I):
    assert mutual_information(c) == pytest.approx(I, abs=1e-14)


def test_mutual_information_in_susceptibility_form():
    x = np.linspace(0.01, 4 / 3 - 0.01, 50)
    form_x = 0.25 * ((4 - 3 * x) * np.log2(4 - 3 * x) + 3 * x * np.log2(x))
    np.testing.assert_allclose(mutual_information(x - 1), form_x, atol=1e-14)


@pytest.mark.parametrize("c,C", [(0.0, 0.0), (-1.0, 1.0), (1 / 3, C_CL_THIRD), (-1 / 3, C_CL_THIRD)])
def test_classical_correlation(c, C):
    assert classical_correlation(c) == pytest.approx(C, abs=1e-14)


@pytest.mark.parametrize("c,Q", [(0.0, 0.0), (-1.0, 1.0), (-1 / 3, Q_THRESHOLD), (1 / 3, 1 / 3)])
def test_quantum_discord(c, Q):
    assert quantum_discord(c) == pytest.approx(Q, abs=1e-14)


def test_discord_oracle_endpoints():
    assert discord_oracle(BellDiagonalState(0.0)) == pytest.approx(0.0, abs=1e-8)
    assert discord_oracle(BellDiagonalState(-1.0)) == pytest.approx(1.0, abs=1e-8)
    assert discord_oracle(BellDiagonalState(-1 / 3)) == pytest.approx(Q_THRESHOLD, abs=1e-8)


def test_discord_oracle_random_points(rng):
    for c in rng.uniform(-1, 1 / 3, 50):
        assert discord_oracle(BellDiagonalState(c)) == pytest.approx(quantum_discord(c), abs=1e-6)


@pytest.mark.parametrize("cs", [(0.3, -0.1, 0.05), (-0.6, -0.2, -0.2), (0.1, 0.5, -0.3), (-0.4, 0.2, 0.7)])
def test_discord_oracle_finds_optimal_axis(cs):
    # anisotropic states: the optimum is along a single axis, not everywhere on the sphere
    assert discord_oracle(bell_diagonal(*cs)) == pytest.approx(luo_discord(*cs), abs=1e-8)


@pytest.mark.parametrize("c,C", [(-1.0, 1.0), (-1 / 3, 0.0), (-2 / 3, 0.5), (0.0, 0.0), (1 / 3, 0.0)])
def test_concurrence(c, C):
    assert concurrence(c) == pytest.approx(C, abs=1e-15)


def test_concurrence_matches_wootters_sweep():
    for c in np.arange(-1.0, 1 / 3 + 1e-12, 0.01):
        c = min(c, 1 / 3)
        assert concurrence_wootters_oracle(BellDiagonalState(c)) == pytest.approx(concurrence(c), abs=1e-12)
    assert concurrence_wootters_oracle(BellDiagonalState(-1.0)) == pytest.approx(1.0, abs=1e-12)
    assert concurrence_wootters_oracle(BellDiagonalState(0.0)) == pytest.approx(0.0, abs=1e-12)


def test_wootters_oracle_on_pure_states(rng):
    for _ in range(10):
        psi = rng.normal(size=4) + 1j * rng.normal(size=4)
        psi /= np.linalg.norm(psi)
        expected = 2 * abs(psi[0] * psi[3] - psi[1] * psi[2])
        assert concurrence_wootters_oracle(np.outer(psi, psi.conj())) == pytest.approx(expected, abs=1e-6)


@pytest.mark.parametrize("C,E", [(0.0, 0.0), (1.0, 1.0), (0.5, EOF_HALF)])
def test_entanglement_of_formation(C, E):
    assert entanglement_of_formation(C) == pytest.approx(E, abs=1e-14)


def test_eof_numeric_cross_check():
    # direct binary entropy of (1 + sqrt(1 - C^2))/2
    for C in np.linspace(0.01, 0.99, 30):
        p = (1 + math.sqrt(1 - C * C)) / 2
        assert entanglement_of_formation(C) == pytest.approx(-p * math.log2(p) - (1 - p) * math.log2(1 - p),
                                                             abs=1e-14)


def test_eof_domain():
    with pytest.raises(DomainError):
        entanglement_of_formation(1.1)


def test_entanglement_temperature():
    assert entanglement_temperature(0.0) == 0.0
    assert entanglement_temperature(5.0) == 0.0
    te = entanglement_temperature(-10.0)
    assert te == pytest.approx(9.1024, abs=1e-4)
    assert round(te / 10.0, 2) == 0.91


def test_entanglement_temperature_is_concurrence_root():
    J = -10.0
    root = brentq(lambda T: -(1 + 3 * correlation_function(J, T)) / 2, 1.0, 100.0, xtol=1e-14, rtol=1e-15)
    assert root == pytest.approx(entanglement_temperature(J), rel=1e-9)


def test_concurrence_at_vanishes_from_threshold_up():
    J = -10.0
    te = entanglement_temperature(J)
    assert concurrence_at(J, te) == 0.0
    assert concurrence_at(J, te * (1 + 1e-9)) == 0.0
    assert concurrence_at(J, te * 0.99) > 0.0
    assert concurrence_at(3.0, 0.01) == 0.0


def test_correlation_point_invariants():
    for J in (-10.0, 0.0, 10.0):
        for T in (0.05, 1.0, 9.0, 50.0):
            p = correlation_point(J, T)
            assert p.discord == pytest.approx(p.mutual_info - p.classical, abs=1e-12)
            assert 0 <= p.classical <= p.mutual_info + 1e-15
            assert 0 <= p.discord <= 1 and 0 <= p.concurrence <= 1 and 0 <= p.eof <= 1
            assert (p.eof == 0) == (p.concurrence == 0)
            assert p.x == pytest.approx(p.c + 1, abs=1e-15)


@settings(max_examples=200, deadline=None)
@given(c=st.floats(-1.0, 1 / 3))
def test_bounds(c):
    Q = quantum_discord(c)
    assert 0 <= Q <= 1
    assert entanglement_of_formation(concurrence(c)) >= 0
    assert mutual_information(c) <= 2 + 1e-15
    assert classical_correlation(c) <= 1 + 1e-15
    if abs(c) > 1e-6:  # Q ~ c^2 underflows below this
        assert Q > 0


@settings(max_examples=100, deadline=None)
@given(J=st.floats(-100, -0.1), f=st.floats(1.0, 100.0))
def test_discord_without_entanglement(J, f):
    T = entanglement_temperature(J) * f
    p = correlation_point(J, T)
    assert p.concurrence == 0 and p.eof == 0
    if p.c != 0:
        assert p.discord > 0


def test_vectorised_matches_scalar():
    c = np.linspace(-1, 1 / 3, 11)
    np.testing.assert_array_equal(quantum_discord(c), [quantum_discord(v) for v in c])
    np.testing.assert_array_equal(concurrence(c), [concurrence(v) for v in c])
