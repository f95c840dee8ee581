import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import unitary_group

from negspace.correlations import concurrence, correlation_spectrum
from negspace.dwf import ns_state
from negspace.errors import PreconditionError
from negspace.matcore import dag, tensor
from negspace.qstate import bell_state, check_state, maximally_mixed, reconstruct, werner
from negspace.teleport import (CLASSICAL_FIDELITY, deviation_from_spectrum, fidelity_deviation,
                               maximal_fidelity, uqt_check)

from oracles import fidelity_deviation_closed_form, random_density


def test_bell():
    assert abs(maximal_fidelity(bell_state()) - 1) < 1e-12
    assert abs(fidelity_deviation(bell_state())) < 1e-12


def test_werner_half():
    assert abs(maximal_fidelity(werner(0.5)) - 0.75) < 1e-12
    assert abs(fidelity_deviation(werner(0.5))) < 1e-12


def test_deviation_hand_value():
    assert abs(deviation_from_spectrum([1, -1, 0.4]) - 0.0894427191) < 1e-10
    assert abs(fidelity_deviation_closed_form([1, -1, 0.4]) - 0.0894427191) < 1e-10


def test_closed_form_on_bell_diagonal_state():
    # T = 0.5 diag(1, -1, 0.4) is a valid Bell-diagonal state with det T < 0
    e = 0.5 * np.array([1.0, -1.0, 0.4])
    rho = check_state(reconstruct(np.zeros(3), np.zeros(3), np.diag(e)))
    assert abs(fidelity_deviation(rho) - 0.5 * 0.0894427191) < 1e-10
    assert abs(maximal_fidelity(rho) - 0.5 * (1 + 1.2 / 3)) < 1e-12


def test_undefined_when_det_not_negative():
    with pytest.raises(PreconditionError):
        maximal_fidelity(maximally_mixed())
    with pytest.raises(PreconditionError):
        fidelity_deviation(ns_state(2))  # product state: det T = 0


@pytest.mark.parametrize("w", np.linspace(0.34, 1.0, 12))
def test_entangled_werner_states_beat_classical(w):
    assert concurrence(werner(w)) > 0
    assert maximal_fidelity(werner(w)) > CLASSICAL_FIDELITY


@given(st.integers(min_value=0, max_value=2**31 - 2))
@settings(max_examples=25, deadline=None)
def test_local_unitary_invariance(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(rng)
    u = tensor(unitary_group.rvs(2, random_state=seed), unitary_group.rvs(2, random_state=seed + 1))
    moved = u @ rho @ dag(u)
    assert np.allclose(correlation_spectrum(rho), correlation_spectrum(moved), atol=1e-8)
    report, report2 = uqt_check(rho), uqt_check(moved)
    assert abs(report.det_T - report2.det_T) < 1e-10
    if report.F is not None and abs(report.det_T) > 1e-8:
        assert abs(report.F - report2.F) < 1e-10


def test_uqt_reports():
    bell = uqt_check(bell_state())
    assert bell.useful_qt and bell.universal_uqt
    mixed = uqt_check(maximally_mixed())
    assert not mixed.useful_qt and mixed.F is None and mixed.delta is None
    assert any("absent" in line for line in mixed.lines())


def test_zero_deviation_means_equal_moduli():
    rng = np.random.default_rng(0)
    for _ in range(200):
        rho = random_density(rng)
        rep = uqt_check(rho, uqt_tolerance=1e-6)
        if rep.delta is not None and rep.delta <= 1e-6:
            assert np.ptp(rep.abs_e) <= 10 * 1e-6 * 3 * np.sqrt(10)
    rep = uqt_check(werner(0.8))
    assert rep.universal_uqt and np.ptp(rep.abs_e) < 1e-12
