import numpy as np
import pytest

from negspace.channels import ADParams, RTNParams, apply_two_qubit, kraus
from negspace.correlations import concurrence
from negspace.errors import ParameterError, SelectionError
from negspace.qstate import I2, bell_state, pure, validate
from negspace.wmqmr import NO_PROTECTION, StrengthPair, pipeline, qmr_operator, wm_operator

from oracles import random_density


def test_operators_from_caption_strengths():
    assert np.allclose(np.diag(wm_operator(0.17)), [1, np.sqrt(0.83), np.sqrt(0.83), 0.83])
    assert np.allclose(np.diag(qmr_operator(0.54)), [0.46, np.sqrt(0.46), np.sqrt(0.46), 1])


@pytest.mark.parametrize("bad", [-0.1, 1.0, 1.5])
def test_strength_range(bad):
    with pytest.raises(ParameterError):
        StrengthPair(bad, 0.0)
    with pytest.raises(ParameterError):
        wm_operator(bad)


def test_zero_strength_is_bare_channel():
    rho = random_density(np.random.default_rng(2))
    res = pipeline(rho, kraus(ADParams(), 3.0), NO_PROTECTION)
    assert np.allclose(res.state, apply_two_qubit(kraus(ADParams(), 3.0), rho))
    assert abs(res.success_probability - 1) < 1e-12


def test_bell_keeps_full_concurrence_on_diagonal():
    # at t = 0 WM and QMR cancel up to normalisation when q = p
    for p in (0.01, 0.3, 0.74):
        res = pipeline(bell_state(), kraus(ADParams(), 0.0), StrengthPair(p, p))
        assert abs(concurrence(res.state) - 1) < 1e-8


def test_outputs_are_states():
    rng = np.random.default_rng(3)
    for _ in range(1000):
        params = ADParams() if rng.random() < 0.5 else RTNParams()
        s = StrengthPair(*np.round(rng.uniform(0, 0.99, size=2), 2))
        res = pipeline(random_density(rng, int(rng.integers(1, 5))),
                       kraus(params, rng.uniform(0, 60)), s)
        diag = validate(res.state)
        assert diag.hermitian and diag.unit_trace and diag.min_eigenvalue >= -1e-9
        assert 0 < res.success_probability <= 1 + 1e-12


def test_vanishing_selection():
    # a near-complete weak measurement leaves almost nothing of |11>
    with pytest.raises(SelectionError):
        pipeline(pure([0, 0, 0, 1]), [I2], StrengthPair(0.999999999, 0.0))
