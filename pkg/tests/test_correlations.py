import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import unitary_group

from negspace.correlations import (MeasurementAngles, concurrence, concurrence_literal,
                                   conditional_entropies, conditional_entropy, discord,
                                   measurement_vectors, steering, von_neumann_entropy)
from negspace.errors import NumericalError
from negspace.matcore import dag, partial_trace, tensor
from negspace.qstate import bell_state, pure, werner

from oracles import (concurrence_sqrtm, discord_oracle, random_density, werner_concurrence)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def local_unitary(seed):
    ua = unitary_group.rvs(2, random_state=seed)
    ub = unitary_group.rvs(2, random_state=seed + 1)
    return tensor(ua, ub)


# --- concurrence -------------------------------------------------------------

@pytest.mark.parametrize("w", np.linspace(0, 1, 11))
def test_werner_concurrence(w):
    assert abs(concurrence(werner(w)) - werner_concurrence(w)) < 1e-8


def test_werner_examples():
    assert abs(concurrence(werner(0.25))) < 1e-12
    assert abs(concurrence(werner(0.5)) - 0.25) < 1e-12


def test_bell_and_product():
    assert abs(concurrence(bell_state()) - 1) < 1e-8
    assert concurrence(pure([1, 0, 0, 0])) < 1e-8


def test_literal_route_on_full_rank_states():
    rng = np.random.default_rng(0)
    for _ in range(100):
        rho = random_density(rng)
        assert abs(concurrence(rho) - concurrence_literal(rho)) < 1e-9
        assert abs(concurrence(rho) - concurrence_sqrtm(rho)) < 1e-9


def test_literal_route_on_rank_deficient_states():
    # square roots of round-off-level eigenvalues cap agreement near sqrt(eps)
    rng = np.random.default_rng(1)
    for rank in (1, 2, 3):
        for _ in range(30):
            rho = random_density(rng, rank)
            assert abs(concurrence(rho) - concurrence_literal(rho)) < 1e-6


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_concurrence_local_unitary_invariance(seed):
    rho = random_density(np.random.default_rng(seed))
    u = local_unitary(seed % 2**31)
    assert abs(concurrence(rho) - concurrence(u @ rho @ dag(u))) < 1e-9


def test_negative_radicand_raises():
    # rho * rho~ = diag(0.15, -0.03, -0.03, 0.15) for this non-positive input
    bad = np.diag([0.5, -0.1, 0.3, 0.3]).astype(complex)
    with pytest.raises(NumericalError):
        concurrence(bad)


# --- entropies and conditional entropy -------------------------------------

def test_entropy_bases():
    mixed = np.eye(2) / 2
    assert abs(von_neumann_entropy(mixed) - np.log(2)) < 1e-12
    assert abs(von_neumann_entropy(mixed, 2) - 1) < 1e-12
    assert abs(von_neumann_entropy(bell_state())) < 1e-12


def test_measurement_vectors_orthonormal():
    l, m = measurement_vectors(0.7, 2.1)
    assert abs(np.vdot(l, m)) < 1e-12
    assert abs(np.linalg.norm(l) - 1) < 1e-12 and abs(np.linalg.norm(m) - 1) < 1e-12


def test_bell_conditional_entropy_vanishes_everywhere():
    th, ph = np.meshgrid(np.linspace(0, np.pi, 13), np.linspace(0, 2 * np.pi, 25))
    assert np.max(np.abs(conditional_entropies(bell_state(), th, ph))) < 1e-12
    assert abs(conditional_entropy(bell_state(), MeasurementAngles(0.0, 0.0))) < 1e-12


def test_product_state_conditional_entropy_is_flat():
    rng = np.random.default_rng(5)
    ra, rb = random_density(rng, 2, 2), random_density(rng, 2, 2)
    rho = tensor(ra, rb)
    th, ph = np.meshgrid(np.linspace(0, np.pi, 9), np.linspace(0, 2 * np.pi, 9))
    assert np.allclose(conditional_entropies(rho, th, ph), von_neumann_entropy(ra), atol=1e-12)
    assert abs(discord(rho).value) < 1e-9


def test_classical_state_minimised_by_computational_measurement():
    cc = np.diag([0.5, 0, 0, 0.5]).astype(complex)
    res = discord(cc)
    assert abs(res.value) < 1e-9
    assert min(res.angles.theta, np.pi - res.angles.theta) < 1e-3
    assert abs(conditional_entropy(cc, MeasurementAngles(0.0, 0.0))) < 1e-12


# --- discord -----------------------------------------------------------------

def test_bell_discord():
    assert abs(discord(bell_state()).value - np.log(2)) < 1e-8
    assert abs(discord(bell_state(), base=2).value - 1) < 1e-8


def test_werner_discord_matches_dense_oracle():
    assert abs(discord(werner(0.5)).value - discord_oracle(werner(0.5))) < 1e-6


def test_discord_matches_oracle_on_random_states():
    rng = np.random.default_rng(12)
    for rank in (2, 4):
        rho = random_density(rng, rank)
        assert abs(discord(rho).value - discord_oracle(rho)) < 1e-6


def test_discord_local_unitary_invariance():
    rho = random_density(np.random.default_rng(21))
    u = local_unitary(3)
    assert abs(discord(rho).value - discord(u @ rho @ dag(u)).value) < 1e-7


def test_discord_result_fields():
    res = discord(random_density(np.random.default_rng(9)))
    assert res.converged and res.refined_best <= res.grid_best
    assert 0 <= res.angles.theta <= np.pi and 0 <= res.angles.phi < 2 * np.pi
    assert float(res) == res.value >= -1e-12


def test_discord_measures_subsystem_b():
    # classical on B, quantum on A: measuring B leaves nothing to gain
    plus = np.array([1, 1]) / np.sqrt(2)
    rho = 0.5 * tensor(pure([1, 0]), pure([1, 0])) + 0.5 * tensor(pure(plus), pure([0, 1]))
    assert abs(discord(rho).value) < 1e-8
    swapped = rho.reshape(2, 2, 2, 2).transpose(1, 0, 3, 2).reshape(4, 4)
    assert discord(swapped).value > 1e-3
    assert np.allclose(partial_trace(swapped, "B"), partial_trace(rho, "A"))


# --- steering ----------------------------------------------------------------

def test_bell_steering():
    assert abs(steering(bell_state(), 2) - 1) < 1e-8
    assert abs(steering(bell_state(), 3) - 1) < 1e-8


@pytest.mark.parametrize("w", [0.2, 0.6, 0.8, 1.0])
def test_werner_steering(w):
    s3 = max(0.0, (np.sqrt(3) * w - 1) / (np.sqrt(3) - 1))
    s2 = max(0.0, (np.sqrt(2) * w - 1) / (np.sqrt(2) - 1))
    assert abs(steering(werner(w), 3) - s3) < 1e-12
    assert abs(steering(werner(w), 2) - s2) < 1e-12


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_steering_local_unitary_invariance(seed):
    rho = random_density(np.random.default_rng(seed))
    u = local_unitary(seed % 2**31)
    for n in (2, 3):
        assert abs(steering(rho, n) - steering(u @ rho @ dag(u), n)) < 1e-9


def test_steering_settings():
    with pytest.raises(ValueError):
        steering(bell_state(), 4)
