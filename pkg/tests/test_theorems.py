import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pvdsim.checks import dim_suite, gentle_suite
from pvdsim.qstate import (DenseState, check_distinguish_implies_map, check_gentle_measurement,
                           random_density, random_projector, random_state)
from pvdsim.randomness import make_rng

KET0 = np.diag([1.0, 0.0])
PLUS = np.full((2, 2), 0.5)


def test_gentle_projector_covering_support():
    rho = np.diag([0.3, 0.7, 0.0, 0.0])
    res = check_gentle_measurement(rho, np.diag([1.0, 1.0, 0.0, 0.0]))
    assert res.delta == pytest.approx(0.0, abs=1e-12)
    assert res.td == pytest.approx(0.0, abs=1e-12)
    assert res.satisfied


def test_gentle_plus_state_projected_on_zero():
    res = check_gentle_measurement(PLUS, KET0)
    assert res.delta == pytest.approx(0.5)
    assert res.td == pytest.approx(1 / math.sqrt(2))
    assert res.bound == pytest.approx(2 * math.sqrt(0.5))
    assert res.satisfied


def test_gentle_rejects_zero_acceptance():
    with pytest.raises(ValueError):
        check_gentle_measurement(KET0, np.diag([0.0, 1.0]))


def test_gentle_rejects_non_projector():
    with pytest.raises(ValueError):
        check_gentle_measurement(PLUS, np.diag([0.5, 1.0]))


@settings(max_examples=200)
@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 4))
def test_gentle_bound_on_random_instances(seed, q):
    rng = make_rng(seed)
    dim = 1 << q
    rho = random_density(dim, rng)
    proj = random_projector(dim, 1 + int(rng.integers(dim)), rng)
    assert check_gentle_measurement(rho, proj).satisfied


def test_gentle_suite_thousand_instances():
    result = gentle_suite(1000, seed=0)
    assert result.ok, result.failures


def test_dim_identity_and_projector_cases():
    p0 = np.diag([1.0, 0.0, 0.0, 0.0])
    p1 = np.diag([0.0, 1.0, 0.0, 0.0])
    psi = DenseState(np.array([0.6, 0.8, 0.0, 0.0]))
    for d in (np.eye(4), p0):
        res = check_distinguish_implies_map(d, p0, p1, psi)
        assert res.lhs == pytest.approx(0.0, abs=1e-12)
        assert res.rhs == pytest.approx(0.0, abs=1e-12)
        assert res.satisfied


def test_dim_swap_like_distinguisher_maps():
    # D projects onto |+> inside span{|0>,|1>}: it distinguishes nothing but maps between them
    p0, p1 = np.diag([1.0, 0.0]), np.diag([0.0, 1.0])
    psi = DenseState(np.array([1.0, 1.0]) / math.sqrt(2))
    res = check_distinguish_implies_map(PLUS, p0, p1, psi)
    # lhs = 2 * |<1|+><+|0>|^2 / 2 = 1/4; rhs = 1/2 (1 - 1/2)^2 = 1/8
    assert res.lhs == pytest.approx(0.25)
    assert res.rhs == pytest.approx(0.125)
    assert res.satisfied


def test_dim_rejects_overlapping_projectors():
    p = np.diag([1.0, 0.0])
    with pytest.raises(ValueError):
        check_distinguish_implies_map(np.eye(2), p, p, DenseState(np.array([1.0, 0.0])))


def test_dim_rejects_state_outside_image():
    p0 = np.diag([1.0, 0.0, 0.0, 0.0])
    p1 = np.diag([0.0, 1.0, 0.0, 0.0])
    psi = DenseState(np.array([0.0, 0.0, 1.0, 0.0]))
    with pytest.raises(ValueError):
        check_distinguish_implies_map(np.eye(4), p0, p1, psi)


@settings(max_examples=200)
@given(st.integers(0, 2 ** 32 - 1))
def test_dim_on_random_three_qubit_instances(seed):
    rng = make_rng(seed)
    dim = 8
    psi_full = random_state(3, rng)
    r0 = 1 + int(rng.integers(dim - 1))
    proj = random_projector(dim, r0, rng)
    p0 = proj
    p1 = np.eye(dim) - proj
    d = random_projector(dim, 1 + int(rng.integers(dim)), rng)
    assert check_distinguish_implies_map(d, p0, p1, psi_full).satisfied


def test_dim_suite_thousand_instances():
    result = dim_suite(1000, seed=0)
    assert result.ok, result.failures
