import numpy as np
import pytest
from scipy.stats import kstest

from pvdsim.checks import (SuiteResult, measurement_case, measurement_suite, random_two_branch,
                           run_suite)
from pvdsim.qstate import BitString, TwoBranchState
from pvdsim.randomness import make_rng


def test_measurement_case_on_known_state():
    # x0 = 001, x1 = 110: Hadamard outcomes w with (x0 ^ x1) . w = b
    state = TwoBranchState(BitString(3, 0b001), BitString(3, 0b110), 1)
    case = measurement_case(state, make_rng(0), 20_000)
    assert case["support_match"] and case["samples_in_support"] and case["uniform"]


def test_single_qubit_case_has_one_outcome():
    state = TwoBranchState(BitString(1, 0), BitString(1, 1), 1)
    case = measurement_case(state, make_rng(0), 1000)
    assert case["pvalue"] == 1.0
    assert case["support_match"]


def test_chi_square_pvalues_are_uniform_across_instances():
    # a correct sampler gives uniform p-values; single small p-values are expected now and then
    pvalues = []
    for seed in range(4):
        for n in range(2, 9):
            for i in range(10):
                rng = make_rng(seed, 0x3E, n, i)
                state = random_two_branch(n, rng)
                pvalues.append(measurement_case(state, rng, 20_000, single_shots=10)["pvalue"])
    assert kstest(pvalues, "uniform").pvalue > 0.001


def test_measurement_suite_counts():
    result = measurement_suite(n_max=3, per_n=5, samples=5000, seed=4)
    assert result.passed + result.failed == 15
    assert "min_pvalue" in result.stats


def test_random_two_branch_is_valid():
    rng = make_rng(5)
    for n in (1, 2, 5):
        s = random_two_branch(n, rng)
        assert s.x0 != s.x1 and s.n == n


def test_suite_result_summary():
    r = SuiteResult("demo")
    assert not r.ok
    r.record(True)
    r.record(False, {"i": 1})
    assert r.summary() == "demo: FAIL (1 passed, 1 failed)"
    for _ in range(20):
        r.record(False, {})
    assert len(r.failures) == 10


def test_run_suite_errors():
    with pytest.raises(ValueError):
        run_suite("gentle", 0)
    with pytest.raises(ValueError):
        run_suite("nope", 5)


def test_run_suite_dispatch():
    assert run_suite("gentle", 10).passed == 10
    assert run_suite("dim", 10).passed == 10
    assert run_suite("measurement", 1).passed == 8
    assert np.isfinite(float(run_suite("gentle", 5, seed=3).stats["max_td_minus_bound"]))
