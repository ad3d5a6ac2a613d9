"""Randomised numeric check suites over the quantum-state layer."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.stats import chisquare

from .qstate import (BitString, TwoBranchState, check_distinguish_implies_map,
                     check_gentle_measurement, hadamard_measure, hadamard_measure_batch,
                     random_density, random_projector, random_unitary)
from .randomness import make_rng, random_below, random_bits

SUITES = ("gentle", "dim", "measurement")
MAX_DIM_QUBITS = 4
CHI2_ALPHA = 1e-3
SUPPORT_TOL = 1e-12


@dataclass
class SuiteResult:
    suite: str
    passed: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.passed > 0

    def record(self, ok: bool, detail=None) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < 10:
                self.failures.append(detail)

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = "".join(f" {k}={v}" for k, v in self.stats.items())
        return f"{self.suite}: {status} ({self.passed} passed, {self.failed} failed){extra}"


def _dimension(rng) -> int:
    return 1 << (1 + random_below(rng, MAX_DIM_QUBITS))


def gentle_suite(instances: int, seed: int = 0) -> SuiteResult:
    """TD(rho, rho') <= 2 sqrt(delta) for random mixed states and projectors."""
    out = SuiteResult("gentle")
    worst = 0.0
    for i in range(instances):
        rng = make_rng(seed, 0x6E, i)
        dim = _dimension(rng)
        rho = random_density(dim, rng, rank=1 + random_below(rng, dim))
        proj = random_projector(dim, 1 + random_below(rng, dim), rng)
        res = check_gentle_measurement(rho, proj)
        worst = max(worst, res.td - res.bound)
        out.record(res.satisfied, {"instance": i, "dim": dim, "td": res.td, "bound": res.bound})
    out.stats["max_td_minus_bound"] = f"{worst:.3g}"
    return out


def dim_suite(instances: int, seed: int = 0) -> SuiteResult:
    """Distinguishing-implies-mapping on random orthogonal pairs of projectors."""
    out = SuiteResult("dim")
    worst = -np.inf
    for i in range(instances):
        rng = make_rng(seed, 0xD1, i)
        dim = _dimension(rng)
        basis = random_unitary(dim, rng)
        r0 = 1 + random_below(rng, dim - 1)
        r1 = 1 + random_below(rng, dim - r0)
        cols0, cols1 = basis[:, :r0], basis[:, r0:r0 + r1]
        p0, p1 = cols0 @ cols0.conj().T, cols1 @ cols1.conj().T
        coeffs = rng.normal(size=r0 + r1) + 1j * rng.normal(size=r0 + r1)
        psi = basis[:, :r0 + r1] @ coeffs
        psi /= np.linalg.norm(psi)
        d = random_projector(dim, 1 + random_below(rng, dim), rng)
        res = check_distinguish_implies_map(d, p0, p1, psi)
        worst = max(worst, res.rhs - res.lhs)
        out.record(res.satisfied, {"instance": i, "dim": dim, "lhs": res.lhs, "rhs": res.rhs})
    out.stats["max_rhs_minus_lhs"] = f"{worst:.3g}"
    return out


def random_two_branch(n: int, rng) -> TwoBranchState:
    x0 = random_bits(rng, n)
    x1 = random_bits(rng, n)
    while x1 == x0:
        x1 = random_bits(rng, n)
    return TwoBranchState(BitString(n, x0), BitString(n, x1), random_bits(rng, 1))


def measurement_case(state: TwoBranchState, rng, samples: int, single_shots: int = 200) -> dict:
    """Compare the Hadamard samplers with the dense Born rule on one state."""
    n = state.n
    probs = state.to_dense().hadamard_all().probabilities()
    dense_support = {w for w in range(1 << n) if probs[w] > SUPPORT_TOL}
    analytic = {w.value for w in state.hadamard_support()}
    batch = hadamard_measure_batch(state, rng, samples).astype(np.int64)
    counts = np.bincount(batch, minlength=1 << n)
    seen = set(np.flatnonzero(counts).tolist())
    singles = {hadamard_measure(state, rng).value for _ in range(single_shots)}
    observed = counts[sorted(analytic)]
    pvalue = 1.0 if len(observed) == 1 else float(chisquare(observed).pvalue)
    return {
        "support_match": dense_support == analytic,
        "samples_in_support": seen <= analytic and singles <= analytic,
        "pvalue": pvalue,
        "uniform": pvalue > CHI2_ALPHA,
    }


def measurement_suite(n_max: int = 8, per_n: int = 20, samples: int = 100_000,
                      seed: int = 0) -> SuiteResult:
    out = SuiteResult("measurement")
    low = 1.0
    for n in range(1, n_max + 1):
        for i in range(per_n):
            rng = make_rng(seed, 0x3E, n, i)
            state = random_two_branch(n, rng)
            case = measurement_case(state, rng, samples)
            low = min(low, case["pvalue"])
            ok = case["support_match"] and case["samples_in_support"] and case["uniform"]
            out.record(ok, {"n": n, "instance": i, **case})
    out.stats["min_pvalue"] = f"{low:.3g}"
    return out


def run_suite(suite: str, instances: int, seed: int = 0) -> SuiteResult:
    if instances < 1:
        raise ValueError("instance count must be >= 1")
    if suite == "gentle":
        return gentle_suite(instances, seed)
    if suite == "dim":
        return dim_suite(instances, seed)
    if suite == "measurement":
        return measurement_suite(per_n=instances, seed=seed)
    raise ValueError(f"unknown suite {suite!r}; expected one of {SUITES}")
