"""Outcome distributions of security experiments and distances between them."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Mapping, Optional, Union

import numpy as np
from scipy.stats import binomtest

from ..qstate import trace_norm

Weight = Union[Fraction, float]

EXACT = "exact"
EMPIRICAL = "empirical"
WEIGHT_TOL = 1e-9


class _Bottom:
    """The abort symbol. Compares unequal to every transcript."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "⊥"

    def __reduce__(self):
        return (_Bottom, ())


BOTTOM = _Bottom()


def _sort_key(k):
    return (0, "") if k is BOTTOM else (1, str(k))


@dataclass(frozen=True, eq=False)
class OutcomeDistribution:
    """Weights over ⊥ and residual transcripts.

    Exact distributions come from branch enumeration; empirical ones from
    counting ``samples`` trials. ``states`` optionally attaches a
    sub-normalised residual density matrix to a transcript (circuit
    adversaries that keep quantum output); its trace equals the weight.
    """

    weights: Mapping[Hashable, Weight]
    mode: str = EXACT
    samples: Optional[int] = None
    alphabet_size: Optional[int] = None
    states: Mapping[Hashable, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        if self.mode not in (EXACT, EMPIRICAL):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == EMPIRICAL and not self.samples:
            raise ValueError("empirical distributions need a sample count")
        if any(w < 0 for w in self.weights.values()):
            raise ValueError("negative weight")
        total = self.total()
        if abs(float(total) - 1.0) > WEIGHT_TOL:
            raise ValueError(f"weights sum to {float(total)!r}, not 1")
        clean = {k: self.weights[k] for k in sorted(self.weights, key=_sort_key)
                 if self.weights[k] != 0}
        object.__setattr__(self, "weights", clean)

    @classmethod
    def from_counts(cls, counts: Mapping[Hashable, int], alphabet_size=None,
                    states=None) -> "OutcomeDistribution":
        total = sum(counts.values())
        return cls({k: c / total for k, c in counts.items()}, EMPIRICAL, total,
                   alphabet_size, states or {})

    @classmethod
    def point(cls, outcome) -> "OutcomeDistribution":
        return cls({outcome: Fraction(1)})

    def total(self) -> Weight:
        return sum(self.weights.values(), Fraction(0))

    @property
    def support(self) -> list:
        return list(self.weights)

    def prob(self, outcome) -> Weight:
        return self.weights.get(outcome, 0)

    @property
    def bottom_mass(self) -> Weight:
        return self.prob(BOTTOM)

    @property
    def is_quantum(self) -> bool:
        return bool(self.states)

    def mix(self, other: "OutcomeDistribution", weight: Weight) -> "OutcomeDistribution":
        """``weight * self + (1 - weight) * other``."""
        keys = set(self.weights) | set(other.weights)
        w = {k: weight * self.prob(k) + (1 - weight) * other.prob(k) for k in keys}
        states = {}
        for k in set(self.states) | set(other.states):
            mats = [m for m in (self.states.get(k), other.states.get(k)) if m is not None]
            shape = mats[0].shape
            states[k] = (float(weight) * self.states.get(k, np.zeros(shape))
                         + float(1 - weight) * other.states.get(k, np.zeros(shape)))
        return OutcomeDistribution(w, EXACT if self.mode == other.mode == EXACT else EMPIRICAL,
                                   self.samples or other.samples, self.alphabet_size, states)

    def __eq__(self, other):
        """Literal equality of supports and weights (exact mode semantics)."""
        if not isinstance(other, OutcomeDistribution):
            return NotImplemented
        if self.weights != other.weights or set(self.states) != set(other.states):
            return False
        return all(np.array_equal(self.states[k], other.states[k]) for k in self.states)

    __hash__ = None

    def isclose(self, other: "OutcomeDistribution", tol: float = WEIGHT_TOL) -> bool:
        return float(outcome_distance(self, other)) <= tol

    def to_json(self) -> dict:
        return {"⊥" if k is BOTTOM else str(k): float(v) for k, v in self.weights.items()}


def tv_distance(p: OutcomeDistribution, q: OutcomeDistribution) -> Weight:
    """Total variation distance; exact (a Fraction) when both inputs are exact."""
    if p.alphabet_size is not None and q.alphabet_size is not None \
            and p.alphabet_size != q.alphabet_size:
        raise ValueError(f"alphabet mismatch: {p.alphabet_size} vs {q.alphabet_size}")
    keys = set(p.weights) | set(q.weights)
    total = sum((abs(p.prob(k) - q.prob(k)) for k in keys), Fraction(0))
    return total / 2


def outcome_distance(p: OutcomeDistribution, q: OutcomeDistribution) -> Weight:
    """TV for classical outcomes; trace distance of the cq-states when residuals are quantum."""
    if not (p.is_quantum or q.is_quantum):
        return tv_distance(p, q)
    total = 0.0
    for k in set(p.weights) | set(q.weights):
        sp, sq = p.states.get(k), q.states.get(k)
        if sp is None and sq is None:
            total += abs(float(p.prob(k)) - float(q.prob(k)))
        else:
            shape = (sp if sp is not None else sq).shape
            sp = np.zeros(shape) if sp is None else sp
            sq = np.zeros(shape) if sq is None else sq
            total += trace_norm(sp - sq)
    return total / 2


def l1_radius(samples: int, categories: int, alpha: float) -> float:
    """With probability >= 1 - alpha, ||p_hat - p||_1 <= radius.

    Multinomial concentration: P(||p_hat - p||_1 >= eps) <= (2^k - 2) exp(-N eps^2 / 2).
    """
    k = max(categories, 2)
    log_terms = k * math.log(2) + math.log1p(-2.0 ** (1 - k)) + math.log(1 / alpha)
    return math.sqrt(2.0 * max(log_terms, 0.0) / samples)


def tv_radius(p: OutcomeDistribution, alpha: float) -> float:
    """TV confidence radius of one distribution (0 for exact ones)."""
    if p.mode == EXACT:
        return 0.0
    k = p.alphabet_size if p.alphabet_size is not None else len(p.weights) + 1
    return min(1.0, l1_radius(p.samples, k, alpha) / 2)


def tv_confidence_radius(p: OutcomeDistribution, q: OutcomeDistribution,
                         confidence: float = 0.99) -> float:
    """Radius r such that |TV(p_hat, q_hat) - TV(p, q)| <= r at the given confidence."""
    alpha = (1 - confidence) / 2
    return min(1.0, tv_radius(p, alpha) + tv_radius(q, alpha))


@dataclass(frozen=True)
class Proportion:
    value: Weight
    low: float
    high: float
    successes: Optional[int] = None
    trials: Optional[int] = None

    def to_json(self) -> dict:
        return {"value": float(self.value), "low": self.low, "high": self.high,
                "successes": self.successes, "trials": self.trials}


def binomial_ci(successes: int, trials: int, confidence: float = 0.99) -> Proportion:
    """Clopper-Pearson interval."""
    ci = binomtest(successes, trials).proportion_ci(confidence_level=confidence, method="exact")
    return Proportion(successes / trials, float(ci.low), float(ci.high), successes, trials)


def exact_proportion(value: Weight) -> Proportion:
    return Proportion(value, float(value), float(value))


def merge_counts(parts) -> Counter:
    total: Counter = Counter()
    for part in parts:
        total.update(part)
    return total
