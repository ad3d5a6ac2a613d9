"""Seeded, splittable randomness.

Every trial of an experiment gets its own generator derived from
``(master_seed, trial_index)``, so serial and parallel runs draw identical
streams no matter how trials are scheduled.
"""
from __future__ import annotations

import numpy as np

Rng = np.random.Generator

_MASK64 = (1 << 64) - 1


def make_rng(seed: int, *path: int) -> Rng:
    """Generator for ``seed`` and an optional derivation path (trial index, ...)."""
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    ss = np.random.SeedSequence(seed & _MASK64, spawn_key=tuple(int(p) for p in path))
    return np.random.Generator(np.random.PCG64(ss))


def trial_rng(seed: int, index: int) -> Rng:
    return make_rng(seed, index)


class TrialStreams:
    """Cheap per-trial streams for hot loops.

    A Philox generator keyed by ``(seed, *path)`` whose counter's upper two
    words hold the trial index, so trials occupy disjoint counter ranges.
    ``stream(i)`` rewinds one shared generator, so a returned generator is
    only valid until the next call.
    """

    def __init__(self, seed: int, *path: int):
        if seed < 0:
            raise ValueError(f"seed must be non-negative, got {seed}")
        ss = np.random.SeedSequence(seed & _MASK64, spawn_key=tuple(int(p) for p in path))
        self._key = ss.generate_state(2, np.uint64)
        self._bitgen = np.random.Philox(key=self._key)
        self._rng = np.random.Generator(self._bitgen)
        self._template = self._bitgen.state

    def stream(self, index: int) -> Rng:
        if index < 0:
            raise ValueError("trial index must be non-negative")
        state = dict(self._template)
        counter = np.array([0, 0, index & _MASK64, index >> 64], dtype=np.uint64)
        state["state"] = {"counter": counter, "key": self._key.copy()}
        state["buffer_pos"] = 4
        state["has_uint32"] = 0
        self._bitgen.state = state
        return self._rng


def random_bits(rng: Rng, n: int) -> int:
    """Uniform integer in ``[0, 2**n)``."""
    if n <= 0:
        raise ValueError("n must be positive")
    words = (n + 63) // 64
    value = 0
    for _ in range(words):
        value = (value << 64) | int(rng.bit_generator.random_raw())
    return value & ((1 << n) - 1)


def random_below(rng: Rng, bound: int) -> int:
    """Uniform integer in ``[0, bound)``; bias below 2**-64 for any bound."""
    if bound <= 0:
        raise ValueError("bound must be positive")
    if bound == 1:
        return 0
    return random_bits(rng, bound.bit_length() + 64) % bound


def random_bit(rng: Rng) -> int:
    return int(rng.bit_generator.random_raw()) & 1


def choose_index(rng: Rng, weights) -> int:
    """Sample an index proportionally to nonnegative ``weights``."""
    total = float(sum(weights))
    if total <= 0:
        raise ValueError("weights must have positive total mass")
    u = rng.random() * total
    acc = 0.0
    last = 0
    for i, w in enumerate(weights):
        w = float(w)
        if w <= 0:
            continue
        last = i
        acc += w
        if u < acc:
            return i
    return last
