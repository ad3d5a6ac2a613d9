from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..randomness import Rng, random_bit, random_bits
from .bits import BitString
from .dense import DenseState


@dataclass(frozen=True)
class TwoBranchState:
    """The state (|x0> + (-1)^phase |x1>)/sqrt(2) over two distinct strings.

    Stored canonically with ``x0 < x1``. Swapping the branches multiplies the
    state by (-1)^phase, a global phase, so the canonical value is the same
    physical state.
    """

    x0: BitString
    x1: BitString
    phase: int = 0

    def __post_init__(self):
        if self.x0.n != self.x1.n:
            raise ValueError(f"branch lengths differ: {self.x0.n} vs {self.x1.n}")
        if self.x0 == self.x1:
            raise ValueError("two-branch state needs x0 != x1")
        if self.phase not in (0, 1):
            raise ValueError(f"phase must be a bit, got {self.phase!r}")
        if self.x1.value < self.x0.value:
            x0, x1 = self.x1, self.x0
            object.__setattr__(self, "x0", x0)
            object.__setattr__(self, "x1", x1)

    @property
    def n(self) -> int:
        return self.x0.n

    @property
    def delta(self) -> BitString:
        return self.x0 ^ self.x1

    def support(self) -> tuple[BitString, BitString]:
        return (self.x0, self.x1)

    def to_dense(self) -> DenseState:
        amps = np.zeros(1 << self.n, dtype=complex)
        amps[self.x0.value] = 1 / np.sqrt(2)
        amps[self.x1.value] = (-1) ** self.phase / np.sqrt(2)
        return DenseState(amps)

    def hadamard_support(self) -> list[BitString]:
        """All w with (x0 xor x1) . w == phase, in increasing order."""
        d = self.delta
        return [BitString(self.n, v) for v in range(1 << self.n)
                if (d.value & v).bit_count() & 1 == self.phase]


def hadamard_measure(state: TwoBranchState, rng: Rng) -> BitString:
    """Measure every qubit in the Hadamard basis.

    The outcome w has amplitude proportional to (-1)^{x0.w}(1 + (-1)^{phase + delta.w}),
    so it is uniform over the affine hyperplane delta.w = phase. Sample a uniform
    string and, if it lands in the wrong coset, flip the bit at the lowest set
    position of delta; that map is a bijection between the two cosets.
    """
    d = state.delta.value
    w = random_bits(rng, state.n)
    if ((d & w).bit_count() & 1) != state.phase:
        w ^= d & -d
    return BitString(state.n, w)


BATCH_MAX_QUBITS = 63


def hadamard_measure_batch(state: TwoBranchState, rng: Rng, size: int) -> np.ndarray:
    """``size`` independent Hadamard outcomes as integers (same coset-flip map)."""
    if state.n > BATCH_MAX_QUBITS:
        raise ValueError(f"batch sampling supports n <= {BATCH_MAX_QUBITS}")
    d = np.uint64(state.delta.value)
    w = rng.integers(0, 1 << state.n, size=size, dtype=np.uint64)
    wrong = (np.bitwise_count(w & d) & 1) != state.phase
    w[wrong] ^= np.uint64(state.delta.value & -state.delta.value)
    return w


def computational_measure(state: TwoBranchState, rng: Rng) -> BitString:
    return state.x1 if random_bit(rng) else state.x0


def decrypt_bit(z: BitString, w: BitString) -> int:
    return z.dot(w)
