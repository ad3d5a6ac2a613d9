from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..qstate import BitString, DenseState, DimensionError, qubit_cap
from ..randomness import Rng, random_bits

ENUMERABLE_MAX_N = 16
FIDELITY_SNAP = 1e-12


def _rotation(theta: float, phi: float) -> np.ndarray:
    ry = np.array([[np.cos(theta / 2), -np.sin(theta / 2)],
                   [np.sin(theta / 2), np.cos(theta / 2)]], dtype=complex)
    rz = np.diag([np.exp(-0.5j * phi), np.exp(0.5j * phi)])
    return rz @ ry


@lru_cache(maxsize=1 << 16)
def _state(seed: int, n: int, m: int, layers: int, k: int) -> DenseState:
    # the key's last bit picks |0> or |1> on qubit 0; the rest keys the circuit,
    # so keys differing only in that bit give orthogonal states
    t = np.zeros((2,) * m, dtype=complex)
    t[(k & 1,) + (0,) * (m - 1)] = 1.0
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, n, m, k >> 1])))
    angles = rng.uniform(0.0, 2 * np.pi, size=(layers, m, 2))
    for layer in range(layers):
        for q in range(m):
            u = _rotation(*angles[layer, q])
            t = np.moveaxis(np.tensordot(u, t, axes=([1], [q])), 0, q)
        for q in range(m - 1):
            idx = [slice(None)] * m
            idx[q], idx[q + 1] = 1, 1
            t[tuple(idx)] *= -1
    return DenseState(t.reshape(-1))


@dataclass(frozen=True)
class OwsgSpec:
    """Toy one-way state generator: k -> phi_k on m qubits, pure states only."""

    n: int
    m: int
    seed: int
    layers: int = 3

    @property
    def enumerable(self) -> bool:
        return self.n <= ENUMERABLE_MAX_N

    def keygen(self, rng: Rng) -> BitString:
        return BitString(self.n, random_bits(rng, self.n))

    def stategen(self, k: BitString) -> DenseState:
        if k.n != self.n:
            raise ValueError(f"OWSG keys have {self.n} bits, got {k.n}")
        return _state(self.seed, self.n, self.m, self.layers, k.value)

    def accept_probability(self, k: BitString, state: DenseState) -> float:
        """Probability that the projective test onto phi_k accepts ``state``.

        Values within rounding distance of 0 or 1 are snapped, so a state
        checked against its own key is accepted with probability exactly 1.
        """
        f = self.stategen(k).fidelity(state)
        if f > 1.0 - FIDELITY_SNAP:
            return 1.0
        return 0.0 if f < FIDELITY_SNAP else f

    def ver(self, k: BitString, state: DenseState, rng: Rng) -> bool:
        """Measure {|phi_k><phi_k|, I - |phi_k><phi_k|}; the copy is used up by the caller."""
        return bool(rng.random() < self.accept_probability(k, state))


def owsg_toy(n: int, m: int, seed: int, layers: int = 3) -> OwsgSpec:
    if n < 1:
        raise ValueError("n must be positive")
    if not 1 <= m <= qubit_cap():
        raise DimensionError(f"OWSG state size m={m} must be within the dense cap {qubit_cap()}")
    if layers < 1:
        raise ValueError("need at least one rotation layer")
    return OwsgSpec(n, m, seed, layers)
