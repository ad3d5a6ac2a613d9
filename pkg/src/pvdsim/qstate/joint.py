"""Challenger/adversary joint states with the purifying phase register C.

Sparse states carry integer amplitudes and a common scale: the true amplitude
of each basis term is ``amp * sqrt(scale)``. Every operation used by the
security experiments (computational or Hadamard measurement of C or A) keeps
the amplitudes integral, so with a ``Fraction`` scale all branch
probabilities are exact rationals. Joint states are sub-normalised: their
squared norm is the probability of the branch that produced them.

Once a circuit adversary acts on A the state moves to ``DenseJointState``,
a complex array of shape ``(2, 2**(n + k))`` indexed by (C, A ⊗ workspace).
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from ..randomness import Rng, choose_index, random_bits
from .bits import BitString
from .dense import DimensionError, qubit_cap
from .twobranch import TwoBranchState

COMPUTATIONAL = "computational"
HADAMARD = "hadamard"
BASES = (COMPUTATIONAL, HADAMARD)

Weight = Union[Fraction, float]

ZERO_TOL = 1e-14


def _check_basis(basis: str) -> None:
    if basis not in BASES:
        raise ValueError(f"unknown basis {basis!r}; expected one of {BASES}")


@dataclass(frozen=True)
class PurifiedJointState:
    base: TwoBranchState
    terms: tuple[tuple[int, int, int], ...]   # (c, a, integer amplitude)
    scale: Weight

    @property
    def n(self) -> int:
        return self.base.n

    def norm2(self) -> Weight:
        return self.scale * sum(amp * amp for _, _, amp in self.terms)

    def scaled(self, factor: Weight) -> "PurifiedJointState":
        return PurifiedJointState(self.base, self.terms, self.scale * factor)

    def normalized(self) -> "PurifiedJointState":
        total = sum(amp * amp for _, _, amp in self.terms)
        if isinstance(self.scale, Fraction):
            return PurifiedJointState(self.base, self.terms, Fraction(1, total))
        return PurifiedJointState(self.base, self.terms, 1.0 / total)

    def a_support(self) -> list[int]:
        return sorted({a for _, a, _ in self.terms})

    def c_vector(self, a: int) -> tuple[int, int]:
        v = [0, 0]
        for c, a2, amp in self.terms:
            if a2 == a:
                v[c] += amp
        return v[0], v[1]

    def reduced_c(self) -> list[list[Weight]]:
        """Reduced density matrix of C (real entries, sub-normalised)."""
        rho = [[0, 0], [0, 0]]
        for a in self.a_support():
            v = self.c_vector(a)
            for i in range(2):
                for j in range(2):
                    rho[i][j] += v[i] * v[j]
        return [[self.scale * rho[i][j] for j in range(2)] for i in range(2)]

    def with_terms(self, terms: dict, scale: Weight) -> "PurifiedJointState":
        kept = tuple(sorted((c, a, amp) for (c, a), amp in terms.items() if amp != 0))
        return PurifiedJointState(self.base, kept, scale)

    # -- register C -------------------------------------------------------
    def c_branches(self, basis: str) -> list[tuple[int, "PurifiedJointState"]]:
        _check_basis(basis)
        out = []
        for bit in (0, 1):
            terms: dict = defaultdict(int)
            if basis == COMPUTATIONAL:
                scale = self.scale
                for c, a, amp in self.terms:
                    if c == bit:
                        terms[(c, a)] += amp
            else:
                # project C onto (|0> + (-1)^bit |1>)/sqrt(2) and re-expand
                scale = self.scale / 4
                proj: dict = defaultdict(int)
                for c, a, amp in self.terms:
                    proj[a] += amp if c == 0 else (-1) ** bit * amp
                for a, amp in proj.items():
                    terms[(0, a)] += amp
                    terms[(1, a)] += (-1) ** bit * amp
            child = self.with_terms(terms, scale)
            if child.terms:
                out.append((bit, child))
        return out

    # -- register A -------------------------------------------------------
    def a_branches(self, basis: str) -> list[tuple[BitString, "PurifiedJointState"]]:
        """All outcomes of measuring A, with their sub-normalised children.

        Hadamard enumeration lists 2**n outcomes and is capped like dense
        simulation.
        """
        _check_basis(basis)
        if basis == COMPUTATIONAL:
            out = []
            for a in self.a_support():
                terms = {(c, a2): amp for c, a2, amp in self.terms if a2 == a}
                out.append((BitString(self.n, a), self.with_terms(terms, self.scale)))
            return out
        if self.n > qubit_cap():
            raise DimensionError(
                f"enumerating Hadamard outcomes on {self.n} qubits exceeds cap {qubit_cap()}")
        out = []
        for w in range(1 << self.n):
            child = self._hadamard_child(w)
            if child.terms:
                out.append((BitString(self.n, w), child))
        return out

    def _hadamard_child(self, w: int) -> "PurifiedJointState":
        support = self.a_support()
        ref = support[0]
        terms: dict = defaultdict(int)
        for c, a, amp in self.terms:
            # phase relative to the first support element; global sign dropped
            sign = -1 if ((a ^ ref) & w).bit_count() & 1 else 1
            terms[(c, w)] += sign * amp
        return self.with_terms(terms, self.scale / (1 << self.n))

    def a_sample(self, basis: str, rng: Rng) -> tuple[BitString, "PurifiedJointState"]:
        """Sample one measurement outcome of A without enumerating 2**n branches.

        The child is returned sub-normalised (its weight is the outcome's
        probability times this state's weight); callers that want a
        normalised state use ``normalized()``.
        """
        _check_basis(basis)
        if basis == COMPUTATIONAL:
            branches = self.a_branches(COMPUTATIONAL)
            i = choose_index(rng, [float(ch.norm2()) for _, ch in branches])
            return branches[i]
        support = self.a_support()
        if len(support) == 1:
            w = random_bits(rng, self.n)
            return BitString(self.n, w), self._hadamard_child(w)
        if len(support) != 2:
            raise ValueError("Hadamard sampling supports at most two A branches")
        a0, a1 = support
        delta = a0 ^ a1
        v0, v1 = self.c_vector(a0), self.c_vector(a1)
        # P(delta.w = s) = sum_c (v0[c] + (-1)^s v1[c])^2, up to a common factor
        weights = [sum((v0[c] + (-1) ** s * v1[c]) ** 2 for c in (0, 1)) for s in (0, 1)]
        s = choose_index(rng, weights)
        w = random_bits(rng, self.n)
        if ((delta & w).bit_count() & 1) != s:
            w ^= delta & -delta
        return BitString(self.n, w), self._hadamard_child(w)

    # -- circuit adversaries ------------------------------------------------
    def to_dense(self, workspace: int = 0) -> "DenseJointState":
        if self.n + workspace > qubit_cap():
            raise DimensionError(
                f"A plus workspace ({self.n}+{workspace}) exceeds dense cap {qubit_cap()}")
        vec = np.zeros((2, 1 << (self.n + workspace)), dtype=complex)
        root = np.sqrt(float(self.scale))
        for c, a, amp in self.terms:
            vec[c, a << workspace] += amp * root
        return DenseJointState(vec, self.n, workspace)


def purify(x0: BitString, x1: BitString) -> PurifiedJointState:
    """1/2 sum_c |c>_C (|x0> + (-1)^c |x1>)_A, i.e. (|+>|x0> + |->|x1>)/sqrt(2).

    Argument order matters here: exchanging x0 and x1 acts as Z on C.
    """
    base = TwoBranchState(x0, x1, 0)
    a0, a1 = x0.value, x1.value
    terms = ((0, a0, 1), (0, a1, 1), (1, a0, 1), (1, a1, -1))
    return PurifiedJointState(base, tuple(sorted(terms)), Fraction(1, 4))


def lift(state: TwoBranchState) -> PurifiedJointState:
    """Embed a plain ciphertext state with an idle C register fixed to |0>."""
    a0, a1 = state.x0.value, state.x1.value
    terms = ((0, a0, 1), (0, a1, (-1) ** state.phase))
    return PurifiedJointState(TwoBranchState(state.x0, state.x1, 0), terms, Fraction(1, 2))


def c_measure(joint, basis: str, rng: Rng):
    """Measure C; return the outcome and the normalised collapsed state."""
    branches = joint.c_branches(basis)
    i = choose_index(rng, [float(ch.norm2()) for _, ch in branches])
    bit, child = branches[i]
    return bit, child.normalized()


@dataclass(frozen=True, eq=False)
class DenseJointState:
    vec: np.ndarray       # shape (2, 2**(n + workspace))
    n: int
    workspace: int

    @property
    def register_qubits(self) -> int:
        return self.n + self.workspace

    def norm2(self) -> float:
        return float(np.vdot(self.vec, self.vec).real)

    def scaled(self, factor) -> "DenseJointState":
        return DenseJointState(self.vec * np.sqrt(float(factor)), self.n, self.workspace)

    def normalized(self) -> "DenseJointState":
        return DenseJointState(self.vec / np.sqrt(self.norm2()), self.n, self.workspace)

    def apply(self, unitary: np.ndarray) -> "DenseJointState":
        """Apply a unitary to A ⊗ workspace (C untouched)."""
        dim = self.vec.shape[1]
        unitary = np.asarray(unitary, dtype=complex)
        if unitary.shape != (dim, dim):
            raise DimensionError(f"unitary shape {unitary.shape} does not match register dim {dim}")
        return DenseJointState(self.vec @ unitary.T, self.n, self.workspace)

    def reduced_c(self) -> np.ndarray:
        return self.vec @ self.vec.conj().T

    def c_branches(self, basis: str) -> list[tuple[int, "DenseJointState"]]:
        _check_basis(basis)
        out = []
        for bit in (0, 1):
            new = np.zeros_like(self.vec)
            if basis == COMPUTATIONAL:
                new[bit] = self.vec[bit]
            else:
                r = (self.vec[0] + (-1) ** bit * self.vec[1]) / 2
                new[0], new[1] = r, (-1) ** bit * r
            child = DenseJointState(new, self.n, self.workspace)
            if child.norm2() > ZERO_TOL:
                out.append((bit, child))
        return out

    def _block_weights(self, qubits: int) -> np.ndarray:
        if not 0 < qubits <= self.register_qubits:
            raise ValueError(f"cannot measure {qubits} of {self.register_qubits} qubits")
        probs = (self.vec.real ** 2 + self.vec.imag ** 2).reshape(2, 1 << qubits, -1)
        return probs.sum(axis=(0, 2))

    def _block_child(self, qubits: int, outcome: int) -> "DenseJointState":
        block = 1 << (self.register_qubits - qubits)
        sl = slice(outcome * block, (outcome + 1) * block)
        new = np.zeros_like(self.vec)
        new[:, sl] = self.vec[:, sl]
        return DenseJointState(new, self.n, self.workspace)

    def register_branches(self, qubits: int) -> list[tuple[int, "DenseJointState"]]:
        """Measure the leading ``qubits`` qubits of A ⊗ workspace computationally."""
        weights = self._block_weights(qubits)
        return [(int(o), self._block_child(qubits, int(o)))
                for o in np.flatnonzero(weights > ZERO_TOL)]

    def register_sample(self, qubits: int, rng: Rng) -> tuple[int, "DenseJointState"]:
        outcome = choose_index(rng, self._block_weights(qubits).tolist())
        return outcome, self._block_child(qubits, outcome)

    def residual_density(self, measured: int) -> np.ndarray:
        """Sub-normalised density matrix of the unmeasured tail, C traced out.

        Assumes the leading ``measured`` qubits have collapsed to one value.
        """
        tail = 1 << (self.register_qubits - measured)
        blocks = self.vec.reshape(2, -1, tail)
        rho = np.zeros((tail, tail), dtype=complex)
        for c in range(2):
            for blk in blocks[c]:
                rho += np.outer(blk, blk.conj())
        return rho
