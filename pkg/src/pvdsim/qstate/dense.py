"""Small dense statevector and density-matrix utilities.

These serve as oracles for the sparse samplers and as carriers for the
toy one-way-state-generator states, so they favour clarity over speed.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bits import BitString

DEFAULT_QUBIT_CAP = 12
NORM_TOL = 1e-12
DENSITY_TOL = 1e-10

_H = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)

_qubit_cap = DEFAULT_QUBIT_CAP


def qubit_cap() -> int:
    return _qubit_cap


def set_qubit_cap(cap: int) -> int:
    """Change the dense-simulation cap; returns the previous value."""
    global _qubit_cap
    if cap < 1:
        raise ValueError("cap must be positive")
    previous, _qubit_cap = _qubit_cap, cap
    return previous


class DimensionError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class DenseState:
    """Pure state on ``q`` qubits; qubit 0 is the most significant index bit."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        dim = amps.shape[0]
        q = dim.bit_length() - 1
        if dim < 2 or (1 << q) != dim:
            raise DimensionError(f"amplitude vector length {dim} is not a power of two >= 2")
        if q > _qubit_cap:
            raise DimensionError(f"{q} qubits exceeds dense cap of {_qubit_cap}")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state not normalised (squared norm {norm!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def num_qubits(self) -> int:
        return self.amplitudes.shape[0].bit_length() - 1

    @classmethod
    def basis(cls, x: BitString) -> "DenseState":
        amps = np.zeros(1 << x.n, dtype=complex)
        amps[x.value] = 1.0
        return cls(amps)

    @classmethod
    def normalised(cls, amps) -> "DenseState":
        amps = np.asarray(amps, dtype=complex).reshape(-1)
        return cls(amps / np.linalg.norm(amps))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def inner(self, other: "DenseState") -> complex:
        """``<self|other>``."""
        if other.amplitudes.shape != self.amplitudes.shape:
            raise DimensionError("dimension mismatch")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def fidelity(self, other: "DenseState") -> float:
        return abs(self.inner(other)) ** 2

    def density_matrix(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def apply(self, unitary: np.ndarray) -> "DenseState":
        return DenseState(np.asarray(unitary) @ self.amplitudes)

    def hadamard_all(self) -> "DenseState":
        return DenseState(hadamard_transform(self.amplitudes))

    def __eq__(self, other):
        if not isinstance(other, DenseState):
            return NotImplemented
        return np.array_equal(self.amplitudes, other.amplitudes)

    __hash__ = None


def hadamard_transform(vec: np.ndarray) -> np.ndarray:
    """Apply H to every qubit of a ``2**q`` vector by tensor contraction."""
    vec = np.asarray(vec, dtype=complex)
    q = vec.shape[0].bit_length() - 1
    t = vec.reshape((2,) * q)
    for axis in range(q):
        t = np.moveaxis(np.tensordot(_H, t, axes=([1], [axis])), 0, axis)
    return t.reshape(-1)


def hadamard_matrix(q: int) -> np.ndarray:
    m = np.array([[1.0]])
    for _ in range(q):
        m = np.kron(m, _H)
    return m


def as_density(x) -> np.ndarray:
    """Accept a DenseState, a state vector or a matrix; return a matrix."""
    if isinstance(x, DenseState):
        return x.density_matrix()
    arr = np.asarray(x, dtype=complex)
    if arr.ndim == 1:
        return np.outer(arr, arr.conj())
    return arr


def validate_density(rho: np.ndarray, tol: float = DENSITY_TOL) -> None:
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DimensionError(f"not a square matrix: shape {rho.shape}")
    if not np.allclose(rho, rho.conj().T, atol=tol):
        raise ValueError("density operator is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > tol:
        raise ValueError(f"density operator has trace {np.trace(rho).real!r}")
    if np.linalg.eigvalsh((rho + rho.conj().T) / 2).min() < -tol:
        raise ValueError("density operator is not positive semidefinite")


def trace_norm(a: np.ndarray) -> float:
    """Sum of singular values."""
    a = np.asarray(a, dtype=complex)
    if a.size == 0:
        return 0.0
    return float(np.linalg.svd(a, compute_uv=False).sum())


def trace_distance(rho, sigma) -> float:
    """Half the trace norm of ``rho - sigma`` for two density operators."""
    rho, sigma = as_density(rho), as_density(sigma)
    if rho.shape != sigma.shape:
        raise DimensionError(f"dimension mismatch: {rho.shape} vs {sigma.shape}")
    validate_density(rho)
    validate_density(sigma)
    diff = rho - sigma
    # Hermitian difference: trace norm is the sum of |eigenvalues|
    td = 0.5 * float(np.abs(np.linalg.eigvalsh((diff + diff.conj().T) / 2)).sum())
    return min(max(td, 0.0), 1.0)


def validate_projector(p: np.ndarray, tol: float = DENSITY_TOL) -> None:
    p = np.asarray(p)
    if p.ndim != 2 or p.shape[0] != p.shape[1]:
        raise DimensionError(f"not a square matrix: shape {p.shape}")
    if not np.allclose(p, p.conj().T, atol=tol):
        raise ValueError("projector is not Hermitian")
    if not np.allclose(p @ p, p, atol=tol):
        raise ValueError("operator is not idempotent")


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_density(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    rank = dim if rank is None else rank
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_projector(dim: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    cols = random_unitary(dim, rng)[:, :rank]
    return cols @ cols.conj().T


def random_state(q: int, rng: np.random.Generator) -> DenseState:
    v = rng.standard_normal(1 << q) + 1j * rng.standard_normal(1 << q)
    return DenseState.normalised(v)
