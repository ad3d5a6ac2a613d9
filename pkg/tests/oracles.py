"""Independent reference computations used to derive expected test values.

Everything here is plain dense linear algebra over explicit Kronecker
products. None of it imports the package's state code, so agreement with
the sparse implementation is a real cross-check.
"""
from __future__ import annotations

from functools import reduce
from typing import Callable, Optional

import numpy as np

H1 = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
I2 = np.eye(2, dtype=complex)


def kron_all(mats) -> np.ndarray:
    return reduce(np.kron, mats)


def hadamard_n(n: int) -> np.ndarray:
    return kron_all([H1] * n)


def ket(dim: int, index: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1
    return v


def two_branch_vector(n: int, x0: int, x1: int, b: int) -> np.ndarray:
    return (ket(1 << n, x0) + (-1) ** b * ket(1 << n, x1)) / np.sqrt(2)


def born_hadamard(n: int, x0: int, x1: int, b: int) -> np.ndarray:
    return np.abs(hadamard_n(n) @ two_branch_vector(n, x0, x1, b)) ** 2


def born_computational(n: int, x0: int, x1: int, b: int) -> np.ndarray:
    return np.abs(two_branch_vector(n, x0, x1, b)) ** 2


def trace_distance(rho: np.ndarray, sigma: np.ndarray) -> float:
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(rho - sigma))))


# -- joint C ⊗ A states -------------------------------------------------------
# index = c * 2**n + a, i.e. C is the most significant qubit

def purified_vector(n: int, x0: int, x1: int) -> np.ndarray:
    plus = np.array([1, 1], dtype=complex) / np.sqrt(2)
    minus = np.array([1, -1], dtype=complex) / np.sqrt(2)
    dim = 1 << n
    return (np.kron(plus, ket(dim, x0)) + np.kron(minus, ket(dim, x1))) / np.sqrt(2)


def lifted_vector(n: int, x0: int, x1: int, b: int) -> np.ndarray:
    return np.kron(ket(2, 0), two_branch_vector(n, x0, x1, b))


def c_projector(n: int, basis: str, outcome: int) -> np.ndarray:
    v = ket(2, outcome) if basis == "computational" else H1 @ ket(2, outcome)
    return np.kron(np.outer(v, v.conj()), np.eye(1 << n))


def a_projector(n: int, basis: str, outcome: int) -> np.ndarray:
    v = ket(1 << n, outcome)
    if basis == "hadamard":
        v = hadamard_n(n) @ v
    return np.kron(I2, np.outer(v, v.conj()))


def reduced_c(vec: np.ndarray) -> np.ndarray:
    m = vec.reshape(2, -1)
    return m @ m.conj().T


def reduced_a(vec: np.ndarray) -> np.ndarray:
    m = vec.reshape(2, -1)
    return m.T @ m.conj()


# -- hybrid experiments by dense simulation ----------------------------------

def strategy_branches(name: str, n: int, y0: int, y1: int, owf: Callable[[int], int],
                      **params):
    """(certificate, transcript, A-side projector or None) for the analytic strategies."""
    if name == "honest":
        return [(a, format(a, f"0{n}b"), a_projector(n, "computational", a))
                for a in range(1 << n)]
    if name == "inverter":
        target = y0 if params.get("target", 0) == 0 else y1
        cert = min(x for x in range(1 << n) if owf(x) == target)
        if not params.get("read_phase", False):
            return [(cert, format(cert, f"0{n}b"), None)]
        return [(cert, f"{cert:0{n}b}|{w:0{n}b}", a_projector(n, "hadamard", w))
                for w in range(1 << n)]
    if name == "retainer":
        mode = params.get("certificate", "invalid")
        if mode == "zero":
            cert = 0
        else:
            cert = min(x for x in range(1 << n) if owf(x) not in (y0, y1))
        return [(cert, format(w, f"0{n}b"), a_projector(n, "hadamard", w))
                for w in range(1 << n)]
    raise ValueError(name)


def hybrid_distribution(index: int, b: int, n: int, x0: int, x1: int,
                        owf: Callable[[int], int], strategy: str,
                        **params) -> tuple[dict, float]:
    """Outcome distribution ("⊥" or transcript -> probability) and the Hadamard-abort mass."""
    y0, y1 = owf(x0), owf(x1)
    vec = lifted_vector(n, x0, x1, b) if index == 0 else purified_vector(n, x0, x1)
    out: dict = {}
    habort = 0.0

    def add(key, p):
        if p > 1e-15:
            out[key] = out.get(key, 0.0) + p

    for cert, transcript, proj in strategy_branches(strategy, n, y0, y1, owf, **params):
        v = vec if proj is None else proj @ vec
        y = owf(cert)
        c_prime: Optional[int] = 0 if y == y0 else (1 if y == y1 else None)
        if c_prime is None:
            add("⊥", np.vdot(v, v).real)
            continue
        if index == 2:
            bad = c_projector(n, "hadamard", 1 - c_prime) @ v
            habort += np.vdot(bad, bad).real
            add("⊥", np.vdot(bad, bad).real)
            v = c_projector(n, "hadamard", c_prime) @ v
        if index >= 1:
            bad = c_projector(n, "computational", 1 - b) @ v
            add("⊥", np.vdot(bad, bad).real)
            v = c_projector(n, "computational", b) @ v
        add(transcript, np.vdot(v, v).real)
    return out, habort


def tv(p: dict, q: dict) -> float:
    return 0.5 * sum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in set(p) | set(q))


# -- classical oracles ----------------------------------------------------------

def colliding_pairs(table) -> int:
    """Number of unordered input pairs with equal outputs, by direct double loop."""
    count = 0
    for i in range(len(table)):
        for j in range(i + 1, len(table)):
            count += table[i] == table[j]
    return count


def other_preimage_win_probability(n: int, owf: Callable[[int], int],
                                   respond: Callable[[int, int, int], int]) -> float:
    """Exact win probability over uniform x0 != x1 and c'' for a deterministic responder."""
    size = 1 << n
    wins = 0
    for x0 in range(size):
        for x1 in range(size):
            if x0 == x1:
                continue
            ys = (owf(x0), owf(x1))
            for c in (0, 1):
                answer = respond(ys[0], ys[1], (x0, x1)[c])
                wins += owf(answer) == ys[1 - c]
    return wins / (2 * size * (size - 1))
