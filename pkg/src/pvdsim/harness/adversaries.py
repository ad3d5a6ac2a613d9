"""Declared, simulatable adversary strategies.

A strategy receives the public view and the register A (inside a joint
state, so the challenger's C register goes along untouched) and returns
branches ``AdvBranch(certificate, transcript, joint)``. The branching
context decides whether all measurement branches are enumerated (exact
mode) or one is sampled (empirical mode).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

import numpy as np

from ..primitives import OwfSpec
from ..qstate import (COMPUTATIONAL, HADAMARD, BitString, DimensionError, qubit_cap,
                      random_unitary)
from ..randomness import Rng, choose_index, make_rng, random_below, random_bits


@dataclass(frozen=True)
class View:
    """What the adversary sees besides register A."""

    n: int
    payload: bytes
    aux0: Any
    aux1: Any
    pk: Any
    owf: Optional[OwfSpec]


@dataclass(frozen=True)
class AdvBranch:
    certificate: BitString
    transcript: str
    joint: Any
    residual_measured: Optional[int] = None   # set when the residual is a dense state


class ExactBranching:
    exact = True

    def split(self, branches):
        return list(branches)

    def measure_a(self, joint, basis):
        return joint.a_branches(basis)

    def measure_register(self, dense, qubits):
        return dense.register_branches(qubits)

    def uniform(self, count: int):
        if count > 1 << qubit_cap():
            raise DimensionError(f"cannot enumerate {count} coin outcomes")
        return [(i, Fraction(1, count)) for i in range(count)]


class SampledBranching:
    exact = False

    def __init__(self, rng: Rng):
        self.rng = rng

    def split(self, branches):
        branches = list(branches)
        if len(branches) <= 1:
            return branches
        return [branches[choose_index(self.rng, [float(ch.norm2()) for _, ch in branches])]]

    def measure_a(self, joint, basis):
        return [joint.a_sample(basis, self.rng)]

    def measure_register(self, dense, qubits):
        return [dense.register_sample(qubits, self.rng)]

    def uniform(self, count: int):
        return [(random_below(self.rng, count), 1)]


class Strategy:
    name = "strategy"

    def alphabet_size(self, n: int, fixed_view: bool = False) -> int:
        """Number of distinct residual transcripts this strategy can emit.

        With ``fixed_view`` the count is for one given view (one challenger
        instance); otherwise it covers every view.
        """
        return 1 << n

    def check(self, scheme) -> None:
        """Raise ValueError if the strategy cannot run against ``scheme``."""

    def run(self, view: View, joint, ctx) -> list[AdvBranch]:
        raise NotImplementedError

    def describe(self) -> dict:
        return {"name": self.name}


class HonestDeleter(Strategy):
    """Measure A in the computational basis and hand the outcome in."""

    name = "honest"

    def alphabet_size(self, n, fixed_view=False):
        # one view has exactly two branches to measure into
        return 2 if fixed_view else 1 << n

    def run(self, view, joint, ctx):
        return [AdvBranch(x, str(x), child) for x, child in ctx.measure_a(joint, COMPUTATIONAL)]


class ClassicalInverter(Strategy):
    """Ignore A and invert y_target by table lookup (smallest preimage).

    With ``read_phase`` the inverter afterwards measures A in the Hadamard
    basis and keeps the outcome, which is how a successful inverter would
    extract the plaintext.
    """

    name = "inverter"

    def __init__(self, target: int = 0, read_phase: bool = False):
        if target not in (0, 1):
            raise ValueError("target must be 0 or 1")
        self.target = target
        self.read_phase = read_phase

    def check(self, scheme):
        if scheme.owf is None or not scheme.owf.enumerable:
            raise ValueError("the classical inverter needs an enumerable (toy) OWF")

    def alphabet_size(self, n, fixed_view=False):
        # the certificate is a function of the view; only w varies within one
        if fixed_view:
            return 1 << n if self.read_phase else 1
        return 1 << (2 * n) if self.read_phase else 1 << n

    def run(self, view, joint, ctx):
        y = view.aux0 if self.target == 0 else view.aux1
        cert = view.owf.preimages(y)[0]
        if not self.read_phase:
            return [AdvBranch(cert, str(cert), joint)]
        return [AdvBranch(cert, f"{cert}|{w}", child)
                for w, child in ctx.measure_a(joint, HADAMARD)]

    def describe(self):
        return {"name": self.name, "target": self.target, "read_phase": self.read_phase}


class HadamardRetainer(Strategy):
    """Measure A in the Hadamard basis, keep w, and submit a bogus certificate.

    ``certificate="invalid"`` submits the smallest x whose image is neither
    published value (OWF schemes only); ``"zero"`` submits 0^n; ``"guess"`` a
    uniformly random string.
    """

    name = "retainer"
    MODES = ("invalid", "zero", "guess")

    def __init__(self, certificate: str = "invalid"):
        if certificate not in self.MODES:
            raise ValueError(f"certificate must be one of {self.MODES}")
        self.certificate = certificate

    def check(self, scheme):
        if self.certificate == "invalid" and scheme.owf is None:
            raise ValueError("certificate='invalid' needs a classical verification key")

    def _invalid(self, view) -> BitString:
        targets = {view.aux0, view.aux1}
        for x in range(1 << view.n):
            cand = BitString(view.n, x)
            if view.owf.eval(cand) not in targets:
                return cand
        raise ValueError("every input maps to a published image; no invalid certificate exists")

    def run(self, view, joint, ctx):
        out = []
        for w, child in ctx.measure_a(joint, HADAMARD):
            if self.certificate == "guess":
                for g, p in ctx.uniform(1 << view.n):
                    out.append(AdvBranch(BitString(view.n, g), str(w), child.scaled(p)))
                continue
            cert = self._invalid(view) if self.certificate == "invalid" else BitString.zeros(view.n)
            out.append(AdvBranch(cert, str(w), child))
        return out

    def describe(self):
        return {"name": self.name, "certificate": self.certificate}


class CircuitAdversary(Strategy):
    """Apply a unitary to A ⊗ workspace, then measure.

    ``residual="measure"``: every qubit is measured; the certificate is the A
    part and the transcript the workspace bits. ``residual="state"``: only A
    is measured and the workspace is kept as a quantum residual.
    """

    name = "circuit"

    def __init__(self, unitary: np.ndarray, workspace: int = 1, residual: str = "measure",
                 seed: Optional[int] = None):
        if residual not in ("measure", "state"):
            raise ValueError("residual must be 'measure' or 'state'")
        if residual == "state" and workspace < 1:
            raise ValueError("a quantum residual needs at least one workspace qubit")
        self.unitary = np.asarray(unitary, dtype=complex)
        dim = self.unitary.shape[0]
        if self.unitary.shape != (dim, dim) or dim & (dim - 1):
            raise ValueError("unitary must be square with power-of-two dimension")
        if not np.allclose(self.unitary.conj().T @ self.unitary, np.eye(dim), atol=1e-10):
            raise ValueError("matrix is not unitary")
        self.workspace = workspace
        self.residual = residual
        self.seed = seed

    @classmethod
    def random(cls, n: int, workspace: int = 1, seed: int = 0, residual: str = "measure"):
        total = n + workspace
        if total > qubit_cap():
            raise DimensionError(f"circuit on {total} qubits exceeds cap {qubit_cap()}")
        u = random_unitary(1 << total, make_rng(seed, 0xC1C))
        return cls(u, workspace, residual, seed)

    def check(self, scheme):
        total = scheme.n + self.workspace
        if self.unitary.shape[0] != 1 << total:
            raise ValueError(f"unitary acts on {self.unitary.shape[0].bit_length() - 1} qubits, "
                             f"scheme needs {total}")

    def alphabet_size(self, n, fixed_view=False):
        if self.residual == "state":
            return 1
        return 1 << (self.workspace if self.workspace else n)

    def run(self, view, joint, ctx):
        dense = joint.to_dense(self.workspace).apply(self.unitary)
        k = self.workspace
        if self.residual == "state":
            return [AdvBranch(BitString(view.n, x), "", child, residual_measured=view.n)
                    for x, child in ctx.measure_register(dense, view.n)]
        out = []
        for outcome, child in ctx.measure_register(dense, view.n + k):
            cert = BitString(view.n, outcome >> k)
            transcript = format(outcome & ((1 << k) - 1), f"0{k}b") if k else str(cert)
            out.append(AdvBranch(cert, transcript, child))
        return out

    def describe(self):
        return {"name": self.name, "workspace": self.workspace, "residual": self.residual,
                "seed": self.seed}


# -- other-preimage game adversaries ------------------------------------------

@dataclass(frozen=True)
class GameView:
    z: BitString
    y0: BitString
    y1: BitString
    given: BitString
    owf: OwfSpec


class EchoAdversary:
    name = "echo"

    def respond(self, view: GameView, rng: Rng) -> BitString:
        return view.given


class BruteForceAdversary:
    """Find which image the given preimage hits, then invert the other one."""

    name = "brute"

    def respond(self, view: GameView, rng: Rng) -> BitString:
        if not view.owf.enumerable:
            raise ValueError("brute force needs an enumerable OWF")
        other = view.y1 if view.owf.eval(view.given) == view.y0 else view.y0
        return view.owf.preimages(other)[0]


class GuessAdversary:
    name = "guess"

    def respond(self, view: GameView, rng: Rng) -> BitString:
        return BitString(view.given.n, random_bits(rng, view.given.n))


GAME_ADVERSARIES = {"echo": EchoAdversary, "brute": BruteForceAdversary, "guess": GuessAdversary}


def build_strategy(spec: dict, n: int) -> Strategy:
    """Instantiate a strategy from ``{"name": ..., **params}``."""
    spec = dict(spec)
    name = spec.pop("name", None)
    if name == "honest":
        cls = HonestDeleter
    elif name == "inverter":
        cls = ClassicalInverter
    elif name == "retainer":
        cls = HadamardRetainer
    elif name == "circuit":
        return CircuitAdversary.random(n, **spec)
    else:
        raise ValueError(f"unknown adversary {name!r}")
    return cls(**spec)
