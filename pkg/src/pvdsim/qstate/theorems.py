"""Numeric checks of the two imported operator inequalities."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dense import (DENSITY_TOL, DenseState, DimensionError, as_density, trace_distance,
                    validate_density, validate_projector)

INEQUALITY_SLACK = 1e-9


@dataclass(frozen=True)
class GentleResult:
    delta: float
    td: float
    bound: float
    satisfied: bool


@dataclass(frozen=True)
class MappingResult:
    lhs: float
    rhs: float
    satisfied: bool


def check_gentle_measurement(rho, projector) -> GentleResult:
    """Compare TD(rho, rho') against 2*sqrt(delta) after post-selecting on ``projector``."""
    rho = as_density(rho)
    p = np.asarray(projector, dtype=complex)
    validate_density(rho)
    validate_projector(p)
    if p.shape != rho.shape:
        raise DimensionError(f"projector shape {p.shape} does not match state {rho.shape}")
    accept = float(np.trace(p @ rho).real)
    if accept <= DENSITY_TOL:
        raise ValueError("Tr(P rho) = 0: post-selection undefined")
    delta = max(0.0, 1.0 - accept)
    post = p @ rho @ p / accept
    post = (post + post.conj().T) / 2
    td = trace_distance(rho, post)
    bound = 2.0 * np.sqrt(delta)
    return GentleResult(delta, td, bound, td <= bound + INEQUALITY_SLACK)


def _sq(v: np.ndarray) -> float:
    return float(np.vdot(v, v).real)


def check_distinguish_implies_map(d, p0, p1, psi) -> MappingResult:
    """Both sides of
    ||P1 D P0 psi||^2 + ||P0 D P1 psi||^2 >= 1/2 (||D psi||^2 - (||D P0 psi||^2 + ||D P1 psi||^2))^2.
    """
    d, p0, p1 = (np.asarray(x, dtype=complex) for x in (d, p0, p1))
    v = psi.amplitudes if isinstance(psi, DenseState) else np.asarray(psi, dtype=complex)
    dim = v.shape[0]
    for name, op in (("D", d), ("P0", p0), ("P1", p1)):
        if op.shape != (dim, dim):
            raise DimensionError(f"{name} has shape {op.shape}, state has dimension {dim}")
        validate_projector(op)
    if np.linalg.norm(p0 @ p1, 2) > DENSITY_TOL:
        raise ValueError("P0 and P1 are not orthogonal")
    if np.linalg.norm((p0 + p1) @ v - v) > DENSITY_TOL:
        raise ValueError("psi is not in the image of P0 + P1")
    lhs = _sq(p1 @ d @ p0 @ v) + _sq(p0 @ d @ p1 @ v)
    inner = _sq(d @ v) - (_sq(d @ p0 @ v) + _sq(d @ p1 @ v))
    rhs = 0.5 * inner ** 2
    return MappingResult(lhs, rhs, lhs >= rhs - INEQUALITY_SLACK)
