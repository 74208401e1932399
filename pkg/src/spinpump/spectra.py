"""Eigendecomposition, spectral scans over v, and edge-state diagnostics."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .hilbert import (
    HermitianOperator,
    ModelParams,
    StateVector,
    build_h1,
    pauli_matrix,
    spin_magnitude,
)

# Default |E| window for counting mid-gap states in S ~ 5 scans; the edge-state
# splitting is finite at small S, so this is configuration, not physics.
MIDGAP_TOL = 0.05


@dataclass(frozen=True)
class EigenSystem:
    """Full spectrum, ascending, with orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    dim: int = field(init=False)

    def __post_init__(self):
        e = np.asarray(self.eigenvalues, dtype=float)
        v = np.asarray(self.eigenvectors, dtype=complex)
        if e.ndim != 1 or v.shape != (e.size, e.size):
            raise ValueError("eigenvalues/eigenvectors shape mismatch")
        e.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "eigenvalues", e)
        object.__setattr__(self, "eigenvectors", v)
        object.__setattr__(self, "dim", e.size)

    def state(self, k: int) -> StateVector:
        return StateVector(self.eigenvectors[:, k])


def eigh(H: HermitianOperator | np.ndarray) -> EigenSystem:
    """Full ascending eigendecomposition of a Hermitian operator.

    Non-Hermitian input is rejected (via the HermitianOperator invariant).
    Within degenerate clusters LAPACK returns an arbitrary orthonormal basis;
    it is deterministic for identical input, which is all the file outputs
    need.
    """
    if not isinstance(H, HermitianOperator):
        H = HermitianOperator(H)
    vals, vecs = np.linalg.eigh(H.entries)
    return EigenSystem(vals, vecs)


def spectrum_scan(S: float, w: float, v_grid) -> tuple[np.ndarray, np.ndarray]:
    """Spectrum of the chiral Hamiltonian for each v in an ascending grid.

    Returns (v_grid, energies) with energies[i] the full sorted spectrum at
    v_grid[i]; row schema for CSV output is v,E_1,...,E_D.
    """
    v_grid = np.asarray(v_grid, dtype=float)
    if v_grid.size == 0:
        raise ValueError("v grid is empty")
    if np.any(np.diff(v_grid) < 0):
        raise ValueError("v grid must be ascending")
    rows = [np.linalg.eigvalsh(build_h1(ModelParams(S=S, w=w, v=v)).entries)
            for v in v_grid]
    return v_grid, np.array(rows)


def chiral_residual(H: HermitianOperator) -> float:
    """max|sigma_z H sigma_z + H|: zero iff H anticommutes with sigma_z."""
    sz = pauli_matrix("z", H.S)
    return float(np.abs(sz @ H.entries @ sz + H.entries).max())


def midgap_states(es: EigenSystem, tol: float = MIDGAP_TOL) -> list[tuple[int, float]]:
    """All (index, E) eigenpairs with |E| < tol."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    return [(int(i), float(e)) for i, e in enumerate(es.eigenvalues) if abs(e) < tol]


def edge_weight(psi: StateVector, depth: int) -> float:
    """Probability carried by the outermost `depth` spin projections.

    Sums |amplitude|^2 over basis states with |n| > S - depth; lies in [0, 1],
    equals 1 for any state at depth = 2S+1.  Invariant under global phase and
    under sigma_z (it only reads |amplitude|^2 per n).
    """
    S = psi.S
    if not 1 <= depth <= int(round(2 * S)) + 1:
        raise ValueError(f"depth must be in 1..2S+1, got {depth}")
    nflat = np.repeat(-S + np.arange(int(round(2 * S)) + 1), 2)
    mask = np.abs(nflat) > S - depth
    return float(np.sum(np.abs(psi.amplitudes[mask]) ** 2))
