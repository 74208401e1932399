"""Product Hilbert space of a giant spin S and a spin-1/2, and the model Hamiltonians.

Basis ordering is fixed so that file outputs are bit-reproducible: the flat
index runs over n = -S, -S+1, ..., S (ascending) with the spin-1/2 label
'up' before 'down' inside each n, i.e.

    flat = 2*(n + S) + (0 if up else 1),      dimension D = 2*(2S + 1).

All energies are measured in units of w0 and times in 1/w0 (hbar = 1).
Half-integer S is supported; the only requirement is that 2S is an integer
>= 2 so that a bulk exists between the two extremal spin states.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

UP = "up"
DOWN = "down"

# Hermiticity tolerance, relative to the largest entry magnitude.
HERMITICITY_TOL = 1e-12
NORM_TOL = 1e-10


class BasisIndex(NamedTuple):
    """One basis state |n, sigma> and its position in the state vector."""

    n: float
    sigma: str
    flat: int


def spin_magnitude(dim: int) -> float:
    """Recover S from a full-space dimension D = 2*(2S+1)."""
    if dim % 2 or dim < 6:
        raise ValueError(f"dimension {dim} is not 2*(2S+1) with 2S >= 2")
    return (dim // 2 - 1) / 2.0


def flat_index(S: float, n: float, sigma: str) -> int:
    k = n + S
    ik = int(round(k))
    if abs(k - ik) > 1e-9 or not -1e-9 <= k <= 2 * S + 1e-9:
        raise ValueError(f"projection n={n} not in -S..S for S={S}")
    if sigma not in (UP, DOWN):
        raise ValueError(f"sigma must be '{UP}' or '{DOWN}', got {sigma!r}")
    return 2 * ik + (0 if sigma == UP else 1)


def basis_states(S: float) -> list[BasisIndex]:
    """All (n, sigma) states in flat order."""
    out = []
    for k in range(int(round(2 * S)) + 1):
        n = -S + k
        out.append(BasisIndex(n, UP, 2 * k))
        out.append(BasisIndex(n, DOWN, 2 * k + 1))
    return out


def n_values(S: float) -> np.ndarray:
    """Spin projections -S..S (length 2S+1)."""
    return -S + np.arange(int(round(2 * S)) + 1, dtype=float)


@dataclass(frozen=True)
class ModelParams:
    """Physical couplings, all in units of w0.

    S:     giant-spin magnitude (2S integer >= 2)
    w:     spin-exchange energy
    v:     spin-1/2 spin-flip energy
    delta: spin-1/2 sigma_z offset
    lam:   collective interaction strength (any sign)
    """

    S: float
    w: float = 1.0
    v: float = 0.0
    delta: float = 0.0
    lam: float = 0.0

    def __post_init__(self):
        two_s = 2 * self.S
        if abs(two_s - round(two_s)) > 1e-9 or round(two_s) < 2:
            raise ValueError(f"2S must be an integer >= 2, got S={self.S}")
        # w = 0 is allowed: the drive cycle passes through it once per period.
        if self.w < 0:
            raise ValueError(f"exchange energy w must be >= 0, got {self.w}")
        if self.v < 0:
            raise ValueError(f"spin-flip energy v must be >= 0, got {self.v}")

    @property
    def N(self) -> int:
        """Particle number of the equivalent collective-spin system, N = 2S."""
        return int(round(2 * self.S))

    @property
    def dim(self) -> int:
        return 2 * (self.N + 1)


@dataclass(frozen=True)
class HermitianOperator:
    """Dense Hermitian matrix on the (n, sigma) product space."""

    entries: np.ndarray
    dim: int = field(init=False)

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"operator must be square, got shape {a.shape}")
        scale = max(np.abs(a).max(), 1.0)
        dev = np.abs(a - a.conj().T).max()
        if dev > HERMITICITY_TOL * scale:
            raise ValueError(f"matrix is not Hermitian: max|A - A^dag| = {dev:.3e}")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)
        object.__setattr__(self, "dim", a.shape[0])

    @property
    def S(self) -> float:
        return spin_magnitude(self.dim)


@dataclass(frozen=True)
class StateVector:
    """Normalized amplitude vector over the (n, sigma) basis."""

    amplitudes: np.ndarray
    dim: int = field(init=False)

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=complex).ravel()
        nrm = np.linalg.norm(a)
        if abs(nrm - 1.0) > NORM_TOL:
            raise ValueError(f"state not normalized: ||psi|| = {nrm:.12f}")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)
        object.__setattr__(self, "dim", a.size)

    @property
    def S(self) -> float:
        return spin_magnitude(self.dim)


def ladder_coeff(S: float, n: float, direction: str) -> float:
    """Transition amplitude between adjacent giant-spin states.

    Raising:  sqrt((S - n)(S + n + 1)),  lowering:  sqrt((S + n)(S - n + 1)).
    Exactly zero at the closed boundary (n = +S raising, n = -S lowering).
    """
    if abs(n) > S + 1e-12:
        raise ValueError(f"|n| = {abs(n)} exceeds S = {S}")
    if direction == "raise":
        val = (S - n) * (S + n + 1)
    elif direction == "lower":
        val = (S + n) * (S - n + 1)
    else:
        raise ValueError(f"direction must be 'raise' or 'lower', got {direction!r}")
    return float(np.sqrt(max(val, 0.0)))


# ---------------------------------------------------------------------------
# raw-matrix builders (ndarray); the public API wraps them in HermitianOperator
# ---------------------------------------------------------------------------

def _ladder_plus(S: float) -> np.ndarray:
    """<n'|S_+|n> on the n register."""
    ns = n_values(S)
    m = len(ns)
    sp = np.zeros((m, m))
    for i in range(m - 1):
        sp[i + 1, i] = ladder_coeff(S, ns[i], "raise")
    return sp


_SIGMA = {
    "x": np.array([[0.0, 1.0], [1.0, 0.0]]),
    "y": np.array([[0.0, -1.0j], [1.0j, 0.0]]),
    "z": np.array([[1.0, 0.0], [0.0, -1.0]]),
    "+": np.array([[0.0, 1.0], [0.0, 0.0]]),   # |down> -> |up>
    "-": np.array([[0.0, 0.0], [1.0, 0.0]]),
}


def exchange_matrix(S: float) -> np.ndarray:
    """S_+ sigma_- + S_- sigma_+ on the full space (real symmetric)."""
    sp = _ladder_plus(S)
    return np.kron(sp, _SIGMA["-"].real) + np.kron(sp.T, _SIGMA["+"].real)


def sz_diagonal(S: float) -> np.ndarray:
    """Diagonal of S_z on the full space, in flat order."""
    return np.repeat(n_values(S), 2)


def pauli_matrix(axis: str, S: float) -> np.ndarray:
    """sigma_axis acting on the spin-1/2, identity on the n register."""
    if axis not in ("x", "y", "z"):
        raise ValueError(f"axis must be x, y or z, got {axis!r}")
    m = int(round(2 * S)) + 1
    return np.kron(np.eye(m), _SIGMA[axis])


def h1_matrix(S: float, w: float, v: float) -> np.ndarray:
    return -w * exchange_matrix(S) - S * v * pauli_matrix("x", S).real


def h2_matrix(S: float, w: float, v: float, delta: float) -> np.ndarray:
    return h1_matrix(S, w, v) - S * delta * pauli_matrix("z", S).real


def h3_matrix(S: float, w: float, v: float, delta: float, lam: float) -> np.ndarray:
    # Interaction normalized as lam * Sz^2 / N: this is the convention the
    # mean-field energy functional and the critical coupling formula are
    # written in, and the one the exact ground energy agrees with to O(1/N).
    N = 2 * S
    diag = (lam / N) * sz_diagonal(S) ** 2
    return (np.diag(diag) - w * exchange_matrix(S)
            - (N * v / 2) * pauli_matrix("x", S).real
            - (N * delta / 2) * pauli_matrix("z", S).real)


# ---------------------------------------------------------------------------
# public builders
# ---------------------------------------------------------------------------

def build_h1(p: ModelParams) -> HermitianOperator:
    """Chiral-symmetric Hamiltonian: -w(S+ s- + S- s+) - S v sigma_x.

    Couples |n, up> to |n+1, down> with amplitude -w*ladder_coeff(S, n, raise)
    and |n, up> to |n, down> with amplitude -S*v; nothing else.
    """
    return HermitianOperator(h1_matrix(p.S, p.w, p.v))


def build_h2(p: ModelParams) -> HermitianOperator:
    """build_h1 plus the chiral-symmetry-breaking offset -S*delta*sigma_z."""
    return HermitianOperator(h2_matrix(p.S, p.w, p.v, p.delta))


def build_h3(p: ModelParams) -> HermitianOperator:
    """Collective (N = 2S particle) form with the S_z^2 interaction.

    lam * Sz^2 / N - w(S+ s- + S- s+) - (N v / 2) sigma_x - (N delta / 2) sigma_z.
    Reduces to build_h2 exactly at lam = 0.
    """
    return HermitianOperator(h3_matrix(p.S, p.w, p.v, p.delta, p.lam))


def build_sz(S: float) -> HermitianOperator:
    """S_z of the giant spin, embedded on the full space (diagonal n)."""
    return HermitianOperator(np.diag(sz_diagonal(S)))


def build_pauli(axis: str, S: float) -> HermitianOperator:
    """Spin-1/2 Pauli operator embedded on the full space."""
    return HermitianOperator(pauli_matrix(axis, S))
