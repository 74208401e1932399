"""Winding numbers: closed forms, mean-field profiles, and the real-space operator.

The quantum winding profile is built from the projector P onto the filled
(E < 0) half of the spectrum.  Its up-down sector B(n, n') = <n,up|P|n',down>
plays the role of the off-diagonal Bloch amplitude; conjugating the position
operator with a regularized pseudo-inverse of B turns the Brillouin-zone
winding integral into a local, per-unit-cell quantity.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .hilbert import (
    HermitianOperator,
    ModelParams,
    build_h1,
    n_values,
    pauli_matrix,
)

# Singular values below PINV_RCOND * sigma_max are dropped when inverting the
# sector matrix; B is near-singular at the lattice edges where the winding
# concept itself breaks down.
PINV_RCOND = 1e-8
ZERO_CLUSTER_TOL = 1e-10
IMAG_RESIDUE_TOL = 1e-6

# Marker returned by the closed-form winding numbers exactly at the w = v
# transition, where the sign is undefined.
CRITICAL = object()


class WindingUndefinedError(ValueError):
    """Raised when the filled/empty split of the spectrum is ambiguous."""


@dataclass(frozen=True)
class WindingProfile:
    """Per-site winding values nu(n) with the bulk averaging window."""

    n_values: np.ndarray
    nu: np.ndarray
    window: tuple[float, float] = (-10.0, 10.0)

    def __post_init__(self):
        ns = np.asarray(self.n_values, dtype=float)
        raw = np.asarray(self.nu)
        if np.iscomplexobj(raw):
            resid = float(np.abs(raw.imag).max()) if raw.size else 0.0
            if resid > IMAG_RESIDUE_TOL:
                raise ValueError(f"winding profile has imaginary residue {resid:.3e}")
            raw = raw.real
        nu = np.asarray(raw, dtype=float)
        if ns.shape != nu.shape:
            raise ValueError("n_values and nu must have matching shapes")
        ns.setflags(write=False)
        nu.setflags(write=False)
        object.__setattr__(self, "n_values", ns)
        object.__setattr__(self, "nu", nu)


@dataclass(frozen=True)
class BlochSample:
    """The 2x2 mean-field Bloch Hamiltonian at one (n, phi) point."""

    n: float
    phi: float
    h: complex
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def energies(self) -> tuple[float, float]:
        a = abs(self.h)
        return (-a, a)


def ssh_winding(w: float, v: float):
    """Closed-form winding of the homogeneous two-band chain.

    (1/2)[1 + sign(w - v)]: 1 in the topological phase (w > v), 0 in the
    trivial phase (w < v).  Returns the CRITICAL marker at w = v exactly.
    """
    if w < 0 or v < 0 or (w == 0 and v == 0):
        raise ValueError("need w, v >= 0 and not both zero")
    if w == v:
        return CRITICAL
    return int(0.5 * (1 + np.sign(w - v)))


def mf_winding(n: float, p: ModelParams):
    """Site-resolved mean-field winding: (1/2)[1 + sign(w*sqrt(S^2-n^2) - S*v)]."""
    if abs(n) > p.S + 1e-12:
        raise ValueError(f"|n| = {abs(n)} exceeds S = {p.S}")
    bulk = p.w * np.sqrt(max(p.S**2 - n**2, 0.0))
    gap = bulk - p.S * p.v
    if gap == 0.0:
        return CRITICAL
    return int(0.5 * (1 + np.sign(gap)))


def mf_bloch(n: float, phi: float, p: ModelParams) -> BlochSample:
    """Mean-field 2x2 Bloch Hamiltonian at spin projection n and angle phi.

    -w*sqrt(S^2-n^2) (e^{i phi} s- + e^{-i phi} s+) - S v sigma_x, with
    eigenvalues +-|h| for h = S v + w*sqrt(S^2-n^2) e^{-i phi}.
    """
    if abs(n) > p.S + 1e-12:
        raise ValueError(f"|n| = {abs(n)} exceeds S = {p.S}")
    root = np.sqrt(max(p.S**2 - n**2, 0.0))
    sminus = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
    splus = sminus.T.copy()
    sx = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    m = -p.w * root * (np.exp(1j * phi) * sminus + np.exp(-1j * phi) * splus) \
        - p.S * p.v * sx
    h = p.S * p.v + p.w * root * np.exp(-1j * phi)
    return BlochSample(n=n, phi=phi, h=complex(h), matrix=m)


def _filled_projector(H: HermitianOperator, zero_tol: float) -> np.ndarray:
    """Projector onto the filled half of the spectrum.

    States with |E| < zero_tol form the zero cluster.  For a chiral spectrum
    the cluster is sigma_z-closed and even-sized (edge-mode pairs split
    exponentially below any floating-point scale); the cluster is resolved
    into sigma_z eigenstates and the sigma_z = -1 members are filled, which is
    deterministic and leaves every bulk matrix element unchanged.  Any other
    zero cluster means the split is genuinely ambiguous.
    """
    vals, vecs = np.linalg.eigh(H.entries)
    zero = np.abs(vals) < zero_tol
    cols = [vecs[:, i] for i in np.where(vals <= -zero_tol)[0]]
    n_zero = int(zero.sum())
    if n_zero:
        if n_zero % 2:
            raise WindingUndefinedError(
                f"winding undefined at criticality: odd zero cluster "
                f"({n_zero} states with |E| < {zero_tol:g})")
        vz = vecs[:, zero]
        sz = pauli_matrix("z", H.S)
        block = vz.conj().T @ sz @ vz
        szvals, rot = np.linalg.eigh(block)
        if (np.abs(np.abs(szvals) - 1.0).max() > 1e-6
                or int(np.sum(szvals < 0)) != n_zero // 2):
            raise WindingUndefinedError(
                "winding undefined at criticality: zero cluster is not "
                "sigma_z-paired (bulk gap closed)")
        resolved = vz @ rot
        for k in range(n_zero):
            if szvals[k] < 0:
                cols.append(resolved[:, k])
    P = np.zeros((H.dim, H.dim), dtype=complex)
    for c in cols:
        P += np.outer(c, c.conj())
    return P


def winding_operator(H: HermitianOperator, zero_tol: float = ZERO_CLUSTER_TOL) -> np.ndarray:
    """Winding-number operator on the n register, (2S+1) x (2S+1).

    B+ [B, Sz] with B(n,n') = <n,up|P|n',down> and B+ a pseudo-inverse
    regularized at PINV_RCOND; the diagonal approximates the per-site winding
    and plateaus at the integer phase label deep in the bulk.
    """
    P = _filled_projector(H, zero_tol)
    B = P[0::2, 1::2]
    sv = np.linalg.svd(B, compute_uv=False)
    if sv[0] == 0.0 or sv[-1] / sv[0] < PINV_RCOND:
        warnings.warn(
            f"sector matrix poorly conditioned (cond = {sv[0] / max(sv[-1], 1e-300):.3e}); "
            f"singular values below {PINV_RCOND:g}*max dropped", RuntimeWarning)
    Bp = np.linalg.pinv(B, rcond=PINV_RCOND)
    szn = np.diag(n_values(H.S))
    return Bp @ (B @ szn - szn @ B)


def local_winding_profile(H: HermitianOperator,
                          window: tuple[float, float] = (-10.0, 10.0),
                          zero_tol: float = ZERO_CLUSTER_TOL) -> WindingProfile:
    """Diagonal of the winding operator, as nu(n) over n = -S..S."""
    nu_op = winding_operator(H, zero_tol)
    return WindingProfile(n_values(H.S), np.diag(nu_op).copy(), window)


def bulk_average_winding(profile: WindingProfile) -> float:
    """Arithmetic mean of nu(n) over the profile's averaging window."""
    lo, hi = profile.window
    S = profile.n_values.max()
    if lo < -S - 1e-9 or hi > S + 1e-9:
        raise ValueError(f"window {profile.window} outside [-S, S]")
    mask = (profile.n_values >= lo - 1e-9) & (profile.n_values <= hi + 1e-9)
    return float(profile.nu[mask].mean())


def winding_transition_scan(S: float, w: float, v_grid,
                            window: tuple[float, float] = (-10.0, 10.0)
                            ) -> tuple[np.ndarray, np.ndarray]:
    """Bulk-average winding for each v in the grid; schema v,nu_avg."""
    v_grid = np.asarray(v_grid, dtype=float)
    if v_grid.size == 0:
        raise ValueError("v grid is empty")
    avgs = []
    with warnings.catch_warnings():
        # the edge-singularity of B is the expected situation in the
        # topological phase; the regularized inverse handles it
        warnings.filterwarnings("ignore", message="sector matrix poorly conditioned")
        for v in v_grid:
            H = build_h1(ModelParams(S=S, w=w, v=v))
            avgs.append(bulk_average_winding(local_winding_profile(H, window)))
    return v_grid, np.array(avgs)


def transition_midpoint(v_grid: np.ndarray, nu_avg: np.ndarray,
                        level: float = 0.5) -> float:
    """First downward crossing of `level` in a transition scan, interpolated."""
    above = nu_avg >= level
    if above.all() or not above.any():
        raise ValueError("scan does not cross the level")
    i = int(np.argmax(~above & np.roll(above, 1) & (np.arange(above.size) > 0)))
    x0, x1 = v_grid[i - 1], v_grid[i]
    y0, y1 = nu_avg[i - 1], nu_avg[i]
    return float(x0 + (level - y0) * (x1 - x0) / (y1 - y0))


def profile_drop_location(profile: WindingProfile, level: float = 0.5) -> float:
    """|n| where the profile first falls through `level`, scanning outward from n=0."""
    ns, nu = profile.n_values, profile.nu
    order = np.argsort(np.abs(ns), kind="stable")
    prev_n, prev_nu = None, None
    for i in order:
        if prev_nu is not None and prev_nu >= level > nu[i]:
            frac = (prev_nu - level) / (prev_nu - nu[i])
            return float(abs(prev_n) + frac * (abs(ns[i]) - abs(prev_n)))
        prev_n, prev_nu = ns[i], nu[i]
    raise ValueError("profile does not fall through the level")
