"""Lax-pair construction of the unitary path U(t) with
Re(e^{-it} B) = U(t) Re(B) U(t)*.

At each time the generator P(t) is the min-norm skew-adjoint solution of
[P, L(t)] = L'(t); U' = P U is then integrated by classical RK4 with a polar
projection back onto the unitary group after every step.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSpectrum, ResidualTooLarge
from .matrix_core import as_matrix, eig_hermitian, fro, hermitian_part, solve_skew_commutator

SOLVE_TOL = 1e-8
DEFAULT_STEPS = 2000
GAP_TOL = 1e-8


def lax_L(B, t: float) -> np.ndarray:
    return hermitian_part(B, t)


def lax_dL(B, t: float) -> np.ndarray:
    """L'(t) = -sin t Re B + cos t Im B, which is L(t + pi/2)."""
    return hermitian_part(B, t + np.pi / 2)


def solve_P(B, t: float, tol: float = SOLVE_TOL, return_residual: bool = False):
    """Min-norm skew-adjoint P with [P, L(t)] = L'(t) in least squares."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    B = as_matrix(B)
    P, residual = solve_skew_commutator(lax_L(B, t), lax_dL(B, t))
    if residual > tol * (1.0 + fro(B)):
        raise ResidualTooLarge(
            f"Lax equation unsolvable at t={t:.6g}: residual {residual:.3e}; the pencil is not isospectral",
            residual=residual,
        )
    return (P, residual) if return_residual else P


def polar_unitary(U: np.ndarray) -> np.ndarray:
    """Nearest unitary matrix, U (U*U)^{-1/2}."""
    eig = eig_hermitian(U.conj().T @ U, hermiticity_tol=np.inf)
    W = eig.vectors
    return U @ ((W / np.sqrt(eig.values)) @ W.conj().T)


def _multiplicity_pattern(values, gap):
    return tuple(np.diff(values) < -gap)


@dataclass
class LaxTrajectory:
    t_grid: np.ndarray
    P_samples: np.ndarray  # (steps + 1, n, n)
    U_samples: np.ndarray  # (steps + 1, n, n)
    max_similarity_error: float
    max_unitarity_error: float

    @property
    def steps(self) -> int:
        return len(self.t_grid) - 1


def trajectory_errors(B, t_grid, U_samples):
    """(max similarity error, max unitarity error) along a sampled path."""
    B = as_matrix(B)
    L0 = lax_L(B, 0.0)
    n = B.shape[0]
    sim = uni = 0.0
    for t, U in zip(t_grid, U_samples):
        sim = max(sim, fro(U @ L0 @ U.conj().T - lax_L(B, t)))
        uni = max(uni, fro(U.conj().T @ U - np.eye(n)))
    return sim, uni


def integrate_U(B, steps: int = DEFAULT_STEPS, tol: float = SOLVE_TOL) -> LaxTrajectory:
    """RK4 for U' = P(t) U, U(0) = I on [0, 2 pi] with h = 2 pi / steps."""
    if steps < 16:
        raise ValueError("steps must be >= 16")
    B = as_matrix(B)
    n = B.shape[0]
    h = 2 * np.pi / steps
    # P at grid nodes (even index) and stage midpoints (odd index)
    half = np.arange(2 * steps + 1) * (h / 2)
    gap = GAP_TOL * (1.0 + fro(B))
    pattern = None
    Ps = np.empty((2 * steps + 1, n, n), dtype=np.complex128)
    for i, t in enumerate(half):
        L = lax_L(B, t)
        vals = eig_hermitian(L).values
        pat = _multiplicity_pattern(vals, gap)
        if pattern is None:
            pattern = pat
        elif pat != pattern:
            raise DegenerateSpectrum(f"eigenvalue multiplicities of L(t) change near t={t:.6g}")
        Ps[i] = solve_P(B, t, tol)

    U = np.eye(n, dtype=np.complex128)
    Us = np.empty((steps + 1, n, n), dtype=np.complex128)
    Us[0] = U
    for j in range(steps):
        P0, Pm, P1 = Ps[2 * j], Ps[2 * j + 1], Ps[2 * j + 2]
        k1 = P0 @ U
        k2 = Pm @ (U + 0.5 * h * k1)
        k3 = Pm @ (U + 0.5 * h * k2)
        k4 = P1 @ (U + h * k3)
        U = polar_unitary(U + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4))
        Us[j + 1] = U
    t_grid = half[::2].copy()
    sim, uni = trajectory_errors(B, t_grid, Us)
    return LaxTrajectory(t_grid, Ps[::2].copy(), Us, sim, uni)


def verify_lax(B, traj: LaxTrajectory, tol: float) -> bool:
    return traj.max_similarity_error <= tol and traj.max_unitarity_error <= tol


def eigenpath_V(B, t_grid) -> np.ndarray:
    """Eigenvector matrices of L(t) along ``t_grid``, shape (m, n, n).

    Columns follow descending eigenvalues.  The first point fixes each
    column's largest entry real positive; later points choose the phase that
    maximizes Re <v_prev, v_new>.
    """
    B = as_matrix(B)
    gap = GAP_TOL * (1.0 + fro(B))
    out = []
    prev = None
    for t in np.asarray(t_grid, dtype=float):
        eig = eig_hermitian(lax_L(B, t))
        if B.shape[0] > 1 and np.min(-np.diff(eig.values)) < gap:
            raise DegenerateSpectrum(f"repeated eigenvalue of L(t) at t={t:.6g}")
        V = eig.vectors.copy()
        if prev is None:
            idx = np.argmax(np.abs(V), axis=0)
            ref = V[idx, np.arange(V.shape[1])]
        else:
            ref = np.einsum("ij,ij->j", prev.conj(), V)
        mag = np.abs(ref)
        V *= np.where(mag > 0, np.conj(ref) / np.where(mag > 0, mag, 1.0), 1.0)
        out.append(V)
        prev = V
    return np.array(out)
