"""Dense complex matrix substrate: Hermitian parts, Jacobi eigensolver,
numeric rank, trace powers, skew-adjoint exponentials and the min-norm
commutator solver shared by the symmetry and Lax modules."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, NoConvergence, NotHermitian, NotSkewAdjoint

EIG_TOL = 1e-10
HERMITICITY_TOL = 1e-12
JACOBI_MAX_SWEEPS = 30
JACOBI_OFF_TOL = 1e-13
RANK_REL_TOL = 1e-10


@dataclass(frozen=True)
class HermitianEig:
    values: np.ndarray  # descending
    vectors: np.ndarray  # orthonormal columns, same order as values


def as_matrix(B) -> np.ndarray:
    """Validate and convert ``B`` to a square, finite complex128 array."""
    M = np.array(B, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    return M


def fro(M) -> float:
    return float(np.linalg.norm(M))


def adjoint(M: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(M.conj().T)


def close(X, Y, tol: float = EIG_TOL) -> bool:
    return fro(np.asarray(X) - np.asarray(Y)) <= tol


def hermitian_part(B, theta: float) -> np.ndarray:
    """H(theta) = (e^{-i theta} B + e^{i theta} B*) / 2, i.e. Re(e^{-i theta} B)."""
    B = np.asarray(B, dtype=np.complex128)
    z = np.exp(-1j * theta)
    H = 0.5 * (z * B + np.conj(z) * B.conj().T)
    return 0.5 * (H + H.conj().T)


def hermitian_parts(B, thetas) -> np.ndarray:
    """Stack of hermitian_part(B, theta) for every theta, shape (m, n, n)."""
    B = np.asarray(B, dtype=np.complex128)
    z = np.exp(-1j * np.asarray(thetas, dtype=float))[:, None, None]
    A1 = 0.5 * (B + B.conj().T)
    A2 = (B - B.conj().T) / 2j
    # cos t A1 + sin t A2 is Hermitian by construction
    return np.ascontiguousarray(z.real * A1 - z.imag * A2)


def real_part(B) -> np.ndarray:
    return hermitian_part(B, 0.0)


def imag_part(B) -> np.ndarray:
    B = np.asarray(B, dtype=np.complex128)
    return (B - B.conj().T) / 2j


def _check_hermitian(H: np.ndarray, tol: float) -> None:
    err = fro(H - H.conj().T)
    if err > tol * fro(H):
        raise NotHermitian(f"||H - H*||_F = {err:.3e} exceeds {tol:g}*||H||_F")


def eig_hermitian(H, hermiticity_tol: float = HERMITICITY_TOL) -> HermitianEig:
    """Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi.

    Eigenvalues come back in descending order, lambda_1 >= ... >= lambda_n.
    """
    H = as_matrix(H)
    _check_hermitian(H, hermiticity_tol)
    H = 0.5 * (H + H.conj().T)
    vals, vecs, status = _kernels.jacobi_eigh(H, JACOBI_MAX_SWEEPS, JACOBI_OFF_TOL)
    if status < 0:
        raise NoConvergence(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")
    return HermitianEig(values=vals, vectors=vecs)


def eigvalsh_batch(Hs) -> np.ndarray:
    """Descending eigenvalues for a stack of Hermitian matrices (no vectors)."""
    Hs = np.ascontiguousarray(Hs, dtype=np.complex128)
    vals, status = _kernels.jacobi_eigvals_batch(Hs, JACOBI_MAX_SWEEPS, JACOBI_OFF_TOL)
    if status < 0:
        raise NoConvergence(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")
    return vals


def singular_values(M) -> np.ndarray:
    M = np.ascontiguousarray(M, dtype=np.complex128)
    return _kernels.jacobi_singular_values(M, 60, 1e-15)


def numeric_rank(M, rel_tol: float = RANK_REL_TOL) -> int:
    """Count of singular values above ``rel_tol`` times the largest one.

    Hermitian input goes through the eigensolver (|lambda| are the singular
    values); anything else through one-sided Jacobi SVD.
    """
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    M = as_matrix(M)
    scale = fro(M)
    if scale == 0.0:
        return 0
    if fro(M - M.conj().T) <= HERMITICITY_TOL * scale:
        sv = np.abs(eig_hermitian(M).values)
    else:
        sv = singular_values(M)
    return int(np.count_nonzero(sv > rel_tol * sv.max()))


def trace_power(B, k: int) -> complex:
    if k < 1:
        raise ValueError("k must be >= 1")
    return complex(np.trace(np.linalg.matrix_power(np.asarray(B, dtype=np.complex128), k)))


def is_nilpotent(B, tol: float = 1e-9) -> bool:
    """True iff |Tr B^k| <= tol (1 + ||B||_F^k) for k = 1..n."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    B = as_matrix(B)
    nb = fro(B)
    P = np.eye(B.shape[0], dtype=np.complex128)
    for k in range(1, B.shape[0] + 1):
        P = P @ B
        if abs(np.trace(P)) > tol * (1.0 + nb**k):
            return False
    return True


def expm_skew(K, t: float, hermiticity_tol: float = HERMITICITY_TOL) -> np.ndarray:
    """e^{tK} for skew-adjoint K, via the Jacobi eigendecomposition of iK."""
    K = as_matrix(K)
    err = fro(K + K.conj().T)
    if err > hermiticity_tol * (1.0 + fro(K)):
        raise NotSkewAdjoint(f"||K + K*||_F = {err:.3e}")
    eig = eig_hermitian(1j * K, hermiticity_tol=np.inf)
    # K = -i V diag(w) V*  =>  e^{tK} = V diag(e^{-i t w}) V*
    V = eig.vectors
    return (V * np.exp(-1j * t * eig.values)) @ V.conj().T


def commutator(X, Y) -> np.ndarray:
    X = np.asarray(X, dtype=np.complex128)
    Y = np.asarray(Y, dtype=np.complex128)
    if X.shape != Y.shape:
        raise DimensionMismatch(f"shapes {X.shape} and {Y.shape} differ")
    return X @ Y - Y @ X


# --------------------------------------------------------------------------
# min-norm skew-adjoint solutions of [K, X] = R


def skew_basis(n: int) -> np.ndarray:
    """Frobenius-orthonormal basis of the n x n skew-adjoint matrices.

    Order: the n matrices i e_jj, then for each strictly-lower position (j, k)
    the real pair (e_jk - e_kj)/sqrt2 and i (e_jk + e_kj)/sqrt2.
    """
    basis = np.zeros((n * n, n, n), dtype=np.complex128)
    for j in range(n):
        basis[j, j, j] = 1j
    idx = n
    r = 1.0 / np.sqrt(2.0)
    for j in range(n):
        for k in range(j):
            basis[idx, j, k] = r
            basis[idx, k, j] = -r
            basis[idx + 1, j, k] = 1j * r
            basis[idx + 1, k, j] = 1j * r
            idx += 2
    return basis


def solve_skew_commutator(X, R, rcond: float = 1e-10):
    """Minimal-Frobenius-norm skew-adjoint K minimizing ||[K, X] - R||_F.

    Returns ``(K, residual)``.  The complex equation is split into real and
    imaginary rows over the n^2 real coordinates of ``skew_basis``; because
    that basis is orthonormal, the min-norm coordinate vector is the
    min-Frobenius-norm K.
    """
    X = np.asarray(X, dtype=np.complex128)
    R = np.asarray(R, dtype=np.complex128)
    n = X.shape[0]
    basis = skew_basis(n)
    cols = np.einsum("bij,jk->bik", basis, X) - np.einsum("ij,bjk->bik", X, basis)
    cols = cols.reshape(n * n, n * n).T
    A = np.vstack([cols.real, cols.imag])
    rhs = np.concatenate([R.real.ravel(), R.imag.ravel()])
    coef, *_ = np.linalg.lstsq(A, rhs, rcond=rcond)
    K = np.tensordot(coef, basis, axes=1)
    K = 0.5 * (K - K.conj().T)
    residual = fro(commutator(K, X) - R)
    return K, residual
