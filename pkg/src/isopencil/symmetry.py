"""Rotational unitary symmetry e^{it} B ~ B.

The decidable route is the linear equation [K, B] = -iB over skew-adjoint K.
A solution K conjugates B to e^{it} B along exp(-tK), and the eigenspaces of
the Hermitian matrix -iK exhibit the block-superdiagonal normal form.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ClusterAmbiguity, ComplexityLimit, NotSkewAdjoint
from .matrix_core import (
    HERMITICITY_TOL,
    as_matrix,
    eig_hermitian,
    expm_skew,
    fro,
    solve_skew_commutator,
)
from .words import WORD_BUDGET, Word, trace_word

EXISTS_TOL = 1e-8
CLUSTER_TOL = 1e-6
CHAIN_TOL = 1e-6


@dataclass
class CommutatorSolution:
    K: np.ndarray
    residual: float
    exists: bool
    tol_used: float


def solve_K(B, tol: float = EXISTS_TOL) -> CommutatorSolution:
    """Min-norm skew-adjoint K minimizing ||[K, B] + iB||_F."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    B = as_matrix(B)
    K, residual = solve_skew_commutator(B, -1j * B)
    return CommutatorSolution(K, residual, residual <= tol * (1.0 + fro(B)), tol)


def verify_rotation_similarity(B, K, samples: int = 64) -> float:
    """max over t of ||e^{-tK} B e^{tK} - e^{it} B||_F on an equispaced grid."""
    B = as_matrix(B)
    K = as_matrix(K)
    if fro(K + K.conj().T) > HERMITICITY_TOL * (1.0 + fro(K)):
        raise NotSkewAdjoint("K is not skew-adjoint")
    worst = 0.0
    for t in 2 * np.pi * np.arange(samples) / samples:
        U = expm_skew(K, -t)
        worst = max(worst, fro(U @ B @ U.conj().T - np.exp(1j * t) * B))
    return worst


@dataclass
class BlockDecomposition:
    U: np.ndarray
    block_sizes: list  # per summand, the sizes of its diagonal blocks
    off_pattern_norm: float
    levels: list = field(default_factory=list)  # eigenvalues of -iK per block


def _cluster(values, tol):
    """Group ascending values into runs separated by gaps > tol."""
    gaps = np.diff(values)
    if np.any((gaps > tol) & (gaps < 10 * tol)):
        raise ClusterAmbiguity(f"eigenvalue gap inside ({tol:g}, {10 * tol:g})")
    clusters = [[0]]
    for i, g in enumerate(gaps, start=1):
        if g > tol:
            clusters.append([i])
        else:
            clusters[-1].append(i)
    return clusters


def _chains(levels, tol):
    """Partition ascending cluster levels into runs mu, mu+1, mu+2, ..."""
    nxt = {}
    for a, la in enumerate(levels):
        for b in range(a + 1, len(levels)):
            if abs(levels[b] - la - 1.0) <= tol:
                nxt[a] = b
                break
    starts = sorted(set(range(len(levels))) - set(nxt.values()))
    chains = []
    for s in starts:
        chain = [s]
        while chain[-1] in nxt:
            chain.append(nxt[chain[-1]])
        chains.append(chain)
    return chains


def block_decompose(B, K, tol: float = CLUSTER_TOL) -> BlockDecomposition:
    """Unitary change of basis putting B into block-superdiagonal summands.

    If [K, B] = -iB then B maps the mu-eigenspace of -iK into the
    (mu - 1)-eigenspace.  Ordering eigenspaces in ascending chains of unit
    spacing therefore confines U B U* to the superdiagonal blocks.
    """
    B = as_matrix(B)
    G = -1j * as_matrix(K)
    eig = eig_hermitian(0.5 * (G + G.conj().T), hermiticity_tol=np.inf)
    vals = eig.values[::-1]
    vecs = eig.vectors[:, ::-1]
    clusters = _cluster(vals, tol)
    levels = [float(vals[c].mean()) for c in clusters]
    order, sizes, lv = [], [], []
    for chain in _chains(levels, CHAIN_TOL):
        sizes.append([len(clusters[c]) for c in chain])
        lv.append([levels[c] for c in chain])
        for c in chain:
            order.extend(clusters[c])
    W = vecs[:, order]
    U = W.conj().T
    C = U @ B @ W
    mask = np.zeros(C.shape, dtype=bool)
    start = 0
    for chain_sizes in sizes:
        offsets = np.cumsum([start] + chain_sizes)
        for a in range(len(chain_sizes) - 1):
            mask[offsets[a] : offsets[a + 1], offsets[a + 1] : offsets[a + 2]] = True
        start = offsets[-1]
    return BlockDecomposition(U, sizes, fro(C[~mask]), lv)


def bounded_word_check(B, max_len: int, tol: float = 1e-9, budget: int = WORD_BUDGET) -> list:
    """Unbalanced words up to ``max_len`` (one per cyclic class) with nonzero trace.

    Returns ``[(Word, trace), ...]`` for traces exceeding tol (1 + ||B||_F^|w|).
    Finding nothing is evidence, not proof: no length bound is known that
    makes the scan complete.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    if 2**max_len * max_len > budget:
        raise ComplexityLimit(f"2^{max_len}*{max_len} exceeds budget {budget}")
    B = as_matrix(B)
    nb = fro(B)
    found = []
    for length in range(1, max_len + 1):
        seen = set()
        for code in range(2**length):
            letters = tuple((code >> (length - 1 - i)) & 1 for i in range(length))
            stars = sum(letters)
            if 2 * stars == length:
                continue
            w = Word(letters).canonical()
            if w.letters in seen:
                continue
            seen.add(w.letters)
            tr = trace_word(B, w)
            if abs(tr) > tol * (1.0 + nb**length):
                found.append((w, tr))
    return found

