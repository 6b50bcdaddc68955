"""Higher rank numerical ranges through their support functions.

A point z lies in the rank-k numerical range of B exactly when
Re(e^{-i theta} z) <= lambda_k(Re(e^{-i theta} B)) for every angle theta, so
one eigenvalue sweep over an angle grid yields support values for every k at
once.  The same sweep drives the direct isospectrality and rank checks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DimensionTooLarge
from .matrix_core import RANK_REL_TOL, as_matrix, eigvalsh_batch, fro, hermitian_parts, is_nilpotent

DEFAULT_SAMPLES = 720
DISK_TOL = 1e-8
POLYGON_SLACK = 1e-14


def angle_grid(samples: int) -> np.ndarray:
    if samples < 8:
        raise ValueError("need at least 8 samples")
    return 2 * np.pi * np.arange(samples) / samples


def sweep_eigenvalues(B, samples: int = DEFAULT_SAMPLES):
    """Descending eigenvalues of Re(e^{-i theta_j} B) on the grid; shape (samples, n)."""
    B = as_matrix(B)
    thetas = angle_grid(samples)
    return thetas, eigvalsh_batch(hermitian_parts(B, thetas))


@dataclass
class RangeProfile:
    k: int
    thetas: np.ndarray
    support: np.ndarray
    radius: float | None  # None unless the range is a disk at 0
    is_disk_at_zero: bool
    tol_used: float
    empty: bool = False
    disk_stat: float = 0.0  # max(spread, -min) / (1 + ||B||_F)


def _profile(k, thetas, support, normB, tol, B=None) -> RangeProfile:
    scale = 1.0 + normB
    spread = float(support.max() - support.min())
    stat = max(spread, -float(support.min()), 0.0) / scale
    disk = stat <= tol
    radius = max(float(support.mean()), 0.0) if disk else None
    empty = False
    if not disk and B is not None:
        empty = len(_polygon_from_support(thetas, support, normB)) == 0
    return RangeProfile(k, thetas, support, radius, disk, tol, empty, stat)


def support_sweep(B, k: int, samples: int = DEFAULT_SAMPLES, tol: float = DISK_TOL) -> RangeProfile:
    """Support values lambda_k(Re(e^{-i theta} B)) and the disk-at-zero verdict."""
    B = as_matrix(B)
    n = B.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}")
    thetas, vals = sweep_eigenvalues(B, samples)
    return _profile(k, thetas, vals[:, k - 1].copy(), fro(B), tol, B)


def _polygon_from_support(thetas, support, normB):
    side = 4.0 * normB if normB > 0 else 1.0
    h = side / 2
    x0 = np.array([-h, h, h, -h])
    y0 = np.array([-h, -h, h, h])
    off = support + POLYGON_SLACK * (1.0 + normB)
    xs, ys = _kernels.clip_halfplanes(x0, y0, np.cos(thetas), np.sin(thetas), off)
    verts = xs + 1j * ys
    if len(verts) == 0:
        return []
    keep = [verts[0]]
    eps = 1e-13 * (1.0 + normB)
    for v in verts[1:]:
        if abs(v - keep[-1]) > eps:
            keep.append(v)
    if len(keep) > 1 and abs(keep[-1] - keep[0]) <= eps:
        keep.pop()
    return keep


def range_polygon(B, k: int, samples: int = DEFAULT_SAMPLES) -> list:
    """Counterclockwise vertices of the half-plane outer approximation of the
    rank-k numerical range; an empty list when the half-planes do not meet."""
    prof = support_sweep(B, k, samples)
    return _polygon_from_support(prof.thetas, prof.support, fro(as_matrix(B)))


@dataclass
class RankProfile:
    thetas: np.ndarray
    ranks: np.ndarray
    constant: bool
    ambiguous: bool = False  # some |lambda| / max|lambda| within 10x of rel_tol


def _ranks_from_sweep(thetas, vals, rel_tol) -> RankProfile:
    mags = np.abs(vals)
    top = mags.max(axis=1, keepdims=True)
    ratio = np.divide(mags, top, out=np.zeros_like(mags), where=top > 0)
    ranks = np.count_nonzero(ratio > rel_tol, axis=1)
    near = (ratio > rel_tol / 10) & (ratio < rel_tol * 10)
    return RankProfile(thetas, ranks, bool(np.all(ranks == ranks[0])), bool(near.any()))


def rank_sweep(B, samples: int = DEFAULT_SAMPLES, rel_tol: float = RANK_REL_TOL) -> RankProfile:
    thetas, vals = sweep_eigenvalues(B, samples)
    return _ranks_from_sweep(thetas, vals, rel_tol)


def _direct_stat(vals, normB) -> float:
    return float(np.abs(vals - vals[0]).max()) / (1.0 + normB)


def isospectral_stat(B, samples: int = DEFAULT_SAMPLES) -> float:
    """max_j ||sorted spec H(theta_j) - sorted spec H(0)||_inf / (1 + ||B||_F)."""
    B = as_matrix(B)
    _, vals = sweep_eigenvalues(B, samples)
    return _direct_stat(vals, fro(B))


def isospectral_check_direct(B, samples: int = DEFAULT_SAMPLES, tol: float = DISK_TOL) -> bool:
    return isospectral_stat(B, samples) <= tol


@dataclass
class RangeConditionReport:
    satisfied: bool
    profiles: list  # RangeProfile for k = 1..ceil(n/2)
    rank: RankProfile

    @property
    def radii(self):
        return [p.radius for p in self.profiles]

    @property
    def margin_stat(self) -> float:
        return max(p.disk_stat for p in self.profiles)


def range_condition_report(
    B, samples: int = DEFAULT_SAMPLES, tol: float = DISK_TOL, rel_tol: float = RANK_REL_TOL
) -> RangeConditionReport:
    B = as_matrix(B)
    n = B.shape[0]
    normB = fro(B)
    thetas, vals = sweep_eigenvalues(B, samples)
    profiles = [
        _profile(k, thetas, vals[:, k - 1].copy(), normB, tol, B) for k in range(1, math.ceil(n / 2) + 1)
    ]
    rank = _ranks_from_sweep(thetas, vals, rel_tol)
    ok = all(p.is_disk_at_zero for p in profiles) and rank.constant
    return RangeConditionReport(ok, profiles, rank)


def check_condition_iii(B, samples: int = DEFAULT_SAMPLES, tol: float = DISK_TOL) -> bool:
    """Rank-k ranges are disks at 0 for k <= ceil(n/2) and the rank is constant."""
    return range_condition_report(B, samples, tol).satisfied


def check_corollary_small_n(
    B, samples: int = DEFAULT_SAMPLES, tol: float = DISK_TOL, nil_tol: float = 1e-9
) -> bool:
    """For n <= 4: nilpotent and the classical numerical range is a disk at 0."""
    B = as_matrix(B)
    if B.shape[0] > 4:
        raise DimensionTooLarge(f"criterion only applies for n <= 4, got n = {B.shape[0]}")
    return is_nilpotent(B, nil_tol) and support_sweep(B, 1, samples, tol).is_disk_at_zero
