"""Isospectrality certificates for the trigonometric pencil Re(e^{-it} B)."""
from ._kernels import USE_NUMBA
from .analysis import AnalysisReport, AnalyzeConfig, parse_matrix, run_analyze, write_matrix
from .lax import LaxTrajectory, eigenpath_V, integrate_U, solve_P, verify_lax
from .matrix_core import (
    HermitianEig,
    commutator,
    eig_hermitian,
    expm_skew,
    hermitian_part,
    is_nilpotent,
    numeric_rank,
    trace_power,
)
from .numrange import (
    RangeProfile,
    RankProfile,
    check_condition_iii,
    check_corollary_small_n,
    isospectral_check_direct,
    range_condition_report,
    range_polygon,
    rank_sweep,
    support_sweep,
)
from .symmetry import block_decompose, bounded_word_check, solve_K, verify_rotation_similarity
from .words import (
    Word,
    WordConditionReport,
    check_condition_ii,
    fourier_coefficient_fk,
    spectra_equal_by_moments,
    trace_word,
    word_trace_sum,
)

__version__ = "0.1.0"
