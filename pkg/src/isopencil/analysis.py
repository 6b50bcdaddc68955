"""Matrix file I/O, the combined analysis report, and CSV export."""
from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import lax, numrange, symmetry, words
from .errors import ParseError
from .matrix_core import RANK_REL_TOL, as_matrix, is_nilpotent


def matrix_to_json(B) -> dict:
    B = np.asarray(B, dtype=np.complex128)
    return {
        "n": int(B.shape[0]),
        "rows": [[[float(z.real), float(z.imag)] for z in row] for row in B],
    }


def matrix_from_json(doc) -> np.ndarray:
    if not isinstance(doc, dict) or "rows" not in doc:
        raise ParseError('expected an object with a "rows" field')
    rows = doc["rows"]
    if not isinstance(rows, list) or not rows:
        raise ParseError('"rows" must be a non-empty list')
    n = doc.get("n", len(rows))
    if n != len(rows):
        raise ParseError(f'"n" is {n} but there are {len(rows)} rows')
    out = np.empty((n, n), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"row {i} does not have {n} entries")
        for j, entry in enumerate(row):
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)
            ):
                raise ParseError(f"entry ({i},{j}) must be a [re, im] pair of numbers")
            out[i, j] = complex(entry[0], entry[1])
    if not np.all(np.isfinite(out)):
        raise ValueError("matrix has non-finite entries")
    return out


def parse_matrix(path) -> np.ndarray:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
    return matrix_from_json(doc)


def write_matrix(B, path) -> None:
    Path(path).write_text(json.dumps(matrix_to_json(B)) + "\n", encoding="utf-8")


def matrix_digest(B) -> str:
    B = np.ascontiguousarray(B, dtype=np.complex128)
    h = hashlib.sha256()
    h.update(str(B.shape).encode())
    h.update(B.tobytes())
    return "sha256:" + h.hexdigest()


@dataclass
class AnalyzeConfig:
    samples: int = numrange.DEFAULT_SAMPLES
    tol: float = numrange.DISK_TOL  # direct and range checks
    word_tol: float = 1e-9
    nilpotent_tol: float = 1e-9
    rank_rel_tol: float = RANK_REL_TOL
    exists_tol: float = symmetry.EXISTS_TOL
    lax_steps: int | None = None

    def validate(self):
        if self.samples < 8:
            raise ValueError("samples must be >= 8")
        for name in ("tol", "word_tol", "nilpotent_tol", "rank_rel_tol", "exists_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.lax_steps is not None and self.lax_steps < 16:
            raise ValueError("lax_steps must be >= 16")


@dataclass
class AnalysisReport:
    input_digest: str
    n: int
    nilpotent: bool
    thm1_direct: bool
    thm1_word: bool
    thm1_range: bool
    thm1_word_violations: list
    thm32_exists: bool
    thm32_residual: float
    radii: list
    rank_constant: bool
    margins: dict
    tolerances: dict
    lax_summary: dict | None = None
    conditions_agree: bool = field(init=False)

    def __post_init__(self):
        self.conditions_agree = self.thm1_direct == self.thm1_word == self.thm1_range

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def run_analyze(B, config: AnalyzeConfig | None = None) -> AnalysisReport:
    """Run every characterization and collect verdicts, margins and tolerances."""
    config = config or AnalyzeConfig()
    config.validate()
    B = as_matrix(B)
    n = B.shape[0]

    direct_stat = numrange.isospectral_stat(B, config.samples)
    word = words.check_condition_ii(B, config.word_tol)
    rng = numrange.range_condition_report(B, config.samples, config.tol, config.rank_rel_tol)
    sol = symmetry.solve_K(B, config.exists_tol)

    lax_summary = None
    if config.lax_steps is not None:
        traj = lax.integrate_U(B, config.lax_steps)
        lax_summary = {
            "steps": config.lax_steps,
            "max_similarity_error": traj.max_similarity_error,
            "max_unitarity_error": traj.max_unitarity_error,
        }

    return AnalysisReport(
        input_digest=matrix_digest(B),
        n=n,
        nilpotent=bool(is_nilpotent(B, config.nilpotent_tol)),
        thm1_direct=bool(direct_stat <= config.tol),
        thm1_word=bool(word.satisfied),
        thm1_range=bool(rng.satisfied),
        thm1_word_violations=[list(kl) for kl in word.violations],
        thm32_exists=bool(sol.exists),
        thm32_residual=float(sol.residual),
        radii=[None if r is None else float(r) for r in rng.radii],
        rank_constant=bool(rng.rank.constant),
        margins={
            "direct": direct_stat,
            "word": word.margin_stat,
            "range": rng.margin_stat,
            "rank_ambiguous": bool(rng.rank.ambiguous),
            "thm32": float(sol.residual) / (1.0 + float(np.linalg.norm(B))),
        },
        tolerances=asdict(config),
        lax_summary=lax_summary,
    )


def emit_support_csv(B, k: int, samples: int, path) -> None:
    """Write theta,lambda_k rows for plotting the rank-k support function."""
    prof = numrange.support_sweep(B, k, samples)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["theta", "lambda_k"])
        for theta, value in zip(prof.thetas, prof.support):
            writer.writerow([f"{theta:.17g}", f"{value:.17g}"])


def _margin_ok(stat: float, tol: float) -> bool:
    return stat >= 10 * tol or stat <= tol / 10


def margins_clear(report: AnalysisReport) -> bool:
    """True when every equivalence statistic sits a decade away from its threshold."""
    tol = report.tolerances
    m = report.margins
    return (
        _margin_ok(m["direct"], tol["tol"])
        and _margin_ok(m["word"], tol["word_tol"])
        and _margin_ok(m["range"], tol["tol"])
        and not m["rank_ambiguous"]
    )
