"""Traces of words in B and B*, their (k, l) sums, the Fourier route to the
same sums, and moment-based spectrum comparison."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import _kernels
from .errors import ComplexityLimit, DimensionMismatch
from .matrix_core import adjoint, as_matrix, fro

LETTER_B = 0
LETTER_BSTAR = 1

WORD_BUDGET = 4_000_000  # C(20, 10) * 20 ~ 3.7e6


@dataclass(frozen=True)
class Word:
    letters: tuple

    def __post_init__(self):
        letters = tuple(int(c) for c in self.letters)
        if not letters:
            raise ValueError("a word has at least one letter")
        if any(c not in (LETTER_B, LETTER_BSTAR) for c in letters):
            raise ValueError(f"letters must be {LETTER_B} or {LETTER_BSTAR}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse strings such as ``"BBB*BB*"`` (whitespace ignored)."""
        text = "".join(text.split())
        letters = []
        i = 0
        while i < len(text):
            if text[i] != "B":
                raise ValueError(f"unexpected character {text[i]!r} in word {text!r}")
            if i + 1 < len(text) and text[i + 1] == "*":
                letters.append(LETTER_BSTAR)
                i += 2
            else:
                letters.append(LETTER_B)
                i += 1
        return cls(tuple(letters))

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return "".join("B*" if c == LETTER_BSTAR else "B" for c in self.letters)

    def count(self, letter: int) -> int:
        return sum(1 for c in self.letters if c == letter)

    def rotations(self):
        L = self.letters
        return [Word(L[i:] + L[:i]) for i in range(len(L))]

    def canonical(self) -> "Word":
        """Lexicographically smallest cyclic rotation."""
        return min(self.rotations(), key=lambda w: w.letters)


def trace_word(B, w: Word) -> complex:
    B = np.asarray(B, dtype=np.complex128)
    Bs = B.conj().T
    P = np.eye(B.shape[0], dtype=np.complex128)
    for c in w.letters:
        P = P @ (Bs if c == LETTER_BSTAR else B)
    return complex(np.trace(P))


def word_trace_sum(B, k: int, l: int, budget: int = WORD_BUDGET) -> complex:
    """Sum of Tr w(B, B*) over the C(k, l) words of length k with l letters B*."""
    if k < 1 or not 0 <= l <= k:
        raise ValueError(f"need 1 <= k and 0 <= l <= k, got k={k}, l={l}")
    if comb(k, l) * k > budget:
        raise ComplexityLimit(f"C({k},{l})*{k} = {comb(k, l) * k} exceeds budget {budget}")
    B = np.ascontiguousarray(B, dtype=np.complex128)
    return complex(_kernels.word_trace_sum(B, adjoint(B), k, l))


@dataclass
class WordConditionReport:
    n: int
    sums: dict  # (k, l) -> complex
    max_abs: float
    satisfied: bool
    tol_used: float
    scaled: dict = field(default_factory=dict)  # (k, l) -> |sum| / (1 + ||B||_F^k)
    violations: list = field(default_factory=list)

    @property
    def worst(self):
        """(k, l) with the largest scaled magnitude, or None for n = 0."""
        if not self.scaled:
            return None
        return max(self.scaled, key=self.scaled.get)

    @property
    def margin_stat(self) -> float:
        return max(self.scaled.values(), default=0.0)


def check_condition_ii(B, tol: float = 1e-9, budget: int = WORD_BUDGET) -> WordConditionReport:
    """Evaluate every word sum with 1 <= k <= n and 0 <= l < k/2."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    B = as_matrix(B)
    n = B.shape[0]
    nb = fro(B)
    sums, scaled, bad = {}, {}, []
    for k in range(1, n + 1):
        for l in range((k + 1) // 2):
            s = word_trace_sum(B, k, l, budget=budget)
            sums[k, l] = s
            scaled[k, l] = abs(s) / (1.0 + nb**k)
            if scaled[k, l] > tol:
                bad.append((k, l))
    return WordConditionReport(
        n=n,
        sums=sums,
        max_abs=max((abs(s) for s in sums.values()), default=0.0),
        satisfied=not bad,
        tol_used=tol,
        scaled=scaled,
        violations=bad,
    )


def fourier_coefficient_fk(B, k: int, m: int, samples: int | None = None) -> complex:
    """Coefficient of e^{imt} in f_k(t) = 2^k Tr[Re(e^{-it} B)]^k.

    f_k is sampled on ``samples`` (default 4k) equispaced angles and the
    coefficients of the k+1 admissible frequencies -k, -k+2, ..., k are
    recovered by least squares.
    """
    if k < 1 or abs(m) > k or (m - k) % 2:
        raise ValueError(f"need |m| <= k and m = k mod 2, got k={k}, m={m}")
    B = np.asarray(B, dtype=np.complex128)
    samples = samples or 4 * k
    if samples < k + 1:
        raise ValueError("need at least k+1 samples")
    ts = 2 * np.pi * np.arange(samples) / samples
    Bs = B.conj().T
    f = np.array(
        [np.trace(np.linalg.matrix_power(np.exp(-1j * t) * B + np.exp(1j * t) * Bs, k)) for t in ts]
    )
    freqs = np.arange(-k, k + 1, 2)
    E = np.exp(1j * np.outer(ts, freqs))
    coef, *_ = np.linalg.lstsq(E, f, rcond=None)
    return complex(coef[(m + k) // 2])


def spectra_equal_by_moments(M1, M2, tol: float = 1e-9) -> bool:
    """Compare spectra through power sums Tr M^k, k = 1..n."""
    M1 = np.asarray(M1, dtype=np.complex128)
    M2 = np.asarray(M2, dtype=np.complex128)
    if M1.shape != M2.shape:
        raise DimensionMismatch(f"shapes {M1.shape} and {M2.shape} differ")
    scale = max(fro(M1), fro(M2))
    P1 = np.eye(M1.shape[0], dtype=np.complex128)
    P2 = P1.copy()
    for k in range(1, M1.shape[0] + 1):
        P1 = P1 @ M1
        P2 = P2 @ M2
        if abs(np.trace(P1) - np.trace(P2)) > tol * (1.0 + scale**k):
            return False
    return True
