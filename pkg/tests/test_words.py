import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from isopencil.errors import ComplexityLimit
from isopencil.matrix_core import hermitian_part, is_nilpotent
from isopencil.numrange import isospectral_check_direct
from isopencil.words import (
    LETTER_B,
    LETTER_BSTAR,
    Word,
    check_condition_ii,
    fourier_coefficient_fk,
    spectra_equal_by_moments,
    trace_word,
    word_trace_sum,
)

seeds = st.integers(0, 2**32 - 1)


def test_word_parse_roundtrip():
    w = Word.parse("BBB*BB*")
    assert w.letters == (LETTER_B, LETTER_B, LETTER_BSTAR, LETTER_B, LETTER_BSTAR)
    assert str(w) == "BBB*BB*"
    assert len(w) == 5 and w.count(LETTER_BSTAR) == 2 and w.count(LETTER_B) == 3
    with pytest.raises(ValueError):
        Word.parse("BA")
    with pytest.raises(ValueError):
        Word(())


def test_trace_word_known_values(B_chain4, B_nil5):
    assert trace_word(B_chain4, Word.parse("BBBB*BB*")) == -1
    assert trace_word(B_nil5, Word.parse("BBB*")) == 1
    B = oracles.random_dense(np.random.default_rng(0), 3)
    assert np.isclose(trace_word(B, Word.parse("B")), np.trace(B))


@given(seed=seeds, n=st.integers(1, 5), bits=st.lists(st.integers(0, 1), min_size=1, max_size=7))
def test_trace_word_cyclic_invariance(seed, n, bits):
    B = oracles.random_dense(np.random.default_rng(seed), n)
    w = Word(tuple(bits))
    ref = trace_word(B, w)
    for r in w.rotations():
        assert abs(trace_word(B, r) - ref) <= 1e-9 * (1 + np.linalg.norm(B) ** len(w))


def test_word_trace_sum_examples(B_chain4, B_nil5):
    # three words BBB*, BB*B, B*BB, each with trace Tr B^2B* = 1
    assert oracles.word_sum_bruteforce(B_nil5, 3, 1) == 3
    assert word_trace_sum(B_nil5, 3, 1) == 3
    assert oracles.word_sum_bruteforce(B_chain4, 4, 1) == 0
    assert word_trace_sum(B_chain4, 4, 1) == 0
    B = oracles.random_dense(np.random.default_rng(5), 4)
    assert np.isclose(word_trace_sum(B, 1, 0), np.trace(B))


@settings(max_examples=40)
@given(seed=seeds, n=st.integers(1, 5), k=st.integers(1, 7), data=st.data())
def test_word_trace_sum_matches_bruteforce(seed, n, k, data):
    l = data.draw(st.integers(0, k))
    B = oracles.random_dense(np.random.default_rng(seed), n)
    ref = oracles.word_sum_bruteforce(B, k, l)
    assert abs(word_trace_sum(B, k, l) - ref) <= 1e-9 * (1 + np.linalg.norm(B) ** k) * max(1, len(B))


@given(seed=seeds, n=st.integers(1, 5), k=st.integers(1, 6), data=st.data())
def test_conjugate_symmetry(seed, n, k, data):
    l = data.draw(st.integers(0, k))
    B = oracles.random_dense(np.random.default_rng(seed), n)
    a = word_trace_sum(B, k, l)
    b = word_trace_sum(B, k, k - l)
    assert abs(a - np.conj(b)) <= 1e-9 * (1 + np.linalg.norm(B) ** k)


def test_complexity_limit():
    B = np.eye(2)
    with pytest.raises(ComplexityLimit):
        word_trace_sum(B, 22, 11)
    with pytest.raises(ComplexityLimit):
        word_trace_sum(B, 6, 3, budget=10)
    assert word_trace_sum(B, 20, 10) == pytest.approx(2 * 184756)


def test_condition_ii_examples(B_chain4, B_nil5, B_five):
    assert check_condition_ii(B_chain4).satisfied
    rep = check_condition_ii(B_five)
    assert rep.satisfied and rep.max_abs <= 1e-9
    bad = check_condition_ii(B_nil5)
    assert not bad.satisfied
    assert bad.violations[0] == (3, 1)
    assert bad.sums[3, 1] == 3


def test_fourier_examples(B_chain4):
    A = oracles.random_dense(np.random.default_rng(2), 3)
    A = A + A.conj().T
    for m in (-1, 1):
        assert np.isclose(fourier_coefficient_fk(A, 1, m), np.trace(A))
    # coefficient of e^{-2it} in Tr(e^{-it}B + e^{it}B*)^2 is Tr B^2 = 0
    assert abs(fourier_coefficient_fk(B_chain4, 2, -2)) < 1e-14
    with pytest.raises(ValueError):
        fourier_coefficient_fk(B_chain4, 2, 1)


@settings(max_examples=30)
@given(seed=seeds, n=st.integers(1, 6), data=st.data())
def test_fourier_agrees_with_enumeration(seed, n, data):
    k = data.draw(st.integers(1, n))
    l = data.draw(st.integers(0, k))
    B = oracles.random_dense(np.random.default_rng(seed), n)
    f = fourier_coefficient_fk(B, k, 2 * l - k)
    s = word_trace_sum(B, k, l)
    assert abs(f - s) <= 1e-8 * max(1.0, abs(s), np.linalg.norm(B) ** k)


def test_spectra_equal_by_moments(B_chain4):
    rng = np.random.default_rng(9)
    A = oracles.random_dense(rng, 4)
    A = A + A.conj().T
    U = oracles.random_unitary(rng, 4)
    assert spectra_equal_by_moments(A, U @ A @ U.conj().T)
    for t in np.linspace(0, 2 * np.pi, 17):
        assert spectra_equal_by_moments(hermitian_part(B_chain4, 0), hermitian_part(B_chain4, t))
    assert not spectra_equal_by_moments(np.diag([1.0, 0]), np.zeros((2, 2)))


def test_condition_ii_implies_nilpotent():
    rng = np.random.default_rng(11)
    for _ in range(30):
        B = oracles.random_rotation_symmetric(rng, int(rng.integers(2, 6)))
        assert check_condition_ii(B).satisfied
        assert is_nilpotent(B)


@pytest.mark.slow
def test_condition_ii_equivalent_to_direct():
    rng = np.random.default_rng(2024)
    for i in range(200):
        n = int(rng.integers(2, 6))
        kind = i % 4
        if kind == 0:
            B = oracles.random_dense(rng, n)
        elif kind == 1:
            B = oracles.random_strict_upper(rng, n)
        else:
            B = oracles.random_rotation_symmetric(rng, n)
        assert check_condition_ii(B).satisfied == isospectral_check_direct(B)
