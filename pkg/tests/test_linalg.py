"""
Tests for the linear algebra layer of MARIN
"""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from marin.matword import parse_word
from marin.linalg import (SymMatrix, eigen_sym, spectral_norm, matrix_power, eval_word,
                          rng_for, sample_psd, frac_power, commutator, commutator_min_sv,
                          matrix_digest, save_matrix, load_matrix)
from marin.utils.classes import DimensionError, ConvergenceError
from marin.utils.option import Defaults

seeds = st.integers(min_value=0, max_value=2**32 - 1)
dims = st.integers(min_value=1, max_value=6)


@given(seeds, dims)
def test_jacobi_matches_numpy(seed, dim):
    rng = rng_for(seed)
    g = rng.standard_normal((dim, dim))
    m = (g + g.T) / 2
    dec = eigen_sym(m)
    ref = np.sort(np.linalg.eigvalsh(m))[::-1]
    scale = max(1.0, np.abs(ref).max())
    assert np.allclose(dec.eigenvalues, ref, atol=1e-12 * scale)
    assert np.allclose(dec.reconstruct(), m, atol=1e-12 * scale)
    assert np.allclose(dec.eigenvectors.T @ dec.eigenvectors, np.eye(dim), atol=1e-12)


def test_eigen_2x2_closed_form():
    a, b, c = 2.0, 0.5, 1.0
    dec = eigen_sym([[a, b], [b, c]])
    disc = np.sqrt((a - c)**2 + 4 * b**2)
    assert dec.lambda_max == pytest.approx((a + c + disc) / 2, rel=1e-14)
    assert dec.lambda_min == pytest.approx((a + c - disc) / 2, rel=1e-14)


def test_eigen_of_zero_and_identity():
    assert np.array_equal(eigen_sym(np.zeros((3, 3))).eigenvalues, np.zeros(3))
    assert np.allclose(eigen_sym(np.eye(4)).eigenvalues, np.ones(4))


def test_convergence_error_when_sweeps_exhausted(monkeypatch):
    monkeypatch.setattr(Defaults, 'jacobi_max_sweeps', 0)
    m = np.array([[1.0, 0.3, 0.2], [0.3, 2.0, 0.1], [0.2, 0.1, 3.0]])
    with pytest.raises(ConvergenceError):
        eigen_sym(m)


def test_top_eigenspace_degenerate():
    dec = eigen_sym(np.diag([2.0, 2.0, 1.0]))
    assert dec.top_eigenspace().shape == (3, 2)


def test_symmatrix_symmetrizes_and_is_readonly():
    m = SymMatrix([[1.0, 2.0], [0.0, 1.0]])
    assert np.array_equal(m.entries, [[1.0, 1.0], [1.0, 1.0]])
    with pytest.raises(ValueError):
        m.entries[0, 0] = 5.0
    with pytest.raises(DimensionError):
        SymMatrix(np.ones((2, 3)))


def test_psd_flag():
    assert SymMatrix(np.diag([1.0, 0.0])).psd_certified
    assert not SymMatrix(np.diag([1.0, -0.5])).psd_certified


def test_spectral_norm_of_nonsymmetric():
    m = np.array([[0.0, 3.0], [0.0, 0.0]])
    norm, vec = spectral_norm(m)
    assert norm == pytest.approx(3.0)
    assert np.linalg.norm(m @ vec) == pytest.approx(3.0)


@given(seeds)
def test_spectral_norm_matches_svd(seed):
    g = rng_for(seed).standard_normal((4, 4))
    norm, _ = spectral_norm(g)
    assert norm == pytest.approx(np.linalg.norm(g, 2), rel=1e-12)


def test_matrix_power():
    m = np.array([[1.0, 1.0], [0.0, 1.0]])
    assert np.array_equal(matrix_power(m, 0), np.eye(2))
    assert np.array_equal(matrix_power(m, 5), [[1.0, 5.0], [0.0, 1.0]])
    with pytest.raises(ValueError):
        matrix_power(m, -1)


def test_eval_word():
    A, B = sample_psd(3, 1), sample_psd(3, 2)
    a, b = A.entries, B.entries
    assert np.allclose(eval_word(parse_word('AABABB'), A, B), a @ a @ b @ a @ b @ b)
    with pytest.raises(DimensionError):
        eval_word(parse_word('AB'), A, sample_psd(2, 3))


def test_cyclic_trace():
    rng = rng_for(11)
    for k in range(2, 6):
        mats = [rng.standard_normal((5, 5)) for _ in range(k)]
        t1 = np.trace(np.linalg.multi_dot(mats))
        t2 = np.trace(np.linalg.multi_dot(mats[1:] + mats[:1]))
        assert t1 == pytest.approx(t2, rel=1e-9, abs=1e-12)


def test_substreams_are_independent_of_order():
    x1 = rng_for(7, 3).standard_normal(4)
    rng_for(7, 2).standard_normal(4)
    x2 = rng_for(7, 3).standard_normal(4)
    assert np.array_equal(x1, x2)
    assert not np.array_equal(x1, rng_for(7, 4).standard_normal(4))


def test_sample_psd():
    m = sample_psd(4, 5)
    assert m.psd_certified
    assert eigen_sym(m).lambda_max == pytest.approx(1.0)
    low = sample_psd(4, 5, rank=1)
    w = eigen_sym(low).eigenvalues
    assert np.all(np.abs(w[1:]) < 1e-12)
    with pytest.raises(ValueError):
        sample_psd(3, 1, rank=4)


def test_frac_power():
    m = sample_psd(3, 9)
    half = frac_power(m, 0.5)
    assert np.allclose(half.entries @ half.entries, m.entries, atol=1e-12)
    assert np.allclose(frac_power(m, 0).entries @ m.entries, m.entries, atol=1e-12)
    with pytest.raises(ValueError):
        frac_power(m, -0.5)


def test_frac_power_rank_deficient_stays_finite():
    m = sample_psd(3, 9, rank=1)
    small = frac_power(m, 0.01)
    assert np.all(np.isfinite(small.entries))
    assert eigen_sym(small).lambda_max <= 1.0 + 1e-10


def test_commutator():
    A, B = sample_psd(4, 1), sample_psd(4, 2)
    c = commutator(A, B)
    assert np.allclose(c, -c.T)
    assert np.allclose(commutator(A, A), 0.0)
    assert commutator_min_sv(sample_psd(3, 1), sample_psd(3, 2)) == 0.0
    assert commutator_min_sv(A, B) > 0


def test_digest_and_io(tmp_path):
    A, B = sample_psd(3, 1), sample_psd(3, 2)
    assert matrix_digest(A, B) == matrix_digest(A, B)
    assert matrix_digest(A, B) != matrix_digest(B, A)
    path = str(tmp_path / 'a.json')
    save_matrix(A, path)
    assert load_matrix(path) == A


def test_asymmetric_input_warns():
    with pytest.warns(UserWarning):
        SymMatrix.from_dict({'dim': 2, 'entries': [1.0, 0.5, 0.0, 1.0]})


def _spread_spectrum(seed, dim, top=1.0, bottom=0.5):
    """ PSD matrix with eigenvalues evenly spread in [bottom, top]. """

    q, _ = np.linalg.qr(rng_for(seed).standard_normal((dim, dim)))
    return SymMatrix((q * np.linspace(top, bottom, dim)) @ q.T)


@pytest.mark.parametrize('text', ['AABABB', 'BAB', 'ABBAAB', 'AABBABBAABBAA'])
@pytest.mark.parametrize('dim', [2, 3, 4])
def test_word_determinant_factorizes(text, dim):
    word = parse_word(text)
    a, b = _spread_spectrum(dim, dim), _spread_spectrum(dim + 10, dim)
    det_word = np.linalg.det(eval_word(word, a, b))
    expected = np.linalg.det(a.entries)**word.total_m * np.linalg.det(b.entries)**word.total_n
    assert det_word == pytest.approx(expected, rel=1e-8)
