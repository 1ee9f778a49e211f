"""
Tests for the numerical verifiers of MARIN
"""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from marin.matword import parse_word, random_word, transpose_word
from marin.linalg import SymMatrix, sample_psd, rng_for, eval_word, frac_power
from marin.suites import _noncommuting_pair, _commuting_pair
from marin.utils.classes import DimensionError, BudgetError
import marin.verify as verify

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@given(seeds)
def test_gap_nonnegative_for_2x2(seed):
    rng = rng_for(seed)
    word = random_word(rng, 12)
    a = sample_psd(2, rng, rank=int(rng.integers(1, 3)))
    b = sample_psd(2, rng, rank=int(rng.integers(1, 3)))
    rep = verify.rearrangement_gap(word, a, b)
    assert rep.gap >= -1e-10 * rep.norm_ordered - 1e-14
    assert not rep.is_violation


def test_gap_report_fields():
    word = parse_word('ABAB')
    a, b = sample_psd(3, 1), sample_psd(3, 2)
    rep = verify.rearrangement_gap(word, a, b)
    assert rep.gap == pytest.approx(rep.norm_ordered - rep.norm_word)
    assert rep.to_dict()['certified'] == 'float_only'
    assert len(rep.inputs_digest) == 64
    with pytest.raises(ValueError):
        verify.GapReport(word, 3, 1.0, 1.0, certified='maybe')


def test_ordered_word_has_zero_gap():
    word = parse_word('AAB')
    rep = verify.rearrangement_gap(word, sample_psd(3, 1), sample_psd(3, 2))
    assert rep.gap == 0.0


@given(seeds)
def test_certificate_holds_for_2x2(seed):
    rng = rng_for(seed)
    word = random_word(rng, 12)
    a = sample_psd(2, rng, rank=int(rng.integers(1, 3)))
    b = sample_psd(2, rng, rank=int(rng.integers(1, 3)))
    cert = verify.certificate_2x2(word, a, b)
    assert cert.holds
    assert cert.case in ('mu1_zero', 'rank_deficient', 'full_rank')
    assert verify.power_trace_dominance(cert, 4) >= -1e-8


def test_certificate_cases():
    word = parse_word('ABAB')
    a = SymMatrix(np.diag([1.0, 0.5]))
    b = SymMatrix([[0.75, 0.25], [0.25, 0.75]])
    assert verify.certificate_2x2(word, a, b).case == 'full_rank'
    rank1 = SymMatrix(np.diag([1.0, 0.0]))
    assert verify.certificate_2x2(word, rank1, b).case == 'rank_deficient'
    zero = SymMatrix(np.zeros((2, 2)))
    assert verify.certificate_2x2(word, zero, b).case == 'mu1_zero'


def test_certificate_needs_2x2():
    with pytest.raises(DimensionError):
        verify.certificate_2x2(parse_word('ABAB'), sample_psd(3, 1), sample_psd(3, 2))


def test_certificate_exponents():
    exps = verify.certificate_exponents(parse_word('AABABB'))
    sixth = Fraction(1, 6)
    assert exps == (sixth, sixth, 4 * sixth, sixth, sixth, 4 * sixth)
    assert sum(exps[0::2]) == 1 and sum(exps[1::2]) == 1
    with pytest.raises(ValueError):
        verify.certificate_exponents(parse_word('AAA'))


def _well_conditioned(seed):
    q, _ = np.linalg.qr(rng_for(seed).standard_normal((3, 3)))
    return SymMatrix((q * [1.0, 0.7, 0.4]) @ q.T)


@pytest.mark.parametrize('text', ['AABABB', 'ABAB', 'BAB', 'ABBAAB'])
def test_trace_splitting_reproduces_frobenius_norm(text):
    word = parse_word(text)
    a, b = _well_conditioned(5), _well_conditioned(6)
    m, n = word.total_m, word.total_n
    c = frac_power(a, 2 * m)
    d = frac_power(b, 2 * n)
    exps = verify.certificate_exponents(word)
    prod = np.eye(3)
    for p, q in zip(exps[0::2], exps[1::2]):
        prod = prod @ frac_power(c, float(p)).entries @ frac_power(d, float(q)).entries
    w = eval_word(word, a, b)
    assert np.trace(prod) == pytest.approx(np.sum(w * w), rel=1e-9)


@given(seeds)
def test_trace_inequality_2x2(seed):
    rng = rng_for(seed)
    c, d = sample_psd(2, rng), sample_psd(2, rng)
    k = int(rng.integers(1, 5))
    ps, qs = rng.dirichlet(np.ones(k)), rng.dirichlet(np.ones(k))
    exps = [x for pair in zip(ps, qs) for x in pair]
    slack = verify.trace_inequality_2x2(c, d, exps)
    assert slack >= -1e-9 * abs(np.trace(c.entries @ d.entries))


def test_trace_inequality_preconditions():
    c, d = sample_psd(2, 1), sample_psd(2, 2)
    with pytest.raises(ValueError):
        verify.trace_inequality_2x2(c, d, [0.5, 0.5, 0.4, 0.5])
    with pytest.raises(ValueError):
        verify.trace_inequality_2x2(c, d, [1.5, 1.0, -0.5, 0.0])
    with pytest.raises(ValueError):
        verify.trace_inequality_2x2(c, d, [1.0])
    with pytest.raises(DimensionError):
        verify.trace_inequality_2x2(sample_psd(3, 1), sample_psd(3, 2), [1.0, 1.0])


def test_trace_inequality_dim3_warns():
    with pytest.warns(UserWarning):
        verify.trace_inequality_2x2(sample_psd(3, 1), sample_psd(3, 2), [0.5, 0.5, 0.5, 0.5],
                                    allow_dim3=True)


def test_lemma1_projection_decays():
    word = parse_word('AABAB')
    a, b = sample_psd(4, 8), sample_psd(4, 9)
    rep = verify.lemma1_projection(word, a, b)
    assert rep.threshold > 0
    assert rep.defects[-1] <= rep.defects[0] + 1e-12
    assert rep.order is None or rep.order >= 0.9


def test_lemma1_constant_is_stable():
    q, _ = np.linalg.qr(np.array([[1.0, 2.0, 0.0], [0.0, 1.0, 3.0], [2.0, 0.0, 1.0]]))
    a = SymMatrix(np.diag([1.0, 0.5, 0.2]))
    b = SymMatrix((q * [1.0, 0.4, 0.1]) @ q.T)
    rep = verify.lemma1_projection(parse_word('AABAB'), a, b)
    assert rep.c1 > 0
    assert 1.0 <= rep.stability <= 2.0
    assert all(d <= 2 * rep.c1 * e for e, d in zip(rep.eps, rep.defects))
    assert rep.spread > 8.0
    assert rep.order > 1.5


def test_lemma1_full_eigenspace():
    eye = SymMatrix(np.eye(3))
    rep = verify.lemma1_projection(parse_word('ABAB'), eye, eye)
    assert all(d == 0.0 for d in rep.defects)
    assert rep.order is None
    with pytest.raises(ValueError):
        verify.lemma1_projection(parse_word('ABAB'), eye, eye, eps_list=[0.1, 0.0])


def test_lemma2_noncommuting():
    a, b = _noncommuting_pair(rng_for(4), 2)
    for m, n in ((1, 1), (2, 3), (4, 1)):
        rep = verify.lemma2_gaps(m, n, a, b)
        assert rep.gap_aba > 0 and rep.gap_bab > 0
        assert rep.multiplicity == 1
        assert verify.lemma2_operator_gap(m, n, a, b) == pytest.approx(0.0, abs=1e-10)


def test_lemma2_commuting_gaps_vanish():
    a, b = _commuting_pair(rng_for(4), 3)
    rep = verify.lemma2_gaps(2, 1, a, b)
    assert rep.gap_aba == pytest.approx(0.0, abs=1e-10)
    assert rep.gap_bab == pytest.approx(0.0, abs=1e-10)
    assert rep.min_sv == 0.0
    with pytest.raises(ValueError):
        verify.lemma2_gaps(0, 1, a, b)


def test_third_order_coefficient():
    a, b = _noncommuting_pair(rng_for(12), 2)
    rep = verify.theorem2_third_order(parse_word('ABAB'), a, b)
    assert rep.coeff3 > 0
    assert abs(rep.a3_term) <= 1e-10
    assert rep.relative_error <= 0.1
    assert rep.numeric_fit > 0
    with pytest.raises(ValueError):
        verify.theorem2_third_order(parse_word('AABB'), a, b)


def test_epsilon0_for_2x2():
    a, b = _noncommuting_pair(rng_for(12), 2)
    assert verify.epsilon0_search(parse_word('ABAB'), a, b) == 0.5


@pytest.mark.parametrize('seed', range(5))
def test_classical_inequalities(seed):
    rng = rng_for(seed)
    dim = 2 + seed % 3
    a, b = sample_psd(dim, rng, rank=1 + seed % dim), sample_psd(dim, rng)
    slacks = verify.classical_suite(a, b, rng=rng)
    names = {s.name for s in slacks}
    assert names == {'heinz_loewner', 'cordes', 'furuta', 'mcintosh', 'heinz_kato'}
    assert all(verify.slack_holds(s) for s in slacks)


def test_classical_config():
    cfg = verify.ClassicalConfig(s_grid=[0.5], furuta_n=(2,), alpha_grid=[0.25], samples=2)
    slacks = verify.classical_suite(sample_psd(2, 1), sample_psd(2, 2), config=cfg)
    assert len(slacks) == 1 + 1 + 1 + 2 * 2


def test_recht_re():
    mats = [sample_psd(2, i) for i in range(3)]
    slack = verify.recht_re_check(mats, 2)
    assert isinstance(slack, float)
    assert slack >= -1e-9
    with pytest.raises(BudgetError):
        verify.recht_re_check(mats, 3, budget=10)
    with pytest.raises(ValueError):
        verify.recht_re_check(mats, 4)


@given(seeds)
def test_gap_invariant_under_transpose(seed):
    rng = rng_for(seed)
    word = random_word(rng, 12)
    a, b = sample_psd(3, rng), sample_psd(3, rng)
    rep = verify.rearrangement_gap(word, a, b)
    rep_t = verify.rearrangement_gap(transpose_word(word), a, b)
    assert rep_t.gap == pytest.approx(rep.gap, abs=1e-10 * rep.scale + 1e-14)


@pytest.mark.parametrize('c', [0.25, 3.0])
@pytest.mark.parametrize('seed', range(4))
def test_gap_scales_homogeneously(seed, c):
    rng = rng_for(seed)
    word = parse_word('AABABB')
    a, b = sample_psd(3, rng), sample_psd(3, rng)
    rep = verify.rearrangement_gap(word, a, b)
    scaled = verify.rearrangement_gap(word, a.scaled(c), b.scaled(c))
    factor = c**len(word)
    assert scaled.gap == pytest.approx(factor * rep.gap, abs=1e-10 * factor * rep.scale)
    if abs(rep.gap) > 1e-8 * rep.scale:
        assert np.sign(scaled.gap) == np.sign(rep.gap)
