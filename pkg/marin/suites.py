"""
Batch verification suites for MARIN

Each suite draws independent random instances, instance i of a run with
seed s using the substream SeedSequence([s, i]), and collects one record
per instance in a pandas DataFrame sorted by index.
"""

from collections import namedtuple

import logging
DEBUG_R = 15

import numpy as np
import pandas as pd

from marin.matword import (parse_word, format_word, random_word, enumerate_words,
                           is_ordered, Word)
from marin.linalg import SymMatrix, eigen_sym, sample_psd, rng_for, commutator_min_sv
from marin.ncpoly import extract_coeffs, cancels_to_order
import marin.verify as verify
from marin.utils.option import Defaults
import marin.utils.functions as functions


""" Default number of instances per suite. """

DEFAULT_SAMPLES = {'theorem1': 100000,
                   'certificate': 10000,
                   'trace2x2': 10000,
                   'theorem2': 1000,
                   'lemma1': 100,
                   'lemma2': 1000,
                   'classical': 10000,
                   'rechtre': 10000,
                   'drury': 10000,
                   'cancellation': None}

""" Default matrix size per suite, None cycles through sizes 2, 3, 4. """

DEFAULT_DIM = {'theorem1': 2,
               'certificate': 2,
               'trace2x2': 2,
               'theorem2': 2,
               'lemma1': 4,
               'lemma2': 2,
               'classical': None,
               'rechtre': 2,
               'drury': None,
               'cancellation': None}

DRURY_WORD = 'AABBABBAABBAA'

SuiteResult = namedtuple('SuiteResult', ['table', 'passed', 'warnings'])


def _random_pair(rng, dim, mixed_rank=True):
    """ Two normalized random PSD matrices, with random factor ranks if requested. """

    ra = int(rng.integers(1, dim + 1)) if mixed_rank else dim
    rb = int(rng.integers(1, dim + 1)) if mixed_rank else dim
    return sample_psd(dim, rng, rank=ra), sample_psd(dim, rng, rank=rb)


def _noncommuting_pair(rng, dim, threshold=1e-3):
    """ Full rank random PSD pair with sigma_min(AB - BA) above threshold. """

    if dim % 2 == 1:
        raise ValueError('The commutator of symmetric matrices is singular in odd size {:d}'.format(dim))
    while True:
        a, b = sample_psd(dim, rng), sample_psd(dim, rng)
        if commutator_min_sv(a, b) > threshold:
            return a, b


def _commuting_pair(rng, dim):
    """ Random PSD pair sharing an eigenbasis. """

    q, _ = np.linalg.qr(rng.standard_normal((dim, dim)))
    da, db = rng.uniform(0, 1, dim), rng.uniform(0, 1, dim)
    da, db = da / da.max(), db / db.max()
    return SymMatrix((q * da) @ q.T), SymMatrix((q * db) @ q.T)


def _disordered_word(rng, max_length):
    """ Random word with a nonzero third order lemma term, i.e. neither ordered
        nor of the form B^n A^m. """

    while True:
        word = random_word(rng, max_length, min_length=3)
        if not is_ordered(word):
            coeffs = extract_coeffs(word)
            if coeffs.a7 + coeffs.a10 > 0:
                return word


def _separated_pair(rng, dim, word, rel_gap=0.2):
    """ Full rank random PSD pair whose Y = mA + nB has its top eigenvalue
        separated from the next one by at least rel_gap times its size. """

    m, n = word.total_m, word.total_n
    while True:
        a, b = sample_psd(dim, rng), sample_psd(dim, rng)
        if dim == 1:
            return a, b
        w = eigen_sym(m * a.entries + n * b.entries).eigenvalues
        if w[0] - w[1] >= rel_gap * w[0]:
            return a, b


def _pick_dim(dim, index):
    return 2 + index % 3 if dim is None else dim


def _theorem1(seed, index, dim, word):
    rng = rng_for(seed, index)
    word = random_word(rng, 12) if word is None else word
    a, b = _random_pair(rng, dim)
    rep = verify.rearrangement_gap(word, a, b)
    tol = Defaults.noise_tol * rep.norm_ordered + 1e-14
    return {'gap': rep.gap, 'norm_word': rep.norm_word, 'norm_ordered': rep.norm_ordered,
            'pass': bool(rep.gap >= -tol)}, word, dim


def _certificate(seed, index, dim, word):
    rng = rng_for(seed, index)
    word = random_word(rng, 12) if word is None else word
    a, b = _random_pair(rng, 2)
    cert = verify.certificate_2x2(word, a, b)
    rep = verify.rearrangement_gap(word, a, b)
    scale = max(cert.scale, Defaults.noise_tol)
    consistent = (abs(cert.lambda1 - rep.norm_ordered**2) <= 1e-9 * scale
                  and abs(cert.mu1 - rep.norm_word**2) <= 1e-9 * scale)
    record = cert.to_dict()
    record.update({'gap': rep.gap, 'consistent': bool(consistent),
                   'pass': bool(cert.holds and consistent)})
    return record, word, 2


def _trace2x2(seed, index, dim, word):
    rng = rng_for(seed, index)
    c, d = _random_pair(rng, dim)
    k = int(rng.integers(1, 5))
    ps, qs = rng.dirichlet(np.ones(k)), rng.dirichlet(np.ones(k))
    exps = [x for pair in zip(ps, qs) for x in pair]
    slack = verify.trace_inequality_2x2(c, d, exps, allow_dim3=True, verbose=False)
    trace_cd = float(np.trace(c.entries @ d.entries))
    holds = slack >= -1e-9 * abs(trace_cd)
    return {'k': k, 'slack': slack, 'trace_cd': trace_cd, 'violated': bool(not holds),
            'pass': bool(holds or dim == 3)}, None, dim


def _theorem2(seed, index, dim, word):
    rng = rng_for(seed, index)
    word = _disordered_word(rng, 8) if word is None else word
    a, b = _noncommuting_pair(rng, dim)
    rep = verify.theorem2_third_order(word, a, b)
    eps0 = verify.epsilon0_search(word, a, b)
    ok = (rep.coeff3 > 0 and abs(rep.a3_term) <= 1e-10
          and rep.relative_error <= 0.1 and eps0 >= 2.0**-20)
    return {'coeff3': rep.coeff3, 'numeric_fit': rep.numeric_fit, 'a3_term': rep.a3_term,
            'relative_error': rep.relative_error, 'eps0': eps0,
            'min_sv': commutator_min_sv(a, b), 'pass': bool(ok)}, word, dim


def _lemma1(seed, index, dim, word):
    rng = rng_for(seed, index)
    word = _disordered_word(rng, 6) if word is None else word
    a, b = _separated_pair(rng, dim, word)
    rep = verify.lemma1_projection(word, a, b)
    ok = (rep.threshold > 0 and (rep.order is None or rep.order >= 0.9)
          and (rep.stability is None or rep.stability <= 2.0))
    return {'c1': rep.c1, 'threshold': rep.threshold,
            'order': np.nan if rep.order is None else rep.order,
            'stability': np.nan if rep.stability is None else rep.stability,
            'spread': np.nan if rep.spread is None else rep.spread,
            'max_defect': max(rep.defects), 'pass': bool(ok)}, word, dim


def _lemma2(seed, index, dim, word):
    rng = rng_for(seed, index)
    if word is None:
        m, n = int(rng.integers(1, 5)), int(rng.integers(1, 5))
    else:
        m, n = word.total_m, word.total_n
    commuting = index % 2 == 1
    a, b = _commuting_pair(rng, dim) if commuting else _noncommuting_pair(rng, dim)
    rep = verify.lemma2_gaps(m, n, a, b)
    op_gap = verify.lemma2_operator_gap(m, n, a, b)
    if commuting:
        ok = abs(rep.gap_aba) <= 1e-10 and abs(rep.gap_bab) <= 1e-10
    else:
        ok = rep.gap_aba >= -1e-10 and rep.gap_bab >= -1e-10
        if rep.min_sv > Defaults.commutator_threshold:
            ok = ok and rep.gap_aba > 0 and rep.gap_bab > 0
    ok = ok and op_gap >= -1e-10 * (m + n)
    return {'m': m, 'n': n, 'commuting': commuting, 'gap_aba': rep.gap_aba,
            'gap_bab': rep.gap_bab, 'min_sv': rep.min_sv, 'operator_gap': op_gap,
            'multiplicity': rep.multiplicity, 'pass': bool(ok)}, word, dim


def _classical(seed, index, dim, word):
    rng = rng_for(seed, index)
    dim = _pick_dim(dim, index)
    a, b = _random_pair(rng, dim)
    slacks = verify.classical_suite(a, b, rng=rng)
    rel = [s.slack / max(s.scale, Defaults.noise_tol) for s in slacks]
    worst = int(np.argmin(rel))
    return {'worst': slacks[worst].name, 'min_rel_slack': rel[worst],
            'pass': bool(all(verify.slack_holds(s) for s in slacks))}, None, dim


def _rechtre(seed, index, dim, word):
    rng = rng_for(seed, index)
    a, b = _random_pair(rng, dim)
    slack = verify.recht_re_check([a, b], 2)
    return {'slack': slack, 'pass': bool(slack >= -1e-9)}, None, dim


def _drury(seed, index, dim, word):
    rng = rng_for(seed, index)
    dim = _pick_dim(dim, index)
    word = parse_word(DRURY_WORD) if word is None else word
    a, b = _random_pair(rng, dim)
    rep = verify.rearrangement_gap(word, a, b)
    tol = Defaults.noise_tol * rep.norm_ordered + 1e-14
    return {'gap': rep.gap, 'norm_ordered': rep.norm_ordered,
            'pass': bool(rep.gap >= -tol)}, word, dim


def _cancellation(seed, index, dim, word):
    return {'pass': bool(cancels_to_order(word, 2))}, word, None


SUITES = {'theorem1': _theorem1,
          'certificate': _certificate,
          'trace2x2': _trace2x2,
          'theorem2': _theorem2,
          'lemma1': _lemma1,
          'lemma2': _lemma2,
          'classical': _classical,
          'rechtre': _rechtre,
          'drury': _drury,
          'cancellation': _cancellation}


def _run_instance(task):
    """ Run one suite instance, task is (name, seed, index, dim, word letters). """

    name, seed, index, dim, letters = task
    word = Word.from_letters(letters) if letters is not None else None
    record, word, dim = SUITES[name](seed, index, dim, word)
    out = {'seed': seed, 'index': index,
           'word': format_word(word) if word is not None else None,
           'dim': dim}
    out.update(record)
    return out


def run_suite(name, samples=None, seed=None, dim=None, word=None, threads=1):
    """ Run a verification suite.

    Args:
        name (str): suite name, one of SUITES.
        samples (int): number of instances, if None use DEFAULT_SAMPLES (default None).
        seed (int): run seed, if None use Defaults.seed (default None).
        dim (int): matrix size, if None use DEFAULT_DIM (default None).
        word (Word or str): fixed word for every instance, if None words are
            drawn at random where the suite needs them (default None).
        threads (int): number of worker processes (default 1).

    Returns:
        (SuiteResult): records table sorted by index, overall pass flag and warnings.
    """

    if name not in SUITES:
        raise ValueError('Unknown suite {!r}, choose among {}'.format(name, ', '.join(SUITES)))

    seed = Defaults.seed if seed is None else int(seed)
    dim = DEFAULT_DIM[name] if dim is None else int(dim)
    if isinstance(word, str):
        word = parse_word(word)
    warns = []

    if name == 'trace2x2' and dim not in (2, 3):
        raise ValueError('The trace suite supports sizes 2 and 3 only.')
    if name == 'certificate' and dim not in (None, 2):
        raise ValueError('The certificate suite is defined for 2x2 matrices only.')
    if name in ('theorem2', 'lemma2') and dim is not None and dim % 2 == 1:
        raise ValueError('The {} suite needs a nonsingular commutator, '
                         'impossible in odd size {:d}'.format(name, dim))
    if name == 'theorem2' and word is not None and is_ordered(word):
        raise ValueError('Word {} is ordered, the third order difference vanishes.'.format(word))

    if name == 'cancellation':
        words = [word] if word is not None else enumerate_words(12)
        if samples is not None:
            words = words[:samples]
        tasks = [(name, seed, i, None, w.letters) for i, w in enumerate(words)]
    else:
        samples = DEFAULT_SAMPLES[name] if samples is None else int(samples)
        letters = word.letters if word is not None else None
        tasks = [(name, seed, i, dim, letters) for i in range(samples)]

    logging.info('Running suite {} on {:d} instances'.format(name, len(tasks)))

    records = functions.parallel_map(_run_instance, tasks, threads=threads)
    if len(records) == 0:
        return SuiteResult(pd.DataFrame(columns=['seed', 'index', 'word', 'dim', 'pass']), True, warns)
    table = pd.DataFrame(records).sort_values('index').reset_index(drop=True)
    passed = bool(table['pass'].all())

    if name == 'trace2x2' and dim == 3:
        nviol = int(table['violated'].sum())
        warns.append('Trace inequality run on 3x3 matrices in warning mode: '
                     '{:d} of {:d} instances violated it.'.format(nviol, len(table)))
    if name == 'lemma2' and (table['multiplicity'] > 1).any():
        warns.append('Degenerate top eigenspaces in {:d} instances, gaps minimized '
                     'over a basis only.'.format(int((table['multiplicity'] > 1).sum())))
    if name == 'rechtre' and len(table) > 0:
        logging.log(DEBUG_R, 'Recht-Re slacks: min {:.3e}'.format(table['slack'].min()))

    for w in warns:
        functions.warn(w)

    nfail = int((~table['pass']).sum())
    logging.info('Suite {} {}: {:d} failures out of {:d}'.format(
        name, 'passed' if passed else 'FAILED', nfail, len(table)))

    return SuiteResult(table, passed, warns)


if __name__ == "__main__":

    pass
