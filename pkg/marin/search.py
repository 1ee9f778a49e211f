"""
Counterexample search for MARIN

Randomly restarted maximization of the rearrangement violation over
Gram-factor parameterized PSD pairs, and exact certification of the
violations found.
"""

import math
from fractions import Fraction

import logging
DEBUG_R = 15

import numpy as np
import pandas as pd

from marin.matword import parse_word, format_word, ordered, is_ordered, enumerate_words
from marin.linalg import SymMatrix, _eigh, spectral_norm, eval_word, rng_for, matrix_digest
from marin.verify import rearrangement_gap
from marin.optim.nelder_mead import _nelder_mead
from marin.optim.ascent import _finite_diff_ascent
from marin.optim.tpe import _optuna_tpe
from marin.utils.option import Defaults
import marin.utils.functions as functions

METHODS = ('nelder_mead', 'finite_diff_ascent', 'tpe')


class SearchConfig:

    """ Parameters of a counterexample search. """

    def __init__(self, word, dim=3, restarts=None, max_iters=None, factor_rank=None,
                 seed=None, method='nelder_mead', step=0.1, shrink=0.5, certify=False,
                 certify_k=None, certify_k_max=None, threads=None):
        """ Initialize and validate the configuration.

        Args:
            word (Word or str): the word to search a violation for.
            dim (int): matrix size, at least 2 (default 3).
            restarts (int): number of independent restarts, if None
                use Defaults.restarts (default None).
            max_iters (int): iterations per restart, if None use
                Defaults.max_iters (default None).
            factor_rank (int): columns of the Gram factors, between 1 and dim,
                if None use dim (default None).
            seed (int): run seed, if None use Defaults.seed (default None).
            method (str): 'nelder_mead', 'finite_diff_ascent' or 'tpe'
                (default 'nelder_mead').
            step (float): initial simplex edge or line search step (default 0.1).
            shrink (float): simplex shrink or backtracking factor (default 0.5).
            certify (bool): attempt exact certification of the best violation
                (default False).
            certify_k (int): first power-trace exponent, if None use
                Defaults.certify_k (default None).
            certify_k_max (int): largest power-trace exponent, if None use
                Defaults.certify_k_max (default None).
            threads (int): number of worker processes, if None use
                Defaults.threads (default None).
        """

        self.word = parse_word(word) if isinstance(word, str) else word
        self.dim = int(dim)
        self.restarts = Defaults.restarts if restarts is None else int(restarts)
        self.max_iters = Defaults.max_iters if max_iters is None else int(max_iters)
        self.factor_rank = self.dim if factor_rank is None else int(factor_rank)
        self.seed = Defaults.seed if seed is None else int(seed)
        self.method = method
        self.step = float(step)
        self.shrink = float(shrink)
        self.certify = bool(certify)
        self.certify_k = Defaults.certify_k if certify_k is None else int(certify_k)
        self.certify_k_max = Defaults.certify_k_max if certify_k_max is None else int(certify_k_max)
        self.threads = Defaults.threads if threads is None else int(threads)

        if self.dim < 2:
            raise ValueError('Search dimension must be at least 2.')
        if self.restarts < 1:
            raise ValueError('At least one restart is needed.')
        if self.max_iters < 1:
            raise ValueError('At least one iteration is needed.')
        if not 1 <= self.factor_rank <= self.dim:
            raise ValueError('Factor rank must be between 1 and {:d}'.format(self.dim))
        if self.method not in METHODS:
            raise ValueError('Unknown method {!r}, choose among {}'.format(method, ', '.join(METHODS)))
        if not 0 < self.shrink < 1 or self.step <= 0:
            raise ValueError('Step must be positive and shrink between 0 and 1.')
        if self.certify_k < 0 or self.certify_k_max < self.certify_k:
            raise ValueError('Invalid certification exponents {:d}, {:d}'.format(
                self.certify_k, self.certify_k_max))

    @property
    def size(self):
        """ (int): number of free parameters, two dim x r factors. """

        return 2 * self.dim * self.factor_rank

    def to_dict(self):
        return {'word': format_word(self.word), 'dim': self.dim, 'restarts': self.restarts,
                'max_iters': self.max_iters, 'factor_rank': self.factor_rank,
                'seed': self.seed, 'method': self.method, 'step': self.step,
                'shrink': self.shrink, 'certify': self.certify,
                'certify_k': self.certify_k, 'certify_k_max': self.certify_k_max}

    @classmethod
    def from_dict(cls, data):
        return cls(**{k: v for k, v in data.items() if k != 'threads'})


def _normalized_gram(factor):
    """ G G^T scaled to unit spectral norm, zero stays zero. """

    gram = factor @ factor.T
    gram = (gram + gram.T) / 2.0
    w, _ = _eigh(gram)
    return gram / w[0] if w[0] > 0 else gram


def objective(word, G, H):
    """ Violation of the rearrangement inequality at A = G G^T, B = H H^T,
        both normalized to unit spectral norm.

    Args:
        word (Word): the word.
        G (ndarray): dim x r factor of A.
        H (ndarray): dim x r factor of B.

    Returns:
        (float): ||W(A, B)|| - ||A^m B^n||, positive for a violation.
    """

    a, b = _normalized_gram(np.asarray(G, dtype=np.float64)), _normalized_gram(np.asarray(H, dtype=np.float64))
    norm_word, _ = spectral_norm(eval_word(word, a, b))
    norm_ordered, _ = spectral_norm(eval_word(ordered(word), a, b))
    return norm_word - norm_ordered


def _split(x, dim, rank):
    """ Split a parameter vector into the two Gram factors. """

    half = dim * rank
    return x[:half].reshape(dim, rank), x[half:].reshape(dim, rank)


def _restart(task):
    """ One independent maximization, task is (config, restart index). """

    config, index = task
    rng = rng_for(config.seed, index)
    x0 = rng.standard_normal(config.size)

    def _value(x):
        g, h = _split(x, config.dim, config.factor_rank)
        return objective(config.word, g, h)

    if config.method == 'nelder_mead':
        x, fx, iters, _ = _nelder_mead(lambda x: -_value(x), x0, step=config.step,
                                       maxiter=config.max_iters, shrink=config.shrink)
        fx = -fx
    elif config.method == 'finite_diff_ascent':
        x, fx, iters, _ = _finite_diff_ascent(_value, x0, step=config.step,
                                              shrink=config.shrink, maxiter=config.max_iters)
    else:
        x, fx, iters, _ = _optuna_tpe(_value, config.size, n_candidates=config.max_iters,
                                      seed=int(rng.integers(2**31 - 1)))

    logging.log(DEBUG_R, 'Restart {:d}: best violation {:.6e} after {:d} iterations'.format(
        index, fx, iters))

    return {'index': index, 'value': float(fx), 'x': x, 'iterations': int(iters)}


class Certificate:

    """ Exact comparison between a Rayleigh lower bound on ||W||^2 and a
        power-trace upper bound on ||A^m B^n||^2, in integer arithmetic on
        the dyadic matrices scaled by 2^scale_exponent. """

    def __init__(self, k, issued, reason, scale_exponent=0, rayleigh_num=None,
                 rayleigh_den=None, power_trace=None, pivot=None):
        self.k = k
        self.issued = issued
        self.reason = reason
        self.scale_exponent = scale_exponent
        self.rayleigh_num = rayleigh_num
        self.rayleigh_den = rayleigh_den
        self.power_trace = power_trace
        self.pivot = pivot

    @property
    def log_lower_bound(self):
        """ (float): log of the Rayleigh quotient of the scaled W^T W. """

        if not self.rayleigh_num or not self.rayleigh_den:
            return -math.inf
        return math.log(self.rayleigh_num) - math.log(self.rayleigh_den)

    @property
    def log_upper_bound(self):
        """ (float): log of tr(S_o^{2^k})^{2^-k} of the scaled S_o. """

        if not self.power_trace:
            return -math.inf
        return math.log(self.power_trace) / 2**self.k

    def to_dict(self):
        return {'k': self.k, 'issued': self.issued, 'reason': self.reason,
                'scale_exponent': self.scale_exponent,
                'rayleigh_num': None if self.rayleigh_num is None else str(self.rayleigh_num),
                'rayleigh_den': None if self.rayleigh_den is None else str(self.rayleigh_den),
                'power_trace': None if self.power_trace is None else str(self.power_trace),
                'pivot': self.pivot}

    def __repr__(self):
        return 'Certificate(k={:d}, issued={}, reason={!r})'.format(self.k, self.issued, self.reason)


def _dyadic_integers(*arrays):
    """ Exact integer versions of float arrays under a common power of two.

    Args:
        arrays (ndarray): float arrays.

    Returns:
        (int, list of ndarray): exponent e and the object arrays 2^e * array.
    """

    fracs = [[Fraction(float(x)) for x in np.asarray(arr).ravel()] for arr in arrays]
    den = max([f.denominator for fs in fracs for f in fs] + [1])
    e = den.bit_length() - 1
    out = []
    for arr, fs in zip(arrays, fracs):
        ints = [f.numerator * (den // f.denominator) for f in fs]
        out.append(np.array(ints, dtype=object).reshape(np.asarray(arr).shape))
    return e, out


def _int_power(mat, k):
    """ Integer matrix power by repeated squaring on object arrays. """

    result = np.identity(mat.shape[0], dtype=np.int64).astype(object)
    base = mat
    while k > 0:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def exact_psd_check(mat):
    """ Exact PSD test of a symmetric integer (or rational) matrix by
        LDL^T elimination without pivoting: every pivot must be nonnegative
        and a zero pivot must come with a zero row.

    Args:
        mat (ndarray): symmetric object array of ints or Fractions.

    Returns:
        (tuple (bool, dict)): True if PSD, and the failing pivot
            {'index', 'value'} otherwise (None when PSD).
    """

    n = mat.shape[0]
    work = [[Fraction(mat[i, j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        d = work[i][i]
        if d < 0:
            return False, {'index': i, 'value': str(d)}
        if d == 0:
            for j in range(i + 1, n):
                if work[i][j] != 0:
                    return False, {'index': i, 'value': '0', 'offdiag': j}
            continue
        for r in range(i + 1, n):
            f = work[r][i] / d
            if f == 0:
                continue
            for c in range(i + 1, n):
                work[r][c] -= f * work[i][c]
    return True, None


def certify(word, A, B, k=None, vector=None):
    """ Exact certification that ||W(A, B)|| > ||A^m B^n||.
        The float entries of A and B are taken as exact dyadic rationals.
        The Rayleigh quotient p/q of S_w = W^T W at the rationalized float
        maximizer is compared with T = tr(S_o^{2^k}), S_o = B^n A^{2m} B^n,
        through p^{2^k} > q^{2^k} T. Refusal is a normal outcome.

    Args:
        word (Word): the word.
        A (SymMatrix): first matrix.
        B (SymMatrix): second matrix.
        k (int): power-trace exponent, if None use Defaults.certify_k (default None).
        vector (ndarray): trial vector for the Rayleigh quotient, if None the
            float maximizer of ||W v|| (default None).

    Returns:
        (Certificate): issued or refused, with the exact data.
    """

    k = Defaults.certify_k if k is None else int(k)
    a, b = np.asarray(A, dtype=np.float64), np.asarray(B, dtype=np.float64)

    e, (ai, bi) = _dyadic_integers(a, b)

    """ Exact PSD pre-check. """

    for name, mat in (('A', ai), ('B', bi)):
        ok, pivot = exact_psd_check(mat)
        if not ok:
            pivot['matrix'] = name
            logging.log(DEBUG_R, 'Exact PSD check failed for {}: pivot {}'.format(name, pivot))
            return Certificate(k, False, 'not_psd', scale_exponent=e, pivot=pivot)

    """ Exact Gram matrices of the word and of its ordering. """

    m, n = word.total_m, word.total_n
    w = _int_power(ai if word.runs[0][0] == 'A' else bi, word.runs[0][1])
    for letter, count in word.runs[1:]:
        w = w @ _int_power(ai if letter == 'A' else bi, count)
    s_w = w.T @ w
    bn = _int_power(bi, n)
    s_o = bn @ _int_power(ai, 2 * m) @ bn

    """ Rayleigh lower bound. """

    if vector is None:
        _, vector = spectral_norm(eval_word(word, a, b))
    _, (xi,) = _dyadic_integers(np.asarray(vector, dtype=np.float64))
    p = int(xi @ (s_w @ xi))
    q = int(xi @ xi)
    if q == 0 or p <= 0:
        return Certificate(k, False, 'no_violation', scale_exponent=e,
                           rayleigh_num=p, rayleigh_den=q)

    """ Power-trace upper bound. """

    s_pow = s_o
    for _ in range(k):
        s_pow = s_pow @ s_pow
    trace = int(sum(s_pow[i, i] for i in range(s_pow.shape[0])))

    power = 2**k
    issued = p**power > q**power * trace

    return Certificate(k, bool(issued), 'separated' if issued else 'bounds_overlap',
                       scale_exponent=e, rayleigh_num=p, rayleigh_den=q, power_trace=trace)


def certify_escalating(word, A, B, k_start=None, k_max=None):
    """ Run certify with k = k_start, k_start + 1, ... until a certificate
        is issued, the PSD pre-check fails or k_max is reached.

    Args:
        word (Word): the word.
        A (SymMatrix): first matrix.
        B (SymMatrix): second matrix.
        k_start (int): first exponent, if None use Defaults.certify_k (default None).
        k_max (int): last exponent, if None use Defaults.certify_k_max (default None).

    Returns:
        (Certificate): the last attempt.
    """

    k_start = Defaults.certify_k if k_start is None else int(k_start)
    k_max = Defaults.certify_k_max if k_max is None else int(k_max)

    _, vector = spectral_norm(eval_word(word, A, B))
    cert = None
    for k in range(k_start, k_max + 1):
        cert = certify(word, A, B, k=k, vector=vector)
        logging.log(DEBUG_R, 'Certification at k = {:d}: {}'.format(k, cert.reason))
        if cert.issued or cert.reason in ('not_psd', 'no_violation'):
            break
    return cert


class SearchResult:

    """ Best candidate found by a search. """

    def __init__(self, config, best_violation, A, B, restart_index, iterations_used,
                 trace, certificate=None):
        self.config = config
        self.best_violation = best_violation
        self.A = A
        self.B = B
        self.restart_index = restart_index
        self.iterations_used = iterations_used
        self.trace = trace
        self.certificate = certificate

    @property
    def seed(self):
        return self.config.seed

    @property
    def certified(self):
        return self.certificate is not None and self.certificate.issued

    def to_dict(self):
        return {'word': format_word(self.config.word),
                'dim': self.config.dim,
                'best_violation': self.best_violation,
                'restart_index': self.restart_index,
                'iterations_used': self.iterations_used,
                'certified': self.certified,
                'certificate': None if self.certificate is None else self.certificate.to_dict(),
                'trace': list(self.trace),
                'seed': self.seed,
                'config': self.config.to_dict(),
                'A': self.A.to_dict(),
                'B': self.B.to_dict(),
                'inputs_digest': matrix_digest(self.A, self.B)}

    def __repr__(self):
        return 'SearchResult(word={!r}, dim={:d}, best_violation={:.3e}, certified={})'.format(
            format_word(self.config.word), self.config.dim, self.best_violation, self.certified)


def run_search(config):
    """ Independent restarts from SeedSequence([seed, i]), best result kept,
        ties going to the lowest restart index.

    Args:
        config (SearchConfig): the search parameters.

    Returns:
        (SearchResult): the best candidate.
    """

    logging.info('Searching {} in dimension {:d} with {:d} restarts ({})'.format(
        format_word(config.word), config.dim, config.restarts, config.method))

    tasks = [(config, i) for i in range(config.restarts)]
    outs = functions.parallel_map(_restart, tasks, threads=config.threads)
    outs = sorted(outs, key=lambda x: x['index'])

    best = outs[0]
    for out in outs[1:]:
        if out['value'] > best['value']:
            best = out

    g, h = _split(best['x'], config.dim, config.factor_rank)
    A, B = SymMatrix(_normalized_gram(g)), SymMatrix(_normalized_gram(h))

    if config.dim == 2 and best['value'] > Defaults.noise_tol:
        functions.warn('Violation {:.3e} found for 2x2 matrices, '
                       'above rounding level.'.format(best['value']))

    cert = None
    if config.certify and best['value'] > 0:
        cert = certify_escalating(config.word, A, B, config.certify_k, config.certify_k_max)
        logging.info('Certification {}: {}'.format('issued' if cert.issued else 'refused', cert.reason))

    logging.info('Best violation {:.6e} at restart {:d}'.format(best['value'], best['index']))

    return SearchResult(config, best['value'], A, B, best['index'], best['iterations'],
                        [o['value'] for o in outs], cert)


def sweep_words(max_length, dim, budget=None, restarts=8, max_iters=None, seed=None,
                method='nelder_mead', certify=False, threads=None):
    """ Search every canonical word up to a length and label it.

    Args:
        max_length (int): longest word, at most 14.
        dim (int): matrix size.
        budget (int): total number of restarts allowed over the sweep,
            words beyond it are labelled 'skipped', if None no limit (default None).
        restarts (int): restarts per word (default 8).
        max_iters (int): iterations per restart, if None use Defaults.max_iters
            (default None).
        seed (int): run seed, if None use Defaults.seed (default None).
        method (str): search method (default 'nelder_mead').
        certify (bool): attempt exact certification of violations (default False).
        threads (int): number of worker processes (default None).

    Returns:
        (pandas.DataFrame): one row per word, sorted by length then letters,
            with label in {violated_certified, violated_float,
            no_violation_found, skipped}.
    """

    if max_length > 14:
        raise ValueError('Sweeps are limited to words of length 14.')

    rows = []
    used = 0
    for word in enumerate_words(max_length):

        row = {'word': format_word(word), 'letters': word.letters, 'length': len(word),
               'best_violation': np.nan, 'restart_index': -1, 'certified': False}

        if is_ordered(word):
            row.update({'label': 'no_violation_found', 'best_violation': 0.0})
            rows.append(row)
            continue

        if budget is not None and used + restarts > budget:
            row['label'] = 'skipped'
            rows.append(row)
            continue

        config = SearchConfig(word, dim=dim, restarts=restarts, max_iters=max_iters,
                              seed=seed, method=method, certify=certify, threads=threads)
        res = run_search(config)
        used += restarts

        if res.certified:
            label = 'violated_certified'
        elif res.best_violation > Defaults.violation_tol:
            label = 'violated_float'
        else:
            label = 'no_violation_found'

        row.update({'label': label, 'best_violation': res.best_violation,
                    'restart_index': res.restart_index, 'certified': res.certified})
        rows.append(row)

    nskip = sum(r['label'] == 'skipped' for r in rows)
    if nskip > 0:
        functions.warn('Budget exhausted, {:d} words skipped.'.format(nskip))

    return pd.DataFrame(rows, columns=['word', 'letters', 'length', 'label', 'best_violation',
                                       'restart_index', 'certified'])


def save_archive(result, path):
    """ Save a counterexample archive.

    Args:
        result (SearchResult): the search result.
        path (string): output JSON file.
    """

    report = rearrangement_gap(result.config.word, result.A, result.B)
    archive = {'schema': 1,
               'word': format_word(result.config.word),
               'dim': result.config.dim,
               'A': result.A.to_dict(),
               'B': result.B.to_dict(),
               'float_gap': report.gap,
               'certified': result.certified,
               'certificate': None if result.certificate is None else result.certificate.to_dict(),
               'seed': result.seed,
               'config': result.config.to_dict()}
    functions.write_json(archive, path)
    logging.info('Archive saved to {}'.format(path))


def load_archive(path):
    """ Load a counterexample archive.

    Args:
        path (string): input JSON file.

    Returns:
        (dict): the archive with 'word' as Word and 'A', 'B' as SymMatrix.
    """

    data = functions.read_json(path)
    data['word'] = parse_word(data['word'])
    data['A'] = SymMatrix.from_dict(data['A'])
    data['B'] = SymMatrix.from_dict(data['B'])
    return data


def recheck_archive(path):
    """ Re-verify an archived counterexample: the gap is recomputed and must
        match the stored one, and a stored certificate must be reissued.

    Args:
        path (string): input JSON file.

    Returns:
        (tuple (GapReport, bool)): the recomputed gap and whether the
            archive is confirmed.
    """

    data = load_archive(path)
    report = rearrangement_gap(data['word'], data['A'], data['B'])
    ok = abs(report.gap - data['float_gap']) <= 1e-12 * max(report.scale, 1.0)
    ok = ok and report.gap < 0

    if data.get('certified'):
        k = data['certificate']['k'] if data.get('certificate') else Defaults.certify_k
        cert = certify(data['word'], data['A'], data['B'], k=k)
        ok = ok and cert.issued
        if cert.issued:
            report.certified = 'rational_certified'

    logging.info('Archive {} {}'.format(path, 'confirmed' if ok else 'NOT confirmed'))
    return report, bool(ok)


if __name__ == "__main__":

    pass
