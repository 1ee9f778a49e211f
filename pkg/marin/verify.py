"""
Numerical verifiers for matrix rearrangement inequalities for MARIN

Gaps of the rearrangement inequality, the 2x2 trace/determinant certificate,
the Ando-Hiai-Okubo trace inequality, the near-identity lemmas, the third
order coefficient, and the classical operator inequalities.
"""

import itertools
from math import factorial
from fractions import Fraction
from collections import namedtuple

import logging
DEBUG_R = 15

import numpy as np

from marin.matword import ordered, is_ordered, gram_cycle
from marin.linalg import (SymMatrix, _as_array, _check_same_dim, _eigh, eigen_sym,
                          spectral_norm, matrix_power, eval_word, frac_power,
                          commutator, commutator_min_sv, matrix_digest, rng_for)
from marin.ncpoly import extract_coeffs
from marin.utils.classes import DimensionError, BudgetError
from marin.utils.option import Defaults
import marin.utils.functions as functions


class GapReport:

    """ Outcome of a rearrangement gap evaluation. """

    def __init__(self, word, dim, norm_word, norm_ordered, certified='float_only',
                 inputs_digest=None):
        """ Initialize the report, the gap is norm_ordered - norm_word.

        Args:
            word (Word): the tested word.
            dim (int): matrix size.
            norm_word (float): ||W(A, B)||.
            norm_ordered (float): ||A^m B^n||.
            certified (str): 'float_only' or 'rational_certified' (default 'float_only').
            inputs_digest (str): content hash of A, B (default None).
        """

        if certified not in ('float_only', 'rational_certified'):
            raise ValueError('Unknown certification status {!r}'.format(certified))

        self.word = word
        self.dim = dim
        self.norm_word = norm_word
        self.norm_ordered = norm_ordered
        self.gap = norm_ordered - norm_word
        self.certified = certified
        self.inputs_digest = inputs_digest

    @property
    def scale(self):
        return max(self.norm_word, self.norm_ordered)

    @property
    def is_violation(self):
        """ (bool): True if the gap is below -Defaults.violation_tol times the scale,
            smaller negative gaps are treated as rounding noise. """

        return self.gap < -Defaults.violation_tol * self.scale

    def to_dict(self):
        return {'word': str(self.word),
                'dim': int(self.dim),
                'norm_word': float(self.norm_word),
                'norm_ordered': float(self.norm_ordered),
                'gap': float(self.gap),
                'certified': self.certified,
                'inputs_digest': self.inputs_digest}

    def __repr__(self):
        return 'GapReport(word={!r}, dim={:d}, gap={:.3e}, {})'.format(
            str(self.word), self.dim, self.gap, self.certified)


def rearrangement_gap(word, A, B, certified='float_only'):
    """ Evaluate ||A^m B^n|| - ||W(A, B)|| for a word W.

    Args:
        word (Word): the word.
        A (SymMatrix): first PSD matrix.
        B (SymMatrix): second PSD matrix.
        certified (str): certification status to attach (default 'float_only').

    Returns:
        (GapReport): norms and gap, a negative gap is a violation candidate.
    """

    _check_same_dim(A, B)

    norm_word, _ = spectral_norm(eval_word(word, A, B))
    norm_ordered, _ = spectral_norm(eval_word(ordered(word), A, B))

    return GapReport(word, _as_array(A).shape[0], norm_word, norm_ordered,
                     certified=certified, inputs_digest=matrix_digest(A, B))


class CertificatePair2x2:

    """ Spectra behind the 2x2 argument: lambda_1 >= lambda_2 of
        B^n A^{2m} B^n and mu_1 >= mu_2 of W^T W. """

    def __init__(self, lambdas, mus):
        """ Initialize the pair and derive slacks and the applicable case.

        Args:
            lambdas (tuple of floats): (lambda_1, lambda_2), descending.
            mus (tuple of floats): (mu_1, mu_2), descending.
        """

        self.lambda1, self.lambda2 = float(lambdas[0]), float(lambdas[1])
        self.mu1, self.mu2 = float(mus[0]), float(mus[1])

        self.trace_slack = (self.lambda1 + self.lambda2) - (self.mu1 + self.mu2)

        """ Determinants are products of two eigenvalues bounded by
            max(lambda_1, mu_1), the mismatch is taken relative to its square. """

        self.scale = max(self.lambda1, self.mu1, 0.0)
        if self.scale > 0:
            self.det_mismatch = abs(self.lambda1 * self.lambda2 - self.mu1 * self.mu2) / self.scale**2
        else:
            self.det_mismatch = 0.0

    @property
    def case(self):
        """ (str): branch of the argument that applies:
            'mu1_zero' when W vanishes, 'rank_deficient' when the determinants
            vanish, 'full_rank' otherwise. """

        tol = Defaults.psd_tol * self.scale
        if self.mu1 <= tol:
            return 'mu1_zero'
        if self.mu2 <= tol or self.lambda2 <= tol:
            return 'rank_deficient'
        return 'full_rank'

    @property
    def psd_ok(self):
        return min(self.lambda2, self.mu2) >= -Defaults.psd_tol * self.scale

    @property
    def holds(self):
        """ (bool): trace inequality, determinant equality and mu_1 <= lambda_1,
            all within tolerance. """

        return (self.psd_ok
                and self.trace_slack >= -1e-9 * (self.lambda1 + self.lambda2)
                and self.det_mismatch <= 1e-8
                and self.mu1 <= self.lambda1 * (1 + 1e-9) + Defaults.psd_tol * self.scale)

    def to_dict(self):
        return {'lambda1': self.lambda1, 'lambda2': self.lambda2,
                'mu1': self.mu1, 'mu2': self.mu2,
                'trace_slack': self.trace_slack, 'det_mismatch': self.det_mismatch,
                'case': self.case, 'holds': self.holds}


def certificate_2x2(word, A, B):
    """ Eigenvalues of B^n A^{2m} B^n and of W^T W for 2x2 matrices.

    Args:
        word (Word): the word.
        A (SymMatrix): first 2x2 PSD matrix.
        B (SymMatrix): second 2x2 PSD matrix.

    Returns:
        (CertificatePair2x2): the two spectra with trace slack and determinant mismatch.
    """

    _check_same_dim(A, B)
    if _as_array(A).shape[0] != 2:
        raise DimensionError('The 2x2 certificate requires 2x2 matrices, '
                             'got size {:d}'.format(_as_array(A).shape[0]))

    m, n = word.total_m, word.total_n
    bn = matrix_power(B, n)
    inner = bn @ matrix_power(A, 2 * m) @ bn
    lambdas, _ = _eigh((inner + inner.T) / 2.0)

    w = eval_word(word, A, B)
    gram = w.T @ w
    mus, _ = _eigh((gram + gram.T) / 2.0)

    return CertificatePair2x2(lambdas, mus)


def certificate_exponents(word):
    """ Exponent splitting that turns tr(W^T W), by cyclic permutation,
        into tr(C^{p_1} D^{q_1} ... C^{p_k} D^{q_k}) with C = A^{2m}, D = B^{2n}.

    Args:
        word (Word): word with both letters present.

    Returns:
        (tuple of Fractions): (p_1, q_1, ..., p_k, q_k), each sum equal to 1.
    """

    m, n = word.total_m, word.total_n
    if m == 0 or n == 0:
        raise ValueError('The trace splitting needs both letters in the word.')

    exps = []
    for letter, count in gram_cycle(word):
        exps.append(Fraction(count, 2 * m) if letter == 'A' else Fraction(count, 2 * n))
    return tuple(exps)


def trace_inequality_2x2(C, D, exponents, allow_dim3=False, verbose=True):
    """ Slack of tr(C^{p_1} D^{q_1} ... C^{p_k} D^{q_k}) <= tr(CD).

    Args:
        C (SymMatrix): first PSD matrix.
        D (SymMatrix): second PSD matrix.
        exponents (sequence of floats): (p_1, q_1, ..., p_k, q_k), nonnegative,
            both sums equal to 1.
        allow_dim3 (bool): accept 3x3 matrices, where the inequality may fail,
            warning instead of asserting (default False).
        verbose (bool): emit the dimension 3 warnings (default True).

    Returns:
        (float): tr(CD) - tr(C^{p_1} D^{q_1} ...).
    """

    _check_same_dim(C, D)
    dim = _as_array(C).shape[0]
    if dim != 2 and not (dim == 3 and allow_dim3):
        raise DimensionError('The trace inequality is only guaranteed for 2x2 matrices, '
                             'got size {:d}'.format(dim))

    exponents = list(exponents)
    if len(exponents) < 2 or len(exponents) % 2 != 0:
        raise ValueError('Exponents must come in (p, q) pairs.')
    if any(x < 0 for x in exponents):
        raise ValueError('Exponents must be nonnegative.')
    ps, qs = exponents[0::2], exponents[1::2]
    if abs(float(sum(ps)) - 1.0) > 1e-12 or abs(float(sum(qs)) - 1.0) > 1e-12:
        raise ValueError('Exponent sums must equal 1, found {:.15f} and {:.15f}'.format(
            float(sum(ps)), float(sum(qs))))

    c, d = _as_array(C), _as_array(D)
    product = np.eye(dim)
    for p, q in zip(ps, qs):
        product = product @ frac_power(c, float(p)).entries @ frac_power(d, float(q)).entries

    trace_cd = float(np.trace(c @ d))
    slack = trace_cd - float(np.trace(product))

    if dim == 3 and verbose:
        functions.warn('Trace inequality evaluated on 3x3 matrices, where it can fail.')
        if slack < -1e-9 * abs(trace_cd):
            functions.warn('Trace inequality violated in dimension 3: slack {:.3e}'.format(slack))

    return slack


def power_trace_dominance(cert, k):
    """ Check mu_1^{2^k} + mu_2^{2^k} <= lambda_1^{2^k} + lambda_2^{2^k},
        which follows from the trace and determinant relations by repeated
        squaring and forces mu_1 <= lambda_1 as k grows.

    Args:
        cert (CertificatePair2x2): the 2x2 spectra.
        k (int): number of squarings.

    Returns:
        (float): relative slack, nonnegative when the dominance holds.
    """

    if k < 0:
        raise ValueError('The number of squarings must be nonnegative.')
    if cert.scale <= 0:
        return 0.0

    p = 2**k
    lam = (max(cert.lambda1, 0.0) / cert.scale, max(cert.lambda2, 0.0) / cert.scale)
    mu = (max(cert.mu1, 0.0) / cert.scale, max(cert.mu2, 0.0) / cert.scale)
    rhs = lam[0]**p + lam[1]**p
    lhs = mu[0]**p + mu[1]**p
    return (rhs - lhs) / max(rhs, lhs, np.finfo(float).tiny)


def _top_vectors(word, A, B):
    """ Eigendecomposition of Y = mA + nB. """

    m, n = word.total_m, word.total_n
    return eigen_sym(m * _as_array(A) + n * _as_array(B))


Lemma1Report = namedtuple('Lemma1Report', ['eps', 'defects', 'c1', 'threshold', 'order',
                                           'stability', 'spread'])
Lemma1Report.__doc__ = """ Per-eps projection defects 1 - ||pi v_eps||, the least-squares
    constant c1 of defect ~ c1 * eps, the largest tested eps below which
    defect <= c1 * eps holds on every tested value, the observed log-log
    decay order, the stability max(defect / eps) / c1 of the fitted constant
    and the spread max(defect / eps) / min(defect / eps). The last three are
    None when all defects are rounding noise. """


def lemma1_projection(word, A, B, eps_list=None):
    """ Distance of the maximizing vector of X_eps = W(Id + eps A, Id + eps B)
        from the top eigenspace of Y = mA + nB.

    Args:
        word (Word): the word.
        A (SymMatrix): first PSD matrix.
        B (SymMatrix): second PSD matrix.
        eps_list (list of floats): positive perturbation sizes, sorted descending,
            if None use 2^-4 ... 2^-10 (default None).

    Returns:
        (Lemma1Report): defects and fitted constants.
    """

    _check_same_dim(A, B)
    if eps_list is None:
        eps_list = [2.0**-k for k in range(4, 11)]
    eps_list = sorted((float(e) for e in eps_list), reverse=True)
    if len(eps_list) == 0 or eps_list[-1] <= 0:
        raise ValueError('Perturbation sizes must be positive.')

    A, B = SymMatrix(_as_array(A)), SymMatrix(_as_array(B))
    basis = _top_vectors(word, A, B).top_eigenspace()
    dim = A.dim

    defects = []
    for eps in eps_list:
        if basis.shape[1] == dim:
            defects.append(0.0)
            continue
        x_eps = eval_word(word, A.perturb_identity(eps), B.perturb_identity(eps))
        _, v_eps = spectral_norm(x_eps)
        defects.append(1.0 - float(np.linalg.norm(basis.T @ v_eps)))

    logging.log(DEBUG_R, 'Projection defects: ' + ', '.join('{:.3e}'.format(d) for d in defects))

    clean = [max(d, 0.0) for d in defects]
    c1 = functions.fit_slope(eps_list, clean)

    threshold = 0.0
    for eps, d in sorted(zip(eps_list, clean)):
        if d <= c1 * eps + Defaults.noise_tol:
            threshold = eps
        else:
            break

    order = None
    pts = [(np.log(e), np.log(d)) for e, d in zip(eps_list, clean) if d > Defaults.noise_tol]
    if len(pts) >= 2:
        order = float(np.polyfit([p[0] for p in pts], [p[1] for p in pts], 1)[0])

    """ Stability of the linear constant over the tested range. """

    stability, spread = None, None
    ratios = [d / e for e, d in zip(eps_list, clean) if d > Defaults.noise_tol]
    if len(ratios) > 0 and c1 > 0:
        stability = max(ratios) / c1
        spread = max(ratios) / min(ratios)

    return Lemma1Report(eps_list, defects, c1, threshold, order, stability, spread)


Lemma2Report = namedtuple('Lemma2Report', ['gap_aba', 'gap_bab', 'min_sv', 'multiplicity'])
Lemma2Report.__doc__ = """ Gaps <AABv,v> - <ABAv,v> and <ABBv,v> - <BABv,v> at the top
    eigenvector(s) v of mA + nB, minimized over an orthonormal basis of the
    eigenspace when it is degenerate, and sigma_min(AB - BA). """


def lemma2_gaps(m, n, A, B):
    """ Rearrangement gaps of third order words at the top eigenvectors of mA + nB.

    Args:
        m (int): total power of A, at least 1.
        n (int): total power of B, at least 1.
        A (SymMatrix): first PSD matrix.
        B (SymMatrix): second PSD matrix.

    Returns:
        (Lemma2Report): gap_ABA, gap_BAB, min_sv and the eigenspace multiplicity.
    """

    if m < 1 or n < 1:
        raise ValueError('Both powers must be at least 1.')
    _check_same_dim(A, B)
    a, b = _as_array(A), _as_array(B)

    basis = eigen_sym(m * a + n * b).top_eigenspace()
    if basis.shape[1] > 1:
        functions.warn('Degenerate top eigenspace of mA + nB (multiplicity {:d}), '
                       'gaps are minimized over a basis only.'.format(basis.shape[1]))

    gaps_aba, gaps_bab = [], []
    for i in range(basis.shape[1]):
        v = basis[:, i]
        av, bv = a @ v, b @ v
        abv = a @ bv
        gaps_aba.append(float(abv @ av - (b @ av) @ av))
        gaps_bab.append(float((b @ bv) @ av - abv @ bv))

    return Lemma2Report(min(gaps_aba), min(gaps_bab), commutator_min_sv(A, B), basis.shape[1])


def lemma2_operator_gap(m, n, A, B):
    """ Smallest eigenvalue of (lambda_1 Id - mA)/n - B, lambda_1 being the top
        eigenvalue of mA + nB. The matrix is PSD and singular on the top eigenspace.

    Args:
        m (int): total power of A, at least 1.
        n (int): total power of B, at least 1.
        A (SymMatrix): first PSD matrix.
        B (SymMatrix): second PSD matrix.

    Returns:
        (float): the smallest eigenvalue, zero up to rounding.
    """

    if m < 1 or n < 1:
        raise ValueError('Both powers must be at least 1.')
    _check_same_dim(A, B)
    a, b = _as_array(A), _as_array(B)
    lam1 = eigen_sym(m * a + n * b).lambda_max
    op = (lam1 * np.eye(a.shape[0]) - m * a) / n - b
    return eigen_sym(op).lambda_min


ThirdOrderReport = namedtuple('ThirdOrderReport',
                              ['coeff3', 'numeric_fit', 'a3_term', 'relative_error'])
ThirdOrderReport.__doc__ = """ Third order coefficient of ||Z_eps v||^2 - ||X_eps v||^2 at the
    top eigenvector of mA + nB, its Richardson estimate from finite eps, the
    commutator term (zero at an eigenvector) and the relative disagreement. """


def third_order_terms(word, A, B, v):
    """ The two types of third order contributions at a vector v.

    Args:
        word (Word): the word.
        A (ndarray): first matrix.
        B (ndarray): second matrix.
        v (ndarray): vector.

    Returns:
        (float, float): the a7/a10 lemma term and the a3 commutator term.
    """

    coeffs = extract_coeffs(word)
    m, n = word.total_m, word.total_n
    av, bv = A @ v, B @ v
    abv = A @ bv
    gap_aba = float(abv @ av - (B @ av) @ av)
    gap_bab = float((B @ bv) @ av - abv @ bv)
    lemma_term = 2 * coeffs.a7 * gap_aba + 2 * coeffs.a10 * gap_bab
    a3_term = 2 * coeffs.a3 * float((commutator(A, B) @ v) @ (m * av + n * bv))
    return lemma_term, a3_term


def theorem2_third_order(word, A, B, eps_list=(1e-2, 5e-3, 2.5e-3)):
    """ Exact-coefficient and numerical estimates of the eps^3 coefficient of
        ||Z_eps v_eps||^2 - ||X_eps v_eps||^2.

    Args:
        word (Word): a disordered word.
        A (SymMatrix): first PSD matrix.
        B (SymMatrix): second PSD matrix.
        eps_list (tuple of floats): geometric steps with ratio 2 for the
            Richardson fit (default (1e-2, 5e-3, 2.5e-3)).

    Returns:
        (ThirdOrderReport): coeff3, numeric fit, commutator term and relative error.
    """

    if is_ordered(word):
        raise ValueError('Word {} is ordered: the difference vanishes identically.'.format(word))
    _check_same_dim(A, B)
    A, B = SymMatrix(_as_array(A)), SymMatrix(_as_array(B))
    a, b = A.entries, B.entries

    v = _top_vectors(word, A, B).eigenvectors[:, 0]
    lemma_term, a3_term = third_order_terms(word, a, b, v)
    coeff3 = lemma_term + a3_term

    zword = ordered(word)
    estimates = []
    for eps in eps_list:
        ae, be = A.perturb_identity(eps), B.perturb_identity(eps)
        x_eps = eval_word(word, ae, be)
        z_eps = eval_word(zword, ae, be)
        _, v_eps = spectral_norm(x_eps)
        zv, xv = z_eps @ v_eps, x_eps @ v_eps
        estimates.append(float(zv @ zv - xv @ xv) / eps**3)

    ratio = eps_list[0] / eps_list[1] if len(eps_list) > 1 else 2.0
    numeric_fit = functions.richardson(estimates, ratio, (1, 2))

    scale = max(abs(coeff3), abs(numeric_fit))
    rel = abs(numeric_fit - coeff3) / scale if scale > 0 else 0.0

    logging.log(DEBUG_R, 'Third order for {}: coeff3 {:.6e}, fit {:.6e}, a3 term {:.3e}'.format(
        word, coeff3, numeric_fit, a3_term))

    return ThirdOrderReport(coeff3, numeric_fit, a3_term, rel)


def epsilon0_search(word, A, B, kmax=40, tol=1e-12):
    """ Largest eps on the grid 2^-k, 1 <= k <= kmax, such that the gap of
        W(Id + eps' A, Id + eps' B) is >= -tol for every grid value eps' <= eps.

    Args:
        word (Word): the word.
        A (SymMatrix): first PSD matrix.
        B (SymMatrix): second PSD matrix.
        kmax (int): finest grid exponent (default 40).
        tol (float): absolute tolerance on the gap (default 1e-12).

    Returns:
        (float): eps0, 0 if even the finest grid point fails.
    """

    _check_same_dim(A, B)
    A, B = SymMatrix(_as_array(A)), SymMatrix(_as_array(B))

    eps0 = 0.0
    for k in range(kmax, 0, -1):
        eps = 2.0**-k
        report = rearrangement_gap(word, A.perturb_identity(eps), B.perturb_identity(eps))
        if report.gap < -tol:
            logging.log(DEBUG_R, 'Gap {:.3e} at eps = 2^-{:d}'.format(report.gap, k))
            break
        eps0 = eps
    return eps0


class ClassicalConfig:

    """ Grids and sample counts for the classical inequalities. """

    def __init__(self, s_grid=None, furuta_n=(2, 3, 4, 5), alpha_grid=None, samples=1):
        """ Initialize the configuration.

        Args:
            s_grid (list of floats): Cordes exponents in [0, 1], if None
                11 evenly spaced points (default None).
            furuta_n (tuple of ints): Furuta exponents (default (2, 3, 4, 5)).
            alpha_grid (list of floats): Heinz-Kato exponents in [0, 1], if None
                5 evenly spaced points (default None).
            samples (int): random X, T, x, y draws per call (default 1).
        """

        self.s_grid = list(np.linspace(0, 1, 11)) if s_grid is None else list(s_grid)
        self.furuta_n = tuple(furuta_n)
        self.alpha_grid = list(np.linspace(0, 1, 5)) if alpha_grid is None else list(alpha_grid)
        self.samples = int(samples)


Slack = namedtuple('Slack', ['name', 'param', 'slack', 'scale'])
Slack.__doc__ = """ rhs - lhs of a classical inequality at one parameter value,
    scale being the size of the right-hand side. """


def slack_holds(item, rtol=1e-9):
    return item.slack >= -rtol * max(item.scale, Defaults.noise_tol)


def classical_suite(A, B, config=None, rng=None):
    """ Slacks of the Heinz-Loewner, Cordes, Furuta, McIntosh and Heinz-Kato
        inequalities. Heinz-Kato uses A = (T^T T)^{1/2}, B = (T T^T)^{1/2} for a
        random T, which turns its premises into equalities.

    Args:
        A (SymMatrix): first PSD matrix.
        B (SymMatrix): second PSD matrix.
        config (ClassicalConfig): grids and sample counts, if None use
            the defaults (default None).
        rng (numpy.random.Generator): random numbers generator for X, T, x, y,
            if None seed from Defaults.seed (default None).

    Returns:
        (list of Slack): one entry per inequality and parameter.
    """

    _check_same_dim(A, B)
    config = ClassicalConfig() if config is None else config
    rng = rng_for(Defaults.seed) if rng is None else rng

    A, B = SymMatrix(_as_array(A)), SymMatrix(_as_array(B))
    a, b = A.entries, B.entries
    dim = A.dim
    out = []

    """ Heinz-Loewner: ||ABA|| <= ||AAB||. """

    rhs, _ = spectral_norm(a @ a @ b)
    lhs, _ = spectral_norm(a @ b @ a)
    out.append(Slack('heinz_loewner', None, rhs - lhs, rhs))

    """ Cordes: ||A^s B^s|| <= ||AB||^s. """

    nab, _ = spectral_norm(a @ b)
    for s in config.s_grid:
        lhs, _ = spectral_norm(frac_power(A, s).entries @ frac_power(B, s).entries)
        rhs = nab**s
        out.append(Slack('cordes', float(s), rhs - lhs, rhs))

    """ Furuta: ||AB||^n <= ||A^n B^n||. """

    for n in config.furuta_n:
        rhs, _ = spectral_norm(matrix_power(a, n) @ matrix_power(b, n))
        lhs = nab**n
        out.append(Slack('furuta', int(n), rhs - lhs, rhs))

    for _ in range(config.samples):

        """ McIntosh: ||AXB|| <= ||A^2 X||^{1/2} ||X B^2||^{1/2}. """

        x = rng.standard_normal((dim, dim))
        lhs, _ = spectral_norm(a @ x @ b)
        r1, _ = spectral_norm(a @ a @ x)
        r2, _ = spectral_norm(x @ b @ b)
        rhs = np.sqrt(r1 * r2)
        out.append(Slack('mcintosh', None, rhs - lhs, rhs))

        """ Heinz-Kato: |<Tx, y>| <= ||A^alpha x|| ||B^{1 - alpha} y||. """

        t = rng.standard_normal((dim, dim))
        ta = SymMatrix(t.T @ t)
        tb = SymMatrix(t @ t.T)
        ha, hb = frac_power(ta, 0.5), frac_power(tb, 0.5)
        xv, yv = rng.standard_normal(dim), rng.standard_normal(dim)
        lhs = abs(float((t @ xv) @ yv))
        for alpha in config.alpha_grid:
            rhs = (float(np.linalg.norm(frac_power(ha, alpha).entries @ xv))
                   * float(np.linalg.norm(frac_power(hb, 1 - alpha).entries @ yv)))
            out.append(Slack('heinz_kato', float(alpha), rhs - lhs, rhs))

    return out


def recht_re_check(matrices, m, budget=10**6):
    """ Slack of the Recht-Re inequality
        (1/n^m) ||sum over all index tuples|| >= ((n-m)!/n!) ||sum over distinct tuples||,
        both sums enumerated explicitly.

    Args:
        matrices (list of SymMatrix): n PSD matrices of the same size.
        m (int): product length, at most n.
        budget (int): maximum number of index tuples n^m (default 10^6).

    Returns:
        (float): left-hand side minus right-hand side.
    """

    n = len(matrices)
    if n < 1 or m < 1:
        raise ValueError('Need at least one matrix and a positive product length.')
    if m > n:
        raise ValueError('Product length {:d} exceeds the number of matrices {:d}'.format(m, n))
    if n**m > budget:
        raise BudgetError('Enumeration of {:d}^{:d} index tuples exceeds the budget of {:d}'.format(
            n, m, budget))

    _check_same_dim(*matrices)
    arrs = [_as_array(M) for M in matrices]
    dim = arrs[0].shape[0]

    total = np.zeros((dim, dim))
    distinct = np.zeros((dim, dim))
    for idx in itertools.product(range(n), repeat=m):
        prod = arrs[idx[0]]
        for j in idx[1:]:
            prod = prod @ arrs[j]
        total += prod
        if len(set(idx)) == m:
            distinct += prod

    lhs = spectral_norm(total)[0] / n**m
    rhs = spectral_norm(distinct)[0] * factorial(n - m) / factorial(n)

    closed, _ = spectral_norm(matrix_power(sum(arrs) / n, m))
    if abs(closed - lhs) > 1e-9 * max(closed, 1.0):
        functions.warn('Recht-Re enumeration disagrees with the closed form: '
                       '{:.12e} vs {:.12e}'.format(lhs, closed))

    return lhs - rhs


if __name__ == "__main__":

    pass
