"""
MARIN (MAtrix Rearrangement INequalities)
"""

import time
import psutil

import logging
DEBUG_R = 15

from marin.matword import parse_word
from marin.ncpoly import expand_word, extract_coeffs
from marin.suites import run_suite
from marin.search import SearchConfig, run_search, sweep_words, save_archive


def _closing_log(start_time):
    """ Log the total runtime and memory usage. """

    logging.info(
        'Total time of the operation: {:.3f} seconds'.format(
            (time.time() - start_time)))
    logging.info(psutil.virtual_memory())


def verify_suite(name, **kwargs):
    """ Wrapper function to run a verification suite and log it.

    Args:
        name (str): suite name.
        kwargs (dict): keyword arguments for suites.run_suite.

    Returns:
        (SuiteResult): records table, pass flag and warnings.
    """

    start_time = time.time()

    logging.info('Starting a new verification run: {}'.format(name))

    result = run_suite(name, **kwargs)

    logging.info('=========== Verification Results ===========')
    logging.info('Suite {}: {:d} instances, {}'.format(
        name, len(result.table), 'all passed' if result.passed else 'FAILURES found'))
    _closing_log(start_time)

    return result


def search_counterexample(word, archive=None, **kwargs):
    """ Wrapper function to set up and run a counterexample search.

    Args:
        word (Word or str): the word.
        archive (string): if not None and the best violation is certified,
            save the counterexample archive here (default None).
        kwargs (dict): keyword arguments for search.SearchConfig.

    Returns:
        (SearchResult): the best candidate.
    """

    start_time = time.time()

    config = SearchConfig(word, **kwargs)

    logging.info('Starting a new search run')

    result = run_search(config)

    if archive is not None and result.certified:
        save_archive(result, archive)

    logging.info('=========== Search Results ===========')
    logging.info('Best violation: {:.6e} (restart {:d}), certified: {}'.format(
        result.best_violation, result.restart_index, result.certified))
    _closing_log(start_time)

    return result


def expand(word, order=2):
    """ Wrapper function to expand a word around the identity.

    Args:
        word (Word or str): the word.
        order (int): truncation order (default 2).

    Returns:
        (tuple (NcPolynomial, Coefficients)): the expansion and, for order >= 3,
            the coefficients a1 ... a12 (None otherwise).
    """

    word = parse_word(word) if isinstance(word, str) else word
    poly = expand_word(word, order)
    coeffs = extract_coeffs(word) if order >= 3 else None
    logging.log(DEBUG_R, 'Expansion of {} to order {:d}: {:d} monomials'.format(word, order, len(poly)))
    return poly, coeffs


def sweep(max_length, dim, **kwargs):
    """ Wrapper function to sweep all words up to a length.

    Args:
        max_length (int): longest word.
        dim (int): matrix size.
        kwargs (dict): keyword arguments for search.sweep_words.

    Returns:
        (pandas.DataFrame): labels per word.
    """

    start_time = time.time()

    logging.info('Starting a new sweep of words up to length {:d} in dimension {:d}'.format(
        max_length, dim))

    table = sweep_words(max_length, dim, **kwargs)

    logging.info('=========== Sweep Results ===========')
    for label, count in table['label'].value_counts().sort_index().items():
        logging.info('{}: {:d}'.format(label, int(count)))
    _closing_log(start_time)

    return table


if __name__ == "__main__":

    pass
