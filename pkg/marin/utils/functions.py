"""
Utility functions for MARIN
"""

import os
import sys
import json
import warnings

import logging
DEBUG_R = 15

from concurrent.futures import ProcessPoolExecutor


def sort_len_lex(lista, key=str):
    """ Sort elements of a list by length first, then lexicographically.

    Args:
        lista (list): the list to sort.
        key (function): maps each element to the string to be compared
            (default str).

    Returns:
        (list): the sorted list.
    """

    return sorted(lista, key=lambda x: (len(key(x)), key(x)))


def setup_log(out_path=None, suffix='', debug=False, quiet=False):
    """ Set up logging.

    Args:
        out_path (string): path where the log file will be saved,
            if None log to standard error (default None).
        suffix (string): suffix to add to the log file.
        debug (bool): if True, log at the verbose DEBUG_R level (default False).
        quiet (bool): if True, only log warnings and errors (default False).
    """

    logging.addLevelName(DEBUG_R, 'DEBUG_R')

    level = logging.INFO
    if debug:
        level = DEBUG_R
    elif quiet:
        level = logging.WARNING

    """ Reset previous handlers so that repeated runs in
        the same session can change destination. """

    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()

    fmt = "%(asctime)-15s %(levelname)-8s %(message)s"

    if out_path is not None:
        os.makedirs(out_path, exist_ok=True)
        logname = 'marin_' + str(os.getpid()) + suffix + '.log'
        if not quiet:
            print('Log information will be saved to ' + logname, file=sys.stderr)
        logging.basicConfig(
            level=level,
            filename=os.path.join(
                out_path,
                logname),
            filemode="a+",
            format=fmt)
    else:
        logging.basicConfig(level=level, stream=sys.stderr, format=fmt)

    logging.getLogger('numba').setLevel(logging.WARNING)


def parallel_map(func, tasks, threads=1):
    """ Apply a function to a list of tasks, serially or over a pool of
        worker processes. The output order always follows the input order.

    Args:
        func (function): picklable, module-level function of one argument.
        tasks (list): arguments, one per call.
        threads (int): number of workers, 1 or less runs serially (default 1).

    Returns:
        (list): results in task order.
    """

    tasks = list(tasks)

    if threads is None or threads <= 1 or len(tasks) < 2:
        return [func(t) for t in tasks]

    logging.log(DEBUG_R, 'Dispatching {:d} tasks to {:d} workers'.format(len(tasks), threads))
    chunk = max(1, len(tasks) // (4 * threads))
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, tasks, chunksize=chunk))


def fit_slope(xs, ys):
    """ Least-squares slope of a line through the origin.

    Args:
        xs (list of floats): abscissae.
        ys (list of floats): ordinates.

    Returns:
        (float): slope c minimizing sum (y - c x)^2.
    """

    den = sum(x * x for x in xs)
    if den == 0:
        return 0.0
    return sum(x * y for x, y in zip(xs, ys)) / den


def richardson(values, ratio=2.0, orders=(1, 2)):
    """ Richardson extrapolation of a sequence of estimates
        g(h), g(h/r), g(h/r^2), ... towards h -> 0, removing
        error terms of the given orders one after the other.

    Args:
        values (list of floats): estimates at geometrically decreasing steps.
        ratio (float): step ratio between consecutive estimates (default 2).
        orders (tuple of ints): powers of h to be eliminated in sequence.

    Returns:
        (float): extrapolated value.
    """

    table = list(values)
    for p in orders[:len(values) - 1]:
        fac = ratio**p
        table = [(fac * table[i + 1] - table[i]) / (fac - 1)
                 for i in range(len(table) - 1)]
    return table[-1]


def write_json(obj, path):
    """ Write a JSON document with sorted keys and stable formatting.

    Args:
        obj (dict): JSON-serializable object.
        path (string): output file path.
    """

    dirname = os.path.dirname(os.path.abspath(path))
    os.makedirs(dirname, exist_ok=True)
    with open(path, 'w') as handle:
        json.dump(obj, handle, indent=2, sort_keys=True)
        handle.write('\n')


def read_json(path):
    """ Load a JSON document.

    Args:
        path (string): input file path.

    Returns:
        (dict): the parsed document.
    """

    with open(path, 'r') as handle:
        return json.load(handle)


def warn(message):
    """ Emit a warning both to the log and to the warnings machinery.

    Args:
        message (string): warning text.
    """

    logging.warning(message)
    warnings.warn(message)
