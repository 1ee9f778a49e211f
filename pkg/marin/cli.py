"""
Command line interface for MARIN

Subcommands verify, search, expand and sweep. Exit codes: 0 when the run
completed and its assertions held, 1 when an assertion failed, 2 on usage
errors, 3 on numerical failure of the eigensolver.
"""

import sys
import json
import hashlib
import argparse
from datetime import datetime, timezone

import logging
DEBUG_R = 15

from marin._version import __version__
from marin.matword import parse_word, format_word
from marin.ncpoly import format_poly
from marin.suites import SUITES
from marin.search import METHODS
from marin.main import verify_suite, search_counterexample, expand, sweep
from marin.utils.classes import WordSyntaxError, DimensionError, ConvergenceError, BudgetError
import marin.utils.functions as functions

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

""" Flags that only choose where output goes, left out of the config echo. """

_OUTPUT_FLAGS = ('threads', 'json', 'csv', 'quiet', 'log_dir', 'debug', 'func', 'subcommand')


def _now():
    return datetime.now(timezone.utc).isoformat(timespec='seconds')


def _digest(text):
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


class RunManifest:

    """ Provenance of a run, embedded in every JSON report. """

    def __init__(self, subcommand, args):
        """ Start a manifest from the parsed arguments.

        Args:
            subcommand (str): the subcommand name.
            args (argparse.Namespace): parsed command line arguments.
        """

        self.version = __version__
        self.subcommand = subcommand
        self.config = {k: v for k, v in sorted(vars(args).items())
                       if k not in _OUTPUT_FLAGS}
        self.seed = args.seed
        self.started = _now()
        self.finished = None
        self.digests = {}

    def add_digest(self, name, value):
        self.digests[name] = value

    def close(self):
        self.finished = _now()

    def to_dict(self):
        return {'schema': SCHEMA_VERSION,
                'tool': 'marin',
                'version': self.version,
                'subcommand': self.subcommand,
                'config': self.config,
                'seed': self.seed,
                'started': self.started,
                'finished': self.finished,
                'digests': dict(sorted(self.digests.items()))}


def _records(table):
    """ DataFrame rows as JSON-ready dicts, NaN mapped to null. """

    return json.loads(table.to_json(orient='records', double_precision=15))


def _write_report(args, manifest, result):
    """ Close the manifest and write the JSON report if requested. """

    manifest.close()
    if args.json is not None:
        functions.write_json({'schema': SCHEMA_VERSION,
                              'subcommand': manifest.subcommand,
                              'manifest': manifest.to_dict(),
                              'result': result}, args.json)
        logging.info('Report saved to {}'.format(args.json))


def _echo(args, text):
    if not args.quiet:
        print(text)


def cmd_verify(args):
    """ Run a verification suite.

    Args:
        args (argparse.Namespace): parsed arguments.

    Returns:
        (int): exit code, 0 if every instance passed, 1 otherwise.
    """

    word = parse_word(args.word) if args.word is not None else None
    manifest = RunManifest('verify', args)
    if word is not None:
        manifest.add_digest('word', _digest(format_word(word)))

    result = verify_suite(args.suite, samples=args.samples, seed=args.seed, dim=args.dim,
                          word=word, threads=args.threads)

    if args.csv is not None:
        result.table.to_csv(args.csv, index=False)

    _write_report(args, manifest, {'suite': args.suite,
                                   'passed': result.passed,
                                   'instances': len(result.table),
                                   'warnings': list(result.warnings),
                                   'records': _records(result.table)})

    _echo(args, 'suite {}: {:d} instances, {}'.format(
        args.suite, len(result.table), 'passed' if result.passed else 'FAILED'))
    for w in result.warnings:
        _echo(args, 'warning: {}'.format(w))

    if not result.passed:
        failing = result.table[~result.table['pass'].astype(bool)]
        print(failing.to_string(index=False))
        return EXIT_FAILED

    return EXIT_OK


def cmd_search(args):
    """ Search a counterexample for one word.

    Args:
        args (argparse.Namespace): parsed arguments.

    Returns:
        (int): exit code, 0 once the search completed.
    """

    word = parse_word(args.word)
    manifest = RunManifest('search', args)
    manifest.add_digest('word', _digest(format_word(word)))

    archive = None
    if args.certify:
        archive = args.archive if args.archive is not None else \
            'marin_{}_dim{:d}.json'.format(word.letters, args.dim)

    result = search_counterexample(word, archive=archive, dim=args.dim, restarts=args.restarts,
                                   max_iters=args.iters, factor_rank=args.rank, seed=args.seed,
                                   method=args.method, certify=args.certify,
                                   certify_k=args.certify_k, certify_k_max=args.certify_k_max,
                                   threads=args.threads)

    out = result.to_dict()
    manifest.add_digest('matrices', out['inputs_digest'])
    _write_report(args, manifest, out)

    _echo(args, 'word {} dim {:d}: best_violation {:.6e} (restart {:d}), certified {}'.format(
        format_word(word), args.dim, result.best_violation, result.restart_index,
        result.certified))
    if result.certificate is not None:
        _echo(args, 'certificate: {}'.format(result.certificate.reason))
    if archive is not None and result.certified:
        _echo(args, 'archive: {}'.format(archive))

    return EXIT_OK


def cmd_expand(args):
    """ Print the truncated expansion of a word around the identity.

    Args:
        args (argparse.Namespace): parsed arguments.

    Returns:
        (int): exit code.
    """

    if args.order < 0:
        raise ValueError('The expansion order must be nonnegative.')

    word = parse_word(args.word)
    manifest = RunManifest('expand', args)
    manifest.add_digest('word', _digest(format_word(word)))

    poly, coeffs = expand(word, args.order)

    for k in range(args.order + 1):
        print('degree {:d}: {}'.format(k, format_poly(poly.degree_part(k))))
    print(json.dumps(poly.to_json()))

    result = {'word': format_word(word), 'order': args.order, 'polynomial': poly.to_json()}
    if coeffs is not None:
        for name, value in zip(coeffs._fields, coeffs):
            print('{} = {}'.format(name, value))
        result['coefficients'] = {name: str(value) for name, value in zip(coeffs._fields, coeffs)}

    _write_report(args, manifest, result)

    return EXIT_OK


def cmd_sweep(args):
    """ Search every word up to a length and label it.

    Args:
        args (argparse.Namespace): parsed arguments.

    Returns:
        (int): exit code, 0 once the sweep completed.
    """

    manifest = RunManifest('sweep', args)

    table = sweep(args.max_length, args.dim, budget=args.budget, restarts=args.restarts,
                  max_iters=args.iters, seed=args.seed, method=args.method,
                  certify=args.certify, threads=args.threads)

    if args.csv is not None:
        table.to_csv(args.csv, index=False)

    _write_report(args, manifest, {'max_length': args.max_length, 'dim': args.dim,
                                   'records': _records(table)})

    if not args.quiet:
        print(table.to_string(index=False))

    return EXIT_OK


def _common_parser():
    """ Flags shared by every subcommand. """

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=None,
                        help='run seed, required with --json')
    common.add_argument('--threads', type=int, default=1,
                        help='number of worker processes (default 1)')
    common.add_argument('--json', default=None, metavar='PATH',
                        help='write a JSON report here')
    common.add_argument('--csv', default=None, metavar='PATH',
                        help='write the records table here')
    common.add_argument('--quiet', action='store_true',
                        help='only print warnings, errors and failures')
    common.add_argument('--log-dir', default=None, metavar='PATH',
                        help='write the log file in this folder instead of stderr')
    common.add_argument('--debug', action='store_true',
                        help='verbose logging')
    return common


def build_parser():
    """ Build the argument parser.

    Returns:
        (argparse.ArgumentParser): the parser.
    """

    common = _common_parser()
    parser = argparse.ArgumentParser(prog='marin',
                                     description='Matrix rearrangement inequalities.')
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    sub = parser.add_subparsers(dest='subcommand', required=True)

    p = sub.add_parser('verify', parents=[common], help='run a verification suite')
    p.add_argument('--suite', choices=list(SUITES), default='theorem1')
    p.add_argument('--word', default=None, help='fix the word for every instance')
    p.add_argument('--dim', type=int, default=None)
    p.add_argument('--samples', type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser('search', parents=[common], help='search a counterexample')
    p.add_argument('--word', required=True)
    p.add_argument('--dim', type=int, default=3)
    p.add_argument('--restarts', type=int, default=None)
    p.add_argument('--iters', type=int, default=None)
    p.add_argument('--rank', type=int, default=None)
    p.add_argument('--method', choices=list(METHODS), default='nelder_mead')
    p.add_argument('--certify', action='store_true')
    p.add_argument('--certify-k', type=int, default=None)
    p.add_argument('--certify-k-max', type=int, default=None)
    p.add_argument('--archive', default=None, metavar='PATH',
                   help='counterexample archive written when certification succeeds')
    p.set_defaults(func=cmd_search)

    p = sub.add_parser('expand', parents=[common], help='expand a word around the identity')
    p.add_argument('--word', required=True)
    p.add_argument('--order', type=int, default=2)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser('sweep', parents=[common], help='search all words up to a length')
    p.add_argument('--max-length', type=int, default=6)
    p.add_argument('--dim', type=int, default=3)
    p.add_argument('--budget', type=int, default=None)
    p.add_argument('--restarts', type=int, default=8)
    p.add_argument('--iters', type=int, default=None)
    p.add_argument('--method', choices=list(METHODS), default='nelder_mead')
    p.add_argument('--certify', action='store_true')
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None):
    """ Command line entry point.

    Args:
        argv (list of str): arguments, if None read sys.argv (default None).

    Returns:
        (int): the exit code.
    """

    parser = build_parser()
    args = parser.parse_args(argv)

    if args.json is not None and args.seed is None:
        parser.error('--json needs an explicit --seed')

    functions.setup_log(out_path=args.log_dir, debug=args.debug, quiet=args.quiet)

    try:
        return args.func(args)
    except (WordSyntaxError, DimensionError, BudgetError, ValueError) as err:
        print('marin: error: {}'.format(err), file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as err:
        logging.error(str(err))
        print('marin: numerical failure: {}'.format(err), file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":

    sys.exit(main())
