"""
Tests for the command line interface of MARIN
"""

import os
import copy
import json

import pytest
import jsonschema

import marin
from marin.cli import main, build_parser, RunManifest

SCHEMA = os.path.join(os.path.dirname(os.path.abspath(marin.__file__)),
                      'schema', 'report.schema.json')


@pytest.fixture(scope='module')
def schema():
    with open(SCHEMA) as handle:
        return json.load(handle)


def _load(path):
    with open(path) as handle:
        return json.load(handle)


def test_schema_is_valid_draft7(schema):
    jsonschema.Draft7Validator.check_schema(schema)


def test_verify_theorem1(tmp_path, schema):
    out = str(tmp_path / 'report.json')
    code = main(['verify', '--suite', 'theorem1', '--samples', '200', '--seed', '7',
                 '--json', out, '--quiet'])
    assert code == 0
    report = _load(out)
    jsonschema.validate(instance=report, schema=schema)
    assert report['result']['passed'] is True
    assert len(report['result']['records']) == 200
    assert report['manifest']['seed'] == 7
    assert report['manifest']['config']['suite'] == 'theorem1'


def test_verify_trace_dim3_warns_but_passes(capsys):
    with pytest.warns(UserWarning):
        code = main(['verify', '--suite', 'trace2x2', '--dim', '3', '--samples', '50'])
    assert code == 0
    assert 'warning' in capsys.readouterr().out


def test_verify_bad_word_is_usage_error(capsys):
    assert main(['verify', '--word', 'A^0']) == 2
    assert 'error' in capsys.readouterr().err


def test_json_needs_seed(tmp_path):
    with pytest.raises(SystemExit) as err:
        main(['verify', '--json', str(tmp_path / 'r.json')])
    assert err.value.code == 2


def test_unknown_suite_is_usage_error():
    with pytest.raises(SystemExit) as err:
        main(['verify', '--suite', 'nope'])
    assert err.value.code == 2


def test_failing_suite_exits_1(monkeypatch, capsys):
    import marin.suites as suites

    def _always_fail(seed, index, dim, word):
        return {'gap': -1.0, 'pass': False}, None, dim

    monkeypatch.setitem(suites.SUITES, 'theorem1', _always_fail)
    assert main(['verify', '--suite', 'theorem1', '--samples', '3']) == 1
    assert 'FAILED' in capsys.readouterr().out


def test_convergence_failure_exits_3(monkeypatch):
    from marin.utils.option import Defaults
    monkeypatch.setattr(Defaults, 'jacobi_max_sweeps', 0)
    assert main(['verify', '--suite', 'theorem1', '--samples', '3', '--quiet']) == 3


def test_threads_do_not_change_results(tmp_path):
    paths = []
    for threads in ('1', '2'):
        out = str(tmp_path / 'r{}.json'.format(threads))
        assert main(['verify', '--suite', 'theorem1', '--samples', '30', '--seed', '3',
                     '--threads', threads, '--json', out, '--quiet']) == 0
        paths.append(out)
    reports = []
    for path in paths:
        with open(path) as handle:
            report = json.load(handle)
        for key in ('started', 'finished'):
            report['manifest'].pop(key)
        reports.append(report)
    assert reports[0] == reports[1]


@pytest.mark.parametrize('order, line', [('2', 'degree 2: 1*AA + 3*AB + 1*BA + 1*BB'),
                                         ('1', 'degree 1: 2*A + 2*B')])
def test_expand_abab(capsys, order, line):
    assert main(['expand', '--word', 'ABAB', '--order', order]) == 0
    assert line in capsys.readouterr().out.splitlines()


def test_expand_binomial(capsys):
    assert main(['expand', '--word', 'BBB', '--order', '2']) == 0
    assert 'degree 2: 3*BB' in capsys.readouterr().out.splitlines()


def test_expand_coefficients(capsys, tmp_path, schema):
    out = str(tmp_path / 'e.json')
    assert main(['expand', '--word', 'ABAB', '--order', '3', '--seed', '1', '--json', out]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert 'a2 = 3' in lines and 'a7 = 1' in lines
    report = _load(out)
    jsonschema.validate(instance=report, schema=schema)
    assert report['result']['coefficients']['a1'] == '1'


def test_expand_negative_order():
    assert main(['expand', '--word', 'AB', '--order', '-1']) == 2


def test_search_ordered_word(capsys, tmp_path, schema):
    out = str(tmp_path / 's.json')
    assert main(['search', '--word', 'AAB', '--dim', '3', '--restarts', '2', '--iters', '20',
                 '--seed', '1', '--json', out]) == 0
    report = _load(out)
    jsonschema.validate(instance=report, schema=schema)
    assert report['result']['best_violation'] == 0.0
    assert 'best_violation' in capsys.readouterr().out


def test_search_bad_rank():
    assert main(['search', '--word', 'ABAB', '--dim', '3', '--rank', '5']) == 2


def test_sweep_csv(tmp_path):
    out = str(tmp_path / 'sweep.csv')
    assert main(['sweep', '--max-length', '2', '--dim', '2', '--restarts', '1', '--iters', '10',
                 '--csv', out, '--quiet']) == 0
    with open(out) as handle:
        header = handle.readline().strip().split(',')
    assert header[:4] == ['word', 'letters', 'length', 'label']


def test_manifest_leaves_out_output_flags():
    args = build_parser().parse_args(['verify', '--seed', '2', '--threads', '4'])
    manifest = RunManifest('verify', args).to_dict()
    assert 'threads' not in manifest['config']
    assert manifest['seed'] == 2 and manifest['schema'] == 1


def test_sweep_json(tmp_path, schema):
    out = str(tmp_path / 'sweep.json')
    assert main(['sweep', '--max-length', '2', '--dim', '2', '--restarts', '1', '--iters', '10',
                 '--seed', '4', '--json', out, '--quiet']) == 0
    report = _load(out)
    jsonschema.validate(instance=report, schema=schema)
    assert len(report['result']['records']) == 6


@pytest.mark.parametrize('path, value', [(('manifest', 'tool'), 'other'),
                                         (('manifest', 'seed'), 'seven'),
                                         (('manifest', 'digests', 'word'), 'not-a-hex-digest'),
                                         (('subcommand',), 'bogus'),
                                         (('schema',), 2),
                                         (('result', 'order'), -5),
                                         (('result', 'polynomial', 0, 'monomial'), 'AC')])
def test_schema_rejects_malformed_reports(tmp_path, schema, path, value):
    out = str(tmp_path / 'e.json')
    assert main(['expand', '--word', 'ABAB', '--order', '2', '--seed', '1', '--json', out]) == 0
    report = _load(out)
    jsonschema.validate(instance=report, schema=schema)

    bad = copy.deepcopy(report)
    target = bad
    for key in path[:-1]:
        target = target[key]
    target[path[-1]] = value
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(instance=bad, schema=schema)
