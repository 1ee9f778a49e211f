"""
Tests for the batch verification suites of MARIN
"""

import pandas as pd
import pytest

from marin.suites import run_suite, SUITES


@pytest.mark.parametrize('name, samples', [('theorem1', 300), ('certificate', 200),
                                           ('trace2x2', 200), ('lemma1', 5), ('lemma2', 40),
                                           ('classical', 12), ('rechtre', 50), ('drury', 60),
                                           ('cancellation', 126)])
def test_suites_pass(name, samples):
    result = run_suite(name, samples=samples, seed=7)
    assert result.passed
    assert len(result.table) == samples
    assert list(result.table['index']) == list(range(samples))
    assert {'seed', 'index', 'word', 'dim', 'pass'} <= set(result.table.columns)


def test_theorem2_suite_robust_columns():
    table = run_suite('theorem2', samples=8, seed=7).table
    assert (table['coeff3'] > 0).all()
    assert (table['a3_term'].abs() <= 1e-10).all()
    assert (table['eps0'] > 0).all()
    assert table['relative_error'].median() < 0.1


def test_fixed_word():
    table = run_suite('theorem1', samples=20, seed=1, word='ABAB').table
    assert set(table['word']) == {'A^1 B^1 A^1 B^1'}


def test_trace_suite_warns_in_dimension_3():
    with pytest.warns(UserWarning):
        result = run_suite('trace2x2', samples=30, seed=2, dim=3)
    assert result.passed
    assert len(result.warnings) >= 1
    assert (result.table['dim'] == 3).all()


def test_lemma2_alternates_commuting_pairs():
    table = run_suite('lemma2', samples=6, seed=3).table
    assert list(table['commuting']) == [False, True] * 3


def test_classical_cycles_dimensions():
    table = run_suite('classical', samples=6, seed=3).table
    assert list(table['dim']) == [2, 3, 4] * 2


def test_same_output_for_any_thread_count():
    serial = run_suite('theorem1', samples=40, seed=11, threads=1).table
    pooled = run_suite('theorem1', samples=40, seed=11, threads=2).table
    pd.testing.assert_frame_equal(serial, pooled)


def test_seed_changes_instances():
    t1 = run_suite('theorem1', samples=5, seed=1).table
    t2 = run_suite('theorem1', samples=5, seed=2).table
    assert list(t1['gap']) != list(t2['gap'])


@pytest.mark.parametrize('kwargs', [{'name': 'nope'},
                                    {'name': 'trace2x2', 'dim': 4},
                                    {'name': 'certificate', 'dim': 3},
                                    {'name': 'theorem2', 'dim': 3},
                                    {'name': 'lemma2', 'dim': 3},
                                    {'name': 'theorem2', 'word': 'AABB'}])
def test_invalid_requests(kwargs):
    with pytest.raises(ValueError):
        run_suite(samples=1, **kwargs)


def test_registry():
    assert set(SUITES) == {'theorem1', 'certificate', 'trace2x2', 'theorem2', 'lemma1',
                           'lemma2', 'classical', 'rechtre', 'drury', 'cancellation'}


@pytest.mark.slow
@pytest.mark.parametrize('name', ['theorem1', 'certificate', 'trace2x2', 'classical'])
def test_full_size_suites(name):
    assert run_suite(name, seed=1).passed


@pytest.mark.slow
def test_full_cancellation():
    result = run_suite('cancellation')
    assert result.passed
    assert len(result.table) == 8190
