import os

import hypothesis
import numpy as np
import pytest

np.seterr(all="warn")

hypothesis.settings.register_profile("fast", max_examples=5, deadline=None)
hypothesis.settings.register_profile("ci", max_examples=50, deadline=None)
hypothesis.settings.register_profile("debugger", report_multiple_bugs=False)
hypothesis.settings.load_profile("ci")

FIXTURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")
AABABB_ARCHIVE = os.path.join(FIXTURES, "aababb_dim3.json")


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run slow acceptance tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-size acceptance runs")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def aababb_archive():
    """ Certified AABABB counterexample in dimension 3. The archive is searched
        for and written once (64 restarts, seed 1) when missing from the
        fixtures folder, then re-verified on every run. """

    if not os.path.exists(AABABB_ARCHIVE):
        from marin.main import search_counterexample
        search_counterexample("AABABB", archive=AABABB_ARCHIVE, dim=3, restarts=64,
                              seed=1, certify=True)
    if not os.path.exists(AABABB_ARCHIVE):
        pytest.fail("no certified AABABB violation found with seed 1")
    return AABABB_ARCHIVE
