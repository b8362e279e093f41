from fractions import Fraction as F

import pytest

from slembed import fixtures
from slembed.generate import boundary_maps, build_corpus

CORPUS_SEED = 0
CORPUS_SIZE = 200


@pytest.fixture
def fan():
    return fixtures.fan()


@pytest.fixture
def square_diag():
    return fixtures.square_with_diagonal()


@pytest.fixture(scope="session")
def corpus():
    return build_corpus(CORPUS_SEED, CORPUS_SIZE)


@pytest.fixture(scope="session")
def corpus_maps(corpus):
    return {name: boundary_maps(d, CORPUS_SEED * 1000 + i) for i, (name, d) in enumerate(corpus)}


def q(*vals):
    return tuple(F(v) for v in vals)


ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def verdicts(request):
    """Collects one PASS/FAIL line per acceptance criterion."""
    return request.config.stash.setdefault(ACCEPTANCE, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
