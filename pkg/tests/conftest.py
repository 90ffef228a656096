import functools

import pytest

from effalg import enumerate_all, generate, standard_catalog


@functools.lru_cache(maxsize=None)
def catalog():
    return standard_catalog()


@functools.lru_cache(maxsize=None)
def enumerated(max_n=6):
    return tuple(enumerate_all(max_n))


@pytest.fixture
def c2():
    return generate("chain(2)")


@pytest.fixture
def c3():
    return generate("chain(3)")


@pytest.fixture
def diamond():
    return generate("diamond")


@pytest.fixture
def mo2():
    return generate("mo(2)")


@pytest.fixture
def b2():
    return generate("boolean(2)")


def idx(E, *labels):
    return [E.index(lab) for lab in labels]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
