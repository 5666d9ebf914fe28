import pytest

from solcalc import example_path, load

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def dyadic():
    return load(example_path("dyadic"))


@pytest.fixture(scope="session")
def fib():
    return load(example_path("fibonacci"))


@pytest.fixture(scope="session")
def ex4x():
    return load(example_path("ex4x"))


@pytest.fixture(scope="session")
def ex4y():
    return load(example_path("ex4y"))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
