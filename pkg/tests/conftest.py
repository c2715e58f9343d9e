import random

import pytest

from elliptica import dsl, randmodels

# one line per acceptance criterion, echoed after the run (filled in by
# tests/test_acceptance.py)
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

CATALOG_SULLIVAN_SPECS = [
    "sphere_odd(3)", "sphere_odd(5)", "sphere_odd(7)",
    "s2", "sphere_even(4)",
    "cpn_sullivan(1)", "cpn_sullivan(2)", "cpn_sullivan(3)",
    "product(s2,sphere_odd(3))", "product(sphere_odd(3),sphere_odd(5))",
    "product(s2,sphere_even(4))",
]

CATALOG_QUILLEN_SPECS = [
    "s2_quillen", "sphere_odd_quillen(3)", "sphere_odd_quillen(5)",
    "cpn_quillen(1)", "cpn_quillen(2)", "cpn_quillen(3)",
]


@pytest.fixture(scope="session")
def cp2():
    return dsl.catalog("cpn_sullivan", 2)


@pytest.fixture(scope="session")
def cp2q():
    return dsl.catalog("cpn_quillen", 2)


@pytest.fixture(scope="session")
def s2():
    return dsl.catalog("s2")


@pytest.fixture(scope="session")
def s2q():
    return dsl.catalog("s2_quillen")


@pytest.fixture(scope="session")
def s3():
    return dsl.catalog("sphere_odd", 3)


@pytest.fixture(scope="session")
def catalog_sullivan():
    return [dsl.catalog_spec(s) for s in CATALOG_SULLIVAN_SPECS]


@pytest.fixture(scope="session")
def catalog_quillen():
    return [dsl.catalog_spec(s) for s in CATALOG_QUILLEN_SPECS]


@pytest.fixture(scope="session")
def random_pure_population():
    """A small seeded population of pure elliptic models for unit tests."""
    rng = random.Random(20260825)
    return [randmodels.random_pure_model(rng, name=f"pop{i}")
            for i in range(12)]
