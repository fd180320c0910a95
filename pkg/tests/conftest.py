import functools

import pytest
from hypothesis import HealthCheck, settings

from qschubert import (
    B2Reference,
    bgg_family,
    build_operators,
    default_top_class,
    quantum_family,
    weyl_group,
)

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def group(label):
    return weyl_group(label)


@functools.lru_cache(maxsize=None)
def family(label):
    g = group(label)
    return bgg_family(default_top_class(g), g)


@functools.lru_cache(maxsize=None)
def qfamily(label):
    g = group(label)
    return quantum_family(build_operators(g), family(label))


@pytest.fixture(scope="session")
def b2ref():
    return B2Reference()


@pytest.fixture(scope="session")
def b2():
    return group("B2")


# acceptance criteria report: test_acceptance.py fills this, one line per criterion
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key])
