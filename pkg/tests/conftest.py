import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from tower_limits.polyparse import Polynomial

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CORPUS_SEED = 20261018


def random_polynomial(rng, max_degree=4, max_coeff=9):
    degree = rng.randint(0, max_degree)
    coeffs = [rng.randint(-max_coeff, max_coeff) for _ in range(degree)]
    coeffs.append(rng.choice([c for c in range(-max_coeff, max_coeff + 1) if c]))
    return Polynomial(coeffs)


def polynomial_corpus(n, seed=CORPUS_SEED, **kwargs):
    rng = random.Random(seed)
    return [random_polynomial(rng, **kwargs) for _ in range(n)]


def polynomials(max_degree=4, max_coeff=9):
    return st.lists(st.integers(-max_coeff, max_coeff), min_size=1, max_size=max_degree + 1).map(Polynomial)


@pytest.fixture
def quadratic():
    return Polynomial([3, 1, 1])


@pytest.fixture
def seven_x():
    return Polynomial([0, 7])


_acceptance_lines = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    status = "PASS" if rep.passed else "FAIL"
    _acceptance_lines.append(f"{status}  AC{marker.args[0]:<2} {marker.args[1]}")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines, key=lambda s: int(s.split("AC")[1].split()[0])):
            terminalreporter.write_line(line)
