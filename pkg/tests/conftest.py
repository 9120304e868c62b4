"""Shared corpora and the acceptance reporting hook.

Every randomized fixture is seeded, so the whole suite is reproducible
run to run. Acceptance tests wrap their body in the `criterion` context
manager; the terminal summary then shows one PASS/FAIL line per
criterion regardless of pytest verbosity.
"""

import math
import random
from contextlib import contextmanager
from fractions import Fraction

import pytest

from toricmld import Germ, germ_from_quotient_type, mld, psi_of

_RESULTS: list[tuple[int, str, str]] = []


@contextmanager
def _criterion(number: int, label: str):
    try:
        yield
    except BaseException:
        _RESULTS.append((number, label, "FAIL"))
        raise
    _RESULTS.append((number, label, "PASS"))


@pytest.fixture
def criterion():
    return _criterion


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, label, status in sorted(_RESULTS):
        terminalreporter.write_line(f"criterion {number:02d} [{label}]: {status}")


BOUNDARY_LADDER = (Fraction(0), Fraction(1, 2), Fraction(2, 3), Fraction(3, 4), Fraction(1))

THRESHOLDS = (
    Fraction(1, 7),
    Fraction(1, 5),
    Fraction(1, 4),
    Fraction(1, 3),
    Fraction(2, 5),
    Fraction(1, 2),
    Fraction(2, 3),
    Fraction(1),
    Fraction(4, 3),
    Fraction(2),
)


def _random_unit(rng: random.Random, r: int) -> int:
    while True:
        w = rng.randint(1, r)
        if math.gcd(w, r) == 1:
            return w


def _random_coefficient(rng: random.Random) -> Fraction:
    if rng.random() < 0.5:
        return rng.choice(BOUNDARY_LADDER)
    d = rng.randint(1, 12)
    return Fraction(rng.randint(0, d), d)


@pytest.fixture(scope="session")
def random_corpus() -> list[tuple[Germ, Fraction]]:
    """1000 seeded cyclic germs with thresholds, orders up to 500."""
    rng = random.Random(20240816)
    out = []
    while len(out) < 1000:
        r = rng.randint(1, 500)
        germ = germ_from_quotient_type(
            r, 1, _random_unit(rng, r), _random_coefficient(rng), _random_coefficient(rng)
        )
        out.append((germ, rng.choice(THRESHOLDS)))
    return out


@pytest.fixture(scope="session")
def standard_corpus() -> list[Germ]:
    """200 seeded cyclic germs with standard coefficients and positive value."""
    ladder = [Fraction(m - 1, m) for m in range(1, 9)] + [Fraction(1)]
    rng = random.Random(716)
    out: list[Germ] = []
    while len(out) < 200:
        r = rng.randint(1, 60)
        germ = germ_from_quotient_type(
            r, 1, _random_unit(rng, r), rng.choice(ladder), rng.choice(ladder)
        )
        if psi_of(germ).is_zero() or mld(germ) <= 0:
            continue
        out.append(germ)
    return out
