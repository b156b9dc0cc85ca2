import os
import tempfile

# Catalog files go to a throwaway directory so test runs never touch ~/.cache.
os.environ.setdefault("CUBE_COVER_CACHE_DIR", tempfile.mkdtemp(prefix="cube-cover-test-"))

import random
from fractions import Fraction

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")


def random_plane_coeffs(rng: random.Random, n: int) -> list[Fraction]:
    """Coefficients biased towards small integers and halves so planes actually hit vertices."""
    pool = [Fraction(v) for v in range(-3, 3)] + [Fraction(v, 2) for v in (-3, -1, 1, 3)]
    pool += [Fraction(1, 3), Fraction(2, 3), Fraction(-1, 3)]
    return [rng.choice(pool) for _ in range(n)]


@pytest.fixture(scope="session")
def random_planes():
    """A fixed population: 1700 planes for each n = 1..6 (10200 overall)."""
    from cubecover.core import Hyperplane

    rng = random.Random(20240601)
    return {n: [Hyperplane(random_plane_coeffs(rng, n)) for _ in range(1700)] for n in range(1, 7)}


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
