from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    max_examples=40,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def corpus_lattices():
    """Bounded-index lattice corpus shared by the heavier tests."""
    from toricmld import enumerate_superlattices

    return {d: enumerate_superlattices(d, 12) for d in (1, 2, 3)}


@pytest.fixture(scope="session")
def corpus_germs(corpus_lattices):
    """The standard germ corpus: d <= 3, index <= 12, b in {0,1/2,2/3,1}^d."""
    from itertools import product

    from toricmld import ToricGerm

    coeffs = [Fraction(0), Fraction(1, 2), Fraction(2, 3), Fraction(1)]
    germs = []
    for d in (1, 2, 3):
        for lat in corpus_lattices[d]:
            for b in product(coeffs, repeat=d):
                germs.append(ToricGerm(lat, b))
    return germs
