"""Shared helpers: deterministic RNG and generic initial-condition sampling."""

import random

import pytest

from liesuper.superpose import genericity_product


def sample_generic_ics(seed: int, n: int = 4, threshold: float = 1e-4):
    """Rejection-sample n ICs in [-0.5, 0.5]^2 with a well-separated F-product.

    "Generic" is an open dense condition; the threshold merely keeps the
    denominators of the superposition formula comfortably away from zero so
    the tests measure accuracy, not conditioning.
    """
    rng = random.Random(seed)
    while True:
        ics = [(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)) for _ in range(n)]
        if n < 4 or abs(genericity_product(ics[:4])) > threshold:
            return ics


@pytest.fixture
def rng():
    return random.Random(20260824)
