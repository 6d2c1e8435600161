"""Shared fixtures and random-element helpers.

Completed presentations are the expensive objects in this test suite, so
each preset is completed once per session and shared read-only.  Tests
that need to mutate a presentation (add axioms, re-complete at a lower
degree) must build their own instance.
"""

import random
from pathlib import Path

import pytest

from daha import AlgebraPresentation, NCPoly, preset

DATA_DIR = Path(__file__).parent / "data"

# Degree 10 covers every identity exercised below; completion past degree 7
# adds no rules for these presets, so this is cheap.
COMPLETION_DEGREE = 10


def completed(name: str) -> AlgebraPresentation:
    alg = preset(name)
    alg.complete(COMPLETION_DEGREE)
    return alg


@pytest.fixture(scope="session")
def udaha() -> AlgebraPresentation:
    return completed("UDAHA_model")


@pytest.fixture(scope="session")
def generic() -> AlgebraPresentation:
    return completed("H_generic")


@pytest.fixture(scope="session")
def central() -> AlgebraPresentation:
    return completed("CentralPair")


@pytest.fixture()
def data_dir() -> Path:
    return DATA_DIR


# -- deterministic random elements -------------------------------------------

def random_coeff(alg: AlgebraPresentation, rng: random.Random):
    c = alg.ring.scalar(rng.choice([-3, -2, -1, 1, 2, 3]))
    if rng.random() < 0.5:
        return c
    name = rng.choice(alg.ring.params)
    power = rng.choice([1, -1]) if alg.ring.is_invertible(name) else 1
    return c * alg.ring.param(name, power)


def random_word(alg: AlgebraPresentation, rng: random.Random, max_len: int = 4):
    n = len(alg.alphabet)
    return tuple(rng.randrange(n) for _ in range(rng.randrange(max_len + 1)))


def random_element(
    alg: AlgebraPresentation,
    rng: random.Random,
    max_terms: int = 3,
    max_len: int = 4,
) -> NCPoly:
    p = alg.zero()
    for _ in range(rng.randrange(1, max_terms + 1)):
        p = p + NCPoly.monomial(
            alg.alphabet, alg.ring, random_word(alg, rng, max_len), random_coeff(alg, rng)
        )
    return p
