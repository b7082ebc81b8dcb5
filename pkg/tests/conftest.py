import os
import random

import pytest
from hypothesis import HealthCheck, settings

from lattower.group_spec import parse_spec
from lattower.lattice_core import Lattice, enumerate_lattice

settings.register_profile(
    "lattower",
    max_examples=50,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("lattower")

# seeds the sampling order of randomized spot checks; exhaustive tests ignore it
SEED = int(os.environ.get("LATTOWER_SEED", "20260819"))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(SEED)


class LatticeCache:
    """Session-wide store so repeated tests share one enumeration per spec."""

    def __init__(self):
        self._store: dict[str, Lattice] = {}

    def get(self, text: str) -> Lattice:
        if text not in self._store:
            self._store[text] = enumerate_lattice(parse_spec(text))
        return self._store[text]


@pytest.fixture(scope="session")
def lattices() -> LatticeCache:
    return LatticeCache()
