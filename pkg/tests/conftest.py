import numpy as np
import pytest

from latticeheat import BoxDomain, Field


def random_domain(rng, max_d=3, max_extent=6):
    d = int(rng.integers(1, max_d + 1))
    extents = tuple(int(rng.integers(2, max_extent + 1)) for _ in range(d))
    return BoxDomain(extents)


def random_field(rng, domain, amplitude=1.0):
    interior = rng.uniform(0.0, amplitude, size=domain.interior_shape)
    return Field.from_interior(domain, interior)


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
