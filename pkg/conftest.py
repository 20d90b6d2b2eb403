# conftest.py

import numpy as np
import pytest


@pytest.fixture
def rng():
    """A seeded generator so randomized corpora are reproducible."""
    return np.random.default_rng(20240611)
