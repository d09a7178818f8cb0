import os

import numpy as np
import pytest

from quhadamard import search
from quhadamard.signmatrix import sylvester


@pytest.fixture(scope="session")
def h12():
    return search.fixture_matrix("H12")


@pytest.fixture(scope="session")
def k12():
    return search.fixture_matrix("K12")


@pytest.fixture(scope="session")
def h8():
    return sylvester(8)


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


def external(name):
    """Path of an external library matrix, or None when HADAMARD_DATA is unset or lacks it."""
    base = os.environ.get("HADAMARD_DATA")
    if not base:
        return None
    p = os.path.join(base, name)
    return p if os.path.isfile(p) else None
