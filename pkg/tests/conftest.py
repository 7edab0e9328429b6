import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pareto_panel(rng, n, d):
    return 1.0 / np.sqrt(rng.random((n, d)))
