import sys
from pathlib import Path

import numpy as np
import pytest

try:
    import qnswitch  # noqa: F401
except ImportError:
    sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
