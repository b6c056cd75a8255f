import sys
from pathlib import Path

import numpy as np
import pytest

SRC = Path(__file__).resolve().parent.parent / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

from robinball import BallGeometry, derive_model  # noqa: E402


@pytest.fixture
def canonical_model():
    """n=2, R=1, x0=(0.5, 0), beta=0.25: the standing 2D test point."""
    return derive_model(BallGeometry(n=2, R=1.0, x0=np.array([0.5, 0.0])), 0.25)


@pytest.fixture
def model_n1():
    """n=1, R=1, x0=0.5, beta=1: f(t) = 6 t^2 (t - 1), sign-changing."""
    return derive_model(BallGeometry(n=1, R=1.0, x0=np.array([0.5])), 1.0)


@pytest.fixture
def model_n3():
    """n=3, R=1, x0=(0.5,0,0), beta=0.5: the c2 = 0 boundary case."""
    return derive_model(BallGeometry(n=3, R=1.0, x0=np.array([0.5, 0.0, 0.0])), 0.5)
