import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from piezoplate.sampling import all_problems  # noqa: E402

DATA = Path(__file__).resolve().parents[1] / "src" / "piezoplate" / "data"


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=all_problems(), ids=lambda p: f"{p[0].value}.{p[1].label}.3")
def problem(request):
    return request.param
