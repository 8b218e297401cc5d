import os
import random
import time

import pytest

from seacount.curve import CurveOverFp, RationalCurve
from seacount.stats import trace_table

# the full exhaustive ranges behind some invariants are slow; opt in with this
EXHAUSTIVE = os.environ.get("SEACOUNT_EXHAUSTIVE") == "1"


def random_curves(p, count, rng):
    """``count`` nonsingular curves over F_p with uniformly drawn (a, b)."""
    out = []
    while len(out) < count:
        a, b = rng.randrange(p), rng.randrange(p)
        if (4 * a ** 3 + 27 * b * b) % p:
            out.append(CurveOverFp(p, a, b))
    return out


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def big_survey():
    """Traces of y^2 = x^3 + x + 1 for every p in [10^5, 2 10^5]."""
    t0 = time.perf_counter()
    table = trace_table(RationalCurve(1, 1), 10 ** 5, 2 * 10 ** 5, threads=4)
    return table, time.perf_counter() - t0
