import random
from pathlib import Path

import pytest

from qde.quadratic import QuadraticIrrational, squarefree_decompose

FIXTURES = Path(__file__).parent / "fixtures"


def random_theta(rng: random.Random, d_limit: int = 200) -> QuadraticIrrational:
    """A random canonical quadratic irrational with squarefree D below d_limit."""
    while True:
        D = rng.randrange(2, d_limit)
        if squarefree_decompose(D)[0] == 1:
            break
    b = rng.choice([x for x in range(-9, 10) if x])
    return QuadraticIrrational.canonical(
        rng.randrange(-50, 51), b, rng.choice(range(1, 30)) * rng.choice((1, -1)), D
    )


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260810)
