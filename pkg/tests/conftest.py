import random

import pytest

from semibox import PartialBijection, Transformation


def t1(*images):
    """Transformation from 1-based images, matching written-out examples."""
    return Transformation.from_one_based(images)


def p1(*images):
    """Partial bijection from 1-based images; None marks undefined points."""
    return PartialBijection.from_one_based(images)


@pytest.fixture
def rng():
    return random.Random(20260808)
