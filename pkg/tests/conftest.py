import itertools

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


def leibniz_det(a):
    """Permutation-expansion determinant, independent of the library code."""
    n = len(a)
    total = 0
    for p in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        prod = 1
        for i in range(n):
            prod *= a[i][p[i]]
        total += -prod if inv % 2 else prod
    return total


@pytest.fixture
def det_oracle():
    return leibniz_det
