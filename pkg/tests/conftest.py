import random

import pytest

from hspecht.combinatorics import BlockStructure


def compositions(n):
    if n == 0:
        yield ()
        return
    for k in range(1, n + 1):
        for rest in compositions(n - k):
            yield (k,) + rest


def blocks_up_to(max_n):
    return [BlockStructure(c) for n in range(1, max_n + 1) for c in compositions(n)]


@pytest.fixture
def rng():
    return random.Random(20240601)
