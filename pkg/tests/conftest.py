import random

import pytest

from synchro.automaton import Automaton
from synchro.families import cerny, nontransitive_example, random_one_cluster


@pytest.fixture
def ex1() -> Automaton:
    return nontransitive_example()


@pytest.fixture
def c4() -> Automaton:
    return cerny(4)


def one_cluster_corpus(seed: int, count: int, n_max: int, m: int = 2):
    """Deterministic list of random single-cycle-letter automata."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(2, n_max)
        out.append(random_one_cluster(rng, n, m))
    return out
