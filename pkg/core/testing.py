"""Shared inputs for the app test suites.

M1, M2 and M3 are the small worked realizations, P1 and P2 the synthetic
face posets of a digon and of a non-simplicial three-atom poset.
"""

import random

from zmatroid.models import Realization
from zmatroid.services import realization

M1 = realization(2, [(2, 0), (0, 1)])
M2 = realization(2, [(1, 1), (1, -1)])
M3 = realization(2, [(1, 1), (1, -1), (1, 0)])
EMPTY = realization(0, [])

# Digon: two vertices a, b joined by two edges 1, 2.
P1_LABELS = ["0", "a", "b", "1", "2"]
P1_COVERS = [(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4)]

# One top over three atoms: [0, 1] is not boolean.
P2_LABELS = ["0", "a", "b", "c", "1"]
P2_COVERS = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]


def random_realizations(seed: int, count: int) -> list[Realization]:
    """Random realizations with D in {1, 2, 3}, n <= 5 and entries in [-3, 3].

    About a third of them carry a relation lattice with entries in [-2, 2].
    Nothing forces them to be essential.
    """

    rng = random.Random(seed)
    corpus = []
    for _ in range(count):
        d = rng.randint(1, 3)
        n = rng.randint(0, 5)
        generators = [[rng.randint(-3, 3) for _ in range(d)] for _ in range(n)]
        relations = []
        if rng.random() < 1 / 3:
            relations = [[rng.randint(-2, 2) for _ in range(d)] for _ in range(rng.randint(1, d))]
        corpus.append(realization(d, generators, relations))
    return corpus
