"""Reproducible instance families for tests and benchmarks.

Every randomized generator takes an explicit random.Random so that a seed
fully determines each corpus.
"""

from __future__ import annotations

import itertools
import random

from . import oracle
from .automaton import Automaton
from .errors import AutomataError
from .graphs import AGWGraph, agw_failure
from .independence import letter_skeleton


def cerny(n: int) -> Automaton:
    """The classic slowly-synchronizing cycle: letter a rotates, letter b
    merges the last state into the first; shortest reset length (n-1)^2."""
    rows = []
    for q in range(n):
        rows.append(((q + 1) % n, 0 if q == n - 1 else q))
    return Automaton(n, 2, tuple(rows))


def nontransitive_example() -> Automaton:
    """Four states: a swaps 0 and 1, feeds 2 into 0 and 3 into 1; b fixes
    0 and 1.  Not transitive, yet {a, aa} is independent with range {0, 1}."""
    return Automaton(4, 2, ((1, 0), (0, 1), (0, 0), (1, 1)))


def random_one_cluster(rng: random.Random, n: int, m: int = 2,
                       cycle_len: int | None = None) -> Automaton:
    """Random automaton whose letter 0 has a unique cycle.

    The cycle is planted on a random subset of states; the remaining states
    chain onto it at random, which makes every tree shape reachable.
    """
    k = cycle_len if cycle_len is not None else rng.randint(1, n)
    order = list(range(n))
    rng.shuffle(order)
    succ = [0] * n
    cycle = order[:k]
    for i, q in enumerate(cycle):
        succ[q] = cycle[(i + 1) % k]
    attached = list(cycle)
    for q in order[k:]:
        succ[q] = rng.choice(attached)
        attached.append(q)
    rows = []
    for q in range(n):
        rows.append(tuple([succ[q]] + [rng.randrange(n) for _ in range(m - 1)]))
    return Automaton(n, m, tuple(rows))


def random_sync_one_cluster(rng: random.Random, n: int, m: int = 2,
                            max_tries: int = 500) -> Automaton:
    """Rejection-sample a synchronizing single-cycle-letter automaton."""
    for _ in range(max_tries):
        aut = random_one_cluster(rng, n, m)
        if oracle.shortest_reset(aut) is not None:
            return aut
    raise AutomataError(f"no synchronizing instance found in {max_tries} tries")


def fiber_extension(rng: random.Random, base: Automaton, t: int) -> Automaton:
    """Blow every state up into a fiber of t copies that letters shift
    cyclically.  States in one fiber keep their phase difference forever, so
    the result is never synchronizing for t >= 2 and its minimal rank is t
    when the base synchronizes; letter 0 keeps a unique cycle (t times longer)
    because the shifts around the base cycle are forced to sum to 1 mod t.
    """
    shifts = [[rng.randrange(t) for _ in range(base.n)] for _ in range(base.m)]
    cycle = letter_skeleton(base, 0).cycles[0]
    total = sum(shifts[0][s] for s in cycle) % t
    anchor = cycle[0]
    shifts[0][anchor] = (shifts[0][anchor] + 1 - total) % t
    rows = []
    for s in range(base.n):
        for j in range(t):
            rows.append(tuple(base.delta[s][x] * t + (j + shifts[x][s]) % t
                              for x in range(base.m)))
    return Automaton(base.n * t, base.m, tuple(rows))


def random_nonsync_one_cluster(rng: random.Random, n_max: int = 10,
                               m: int = 2) -> Automaton:
    """Random non-synchronizing single-cycle-letter automaton with at most
    n_max states, built as a fiber extension of a synchronizing base."""
    t = rng.choice([2, 3])
    n_base = rng.randint(2, max(2, n_max // t))
    base = random_sync_one_cluster(rng, n_base, m)
    return fiber_extension(rng, base, t)


def random_agw_ham(rng: random.Random, n: int, d: int = 2,
                   max_tries: int = 500) -> AGWGraph:
    """Random strongly connected aperiodic graph containing the Hamiltonian
    path 0 -> 1 -> ... -> n-1."""
    for _ in range(max_tries):
        rows = []
        for v in range(n):
            slots = [v + 1] if v < n - 1 else []
            while len(slots) < d:
                slots.append(rng.randrange(n))
            rows.append(tuple(sorted(slots)))
        graph = AGWGraph(n, d, tuple(rows))
        if agw_failure(graph) is None:
            return graph
    raise AutomataError(f"no valid graph found in {max_tries} tries")


def path_ordered_agw_graphs(n: int, d: int = 2):
    """All strongly connected aperiodic graphs containing the planted path
    0 -> 1 -> ... -> n-1.

    Every such graph with some Hamiltonian path is isomorphic to at least
    one graph of this family (renumber the vertices along the path), so the
    enumeration is exhaustive up to relabeling.
    """
    per_vertex = []
    for v in range(n):
        free = d - 1 if v < n - 1 else d
        fills = itertools.combinations_with_replacement(range(n), free)
        if v < n - 1:
            per_vertex.append([tuple(sorted((v + 1,) + f)) for f in fills])
        else:
            per_vertex.append([tuple(sorted(f)) for f in fills])
    for rows in itertools.product(*per_vertex):
        graph = AGWGraph(n, d, rows)
        if agw_failure(graph) is None:
            yield graph
