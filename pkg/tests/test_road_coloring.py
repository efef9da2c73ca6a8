import random

import pytest

from synchro import bounds, oracle
from synchro.automaton import Automaton, full_mask, mask_of, states_of
from synchro.errors import DomainError
from synchro.families import path_ordered_agw_graphs, random_agw_ham
from synchro.graphs import graph_of, multigraph_of
from synchro.independence import one_cluster
from synchro.reducibility import stability_congruence
from synchro.road_coloring import (induce_relabeling, match_relabeling,
                                   mono_path_state, quotient, relabel,
                                   synthesize_coloring, translate_word)


def identity_congruence(aut):
    return stability_congruence(
        Automaton(aut.n, 1, tuple((q,) for q in range(aut.n))))


def test_quotient_identity_partition(ex1):
    rho = stability_congruence(ex1)   # four singleton classes
    assert quotient(ex1, rho) == ex1


def test_quotient_universal(c4):
    rho = stability_congruence(c4)
    q = quotient(c4, rho)
    assert q.n == 1 and q.delta == ((0, 0),)


def test_quotient_rejects_non_congruence(ex1):
    from synchro.reducibility import Congruence
    # letter a sends 0 and 2 to different classes of this partition
    bogus = Congruence((0, 1, 0, 1), ((0, 2), (1, 3)))
    with pytest.raises(DomainError):
        quotient(ex1, bogus)


def test_relabel_keeps_multigraph(c4):
    swapped = relabel(c4, [(1, 0)] * 4)
    assert multigraph_of(swapped) == multigraph_of(c4)
    assert relabel(swapped, [(1, 0)] * 4) == c4
    with pytest.raises(DomainError):
        relabel(c4, [(0, 0)] * 4)


def test_match_relabeling_round_trip(c4):
    target = relabel(c4, [(1, 0), (0, 1), (1, 0), (0, 1)])
    perms = match_relabeling(c4, target)
    assert relabel(c4, perms) == target


def _nonsync_coloring():
    """A mono-path coloring whose stability congruence is non-trivial."""
    rng = random.Random(0)
    from synchro.graphs import color_with_mono_path, path_plus_edge
    while True:
        n = rng.randint(3, 8)
        graph = random_agw_ham(rng, n, rng.choice([2, 3]))
        path, q = path_plus_edge(graph)
        coloring = color_with_mono_path(graph, path, q)
        rho = stability_congruence(coloring)
        if 1 < rho.size < coloring.n:
            return coloring, rho


def test_induce_relabeling_properties():
    coloring, rho = _nonsync_coloring()
    quot = quotient(coloring, rho)
    # swap the first two letters everywhere on the quotient
    perm = tuple([1, 0] + list(range(2, coloring.m)))
    rel = induce_relabeling(coloring, rho, [perm] * rho.size)
    recolored = relabel(coloring, rel.state_perms())
    assert multigraph_of(recolored) == multigraph_of(coloring)
    assert quotient(recolored, rho) == relabel(quot, [perm] * rho.size)


def test_translate_word_identity_relabeling():
    coloring, rho = _nonsync_coloring()
    identity = tuple(range(coloring.m))
    rel = induce_relabeling(coloring, rho, [identity] * rho.size)
    word = (0, 1, 0)
    assert translate_word(coloring, rel, 0, word) == word
    assert translate_word(coloring, rel, 0, ()) == ()


def test_translate_word_replays():
    rng = random.Random(44)
    coloring, rho = _nonsync_coloring()
    perms = []
    for _ in range(rho.size):
        perm = list(range(coloring.m))
        rng.shuffle(perm)
        perms.append(tuple(perm))
    rel = induce_relabeling(coloring, rho, perms)
    recolored = relabel(coloring, rel.state_perms())
    for _ in range(100):
        class_index = rng.randrange(rho.size)
        cmask = rho.class_mask(class_index)
        word = tuple(rng.randrange(coloring.m) for _ in range(rng.randint(0, 8)))
        translated = translate_word(coloring, rel, class_index, word)
        assert len(translated) == len(word)
        for q in states_of(cmask):
            assert recolored.apply(q, translated) == coloring.apply(q, word)


def test_quotient_keeps_mono_path():
    # a single-letter automaton with a full path keeps one after quotienting
    coloring, rho = _nonsync_coloring()
    assert mono_path_state(coloring, 0) is not None
    quot = quotient(coloring, rho)
    assert mono_path_state(quot, 0) is not None


def test_synthesize_two_vertices():
    for rows in ([(0, 1), (0, 1)], [(0, 1), (0, 0)], [(1, 1), (0, 0)]):
        graph = graph_of(rows)
        if graph.out[0][0] != 0 and graph.out[1] == (0, 0):
            continue
        coloring, cert = synthesize_coloring(graph)
        assert cert.length == 1 and cert.bound == 1
        assert multigraph_of(coloring) == graph


def test_synthesize_rejects_bad_inputs():
    with pytest.raises(DomainError):
        synthesize_coloring(graph_of([(1,), (0,)]))       # period 2
    with pytest.raises(DomainError):
        synthesize_coloring(graph_of([(0, 0)]))           # single vertex
    with pytest.raises(DomainError):
        synthesize_coloring(graph_of([(0, 1), (0, 1), (2, 2)]))  # not connected


def test_synthesize_exhaustive_small():
    count = 0
    recursive = 0
    for n in (2, 3, 4):
        for graph in path_ordered_agw_graphs(n, 2):
            coloring, cert = synthesize_coloring(graph)
            assert multigraph_of(coloring) == graph
            assert coloring.image(full_mask(n), cert.word).bit_count() == 1
            assert bounds.within(cert.length, cert.bound)
            count += 1
            recursive += bool(cert.params["levels"])
    assert count == 395 and recursive > 5


def test_synthesize_random_instances():
    rng = random.Random(6)
    for _ in range(60):
        n = rng.randint(2, 12)
        graph = random_agw_ham(rng, n, rng.choice([2, 3]))
        coloring, cert = synthesize_coloring(graph)
        assert multigraph_of(coloring) == graph
        assert cert.verify(coloring)
        assert bounds.within(cert.length, bounds.one_cluster_reset_bound(n))
        if n <= oracle.DEFAULT_CAP:
            shortest, _ = oracle.shortest_reset(coloring)
            assert shortest <= cert.length
        for level in cert.params["levels"]:
            assert level["slack"] >= -1e-9
