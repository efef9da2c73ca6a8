import itertools
import random

import pytest

from synchro.automaton import Automaton, full_mask, mask_of, states_of, word_from_str
from synchro.errors import DomainError
from synchro.independence import check_independent, one_cluster
from synchro.reducibility import (check_clique_equivalences, is_reducible_set,
                                  max_reducible_in_range, reducible_pairs,
                                  stability_congruence, stable_pairs)

from conftest import one_cluster_corpus


def test_reducible_pairs_example(ex1):
    table = reducible_pairs(ex1)
    assert not table.is_reducible(0, 1)   # a swaps them, b fixes them
    assert table.is_reducible(0, 0)
    assert table.is_reducible(0, 2)       # b collapses
    assert not table.is_reducible(2, 3)


def test_reducible_pairs_cycle(c4):
    table = reducible_pairs(c4)
    for p, q in itertools.combinations(range(4), 2):
        assert table.is_reducible(p, q)


def test_stable_pairs(ex1, c4):
    table = stable_pairs(ex1)
    assert not table.is_stable(2, 3)      # joint orbit hits the pair (0,1)
    assert all(not table.is_stable(p, q)
               for p, q in itertools.combinations(range(4), 2))
    assert stable_pairs(c4).stable == frozenset(
        (p, q) for p, q in itertools.combinations(range(4), 2))


def test_stable_implies_reducible_random():
    for aut in one_cluster_corpus(seed=3, count=20, n_max=9, m=2):
        table = stable_pairs(aut)
        assert table.stable <= table.reducible


def test_stability_congruence(ex1, c4):
    assert stability_congruence(ex1).classes == ((0,), (1,), (2,), (3,))
    assert stability_congruence(c4).classes == ((0, 1, 2, 3),)


def test_congruence_compatible_random():
    for aut in one_cluster_corpus(seed=4, count=20, n_max=9):
        cong = stability_congruence(aut)
        for members in cong.classes:
            for x in range(aut.m):
                targets = {cong.class_of[aut.delta[q][x]] for q in members}
                assert len(targets) == 1


def test_is_reducible_set(ex1, c4):
    assert is_reducible_set(ex1, mask_of([0, 1])) is None
    assert is_reducible_set(ex1, mask_of([2])) == ()
    word = is_reducible_set(c4, full_mask(4))
    assert word == word_from_str("baaabaaab")
    assert c4.image(full_mask(4), word).bit_count() == 1
    with pytest.raises(DomainError):
        is_reducible_set(ex1, 0)


def test_max_reducible_example(ex1):
    ind = check_independent(ex1, [word_from_str("a"), word_from_str("aa")])
    m_value, witness, word = max_reducible_in_range(ex1, ind)
    assert m_value == 1
    assert witness == mask_of([0])        # lexicographically smallest
    assert word == ()


def test_max_reducible_cycle(c4):
    ind = one_cluster(c4, 0)
    m_value, witness, word = max_reducible_in_range(c4, ind)
    assert m_value == 4 and witness == full_mask(4)
    assert c4.image(witness, word).bit_count() == 1


def test_clique_equivalences_example(ex1):
    ind = check_independent(ex1, [word_from_str("a"), word_from_str("aa")])
    report = check_clique_equivalences(ex1, ind, mask_of([0]))
    assert report.card_equals_max and report.all_agree()
    with pytest.raises(DomainError):
        check_clique_equivalences(ex1, ind, mask_of([0, 1]))


def test_clique_equivalences_cycle(c4):
    ind = one_cluster(c4, 0)
    report = check_clique_equivalences(c4, ind, full_mask(4))
    assert report.card_equals_max and report.all_agree()
    smaller = check_clique_equivalences(c4, ind, mask_of([0]))
    assert not smaller.card_equals_max and smaller.all_agree()


def test_no_stable_pair_across_max_reducible():
    # stable pairs never straddle a maximal reducible subset and its
    # complement in the range
    for aut in one_cluster_corpus(seed=17, count=20, n_max=8):
        ind = one_cluster(aut, 0)
        _, witness, _ = max_reducible_in_range(aut, ind)
        table = stable_pairs(aut)
        for p in states_of(witness):
            for q in states_of(ind.range_mask & ~witness):
                assert not table.is_stable(p, q)


def test_universal_congruence_iff_synchronizing():
    from synchro import oracle
    for aut in one_cluster_corpus(seed=8, count=25, n_max=8):
        synchronizing = oracle.shortest_reset(aut) is not None
        assert (stability_congruence(aut).size == 1) == synchronizing
