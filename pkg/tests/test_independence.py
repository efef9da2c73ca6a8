import random

import pytest

from synchro.automaton import Automaton, mask_of, word_from_str
from synchro.errors import NotIndependentError, NotOneClusterError
from synchro.independence import (check_independent, letter_skeleton,
                                  one_cluster, shift, trahtman_condition)

from conftest import one_cluster_corpus


def test_check_independent_example(ex1):
    ind = check_independent(ex1, [word_from_str("a"), word_from_str("aa")])
    assert ind.range_mask == mask_of([0, 1])
    assert ind.k == 2 and ind.max_len == 2 and ind.min_len == 1


def test_check_independent_reports_state(ex1):
    with pytest.raises(NotIndependentError) as err:
        check_independent(ex1, [word_from_str("a"), word_from_str("b")])
    assert err.value.state is not None


def test_check_independent_rejects_duplicates(ex1):
    with pytest.raises(NotIndependentError):
        check_independent(ex1, [word_from_str("a"), word_from_str("a")])


def test_singleton_epsilon_only_for_one_state():
    single = Automaton(1, 1, ((0,),))
    assert check_independent(single, [()]).range_mask == 1
    two = Automaton(2, 1, ((1,), (0,)))
    with pytest.raises(NotIndependentError):
        check_independent(two, [()])


def test_cycle_powers_independent(c4):
    words = [word_from_str(w) for w in ("aaa", "aa", "a", "")]
    ind = check_independent(c4, words)
    assert ind.range_mask == 0b1111


def test_skeleton_levels(ex1):
    skel = letter_skeleton(ex1, 0)
    assert skel.cycles == ((0, 1),)
    assert skel.level == (0, 0, 1, 1)
    assert skel.attach[2] == 0 and skel.attach[3] == 1
    skel_b = letter_skeleton(ex1, 1)
    assert len(skel_b.cycles) == 2


def test_one_cluster_example(ex1):
    ind = one_cluster(ex1, 0)
    assert ind.k == 2
    assert ind.words == ((0, 0, 0), (0, 0))
    assert ind.range_mask == mask_of([0, 1])


def test_one_cluster_cycle(c4):
    ind = one_cluster(c4, 0)
    assert ind.k == 4 and ind.min_len == 0 and ind.max_len == 3


def test_one_cluster_identity_letter_fails():
    aut = Automaton(3, 1, ((0,), (1,), (2,)))
    with pytest.raises(NotOneClusterError) as err:
        one_cluster(aut, 0)
    assert "3 cycles" in str(err.value)


def test_one_cluster_scan_prefers_smaller_cycle():
    # letter a is a full 3-cycle, letter b funnels everything onto state 0
    aut = Automaton(3, 2, ((1, 0), (2, 0), (0, 0)))
    ind = one_cluster(aut)
    assert ind.k == 1 and ind.words == ((1, 1),)


def test_shift_keeps_range(ex1):
    ind = check_independent(ex1, [word_from_str("a"), word_from_str("aa")])
    assert shift(ex1, ind, ()).words == ind.words
    shifted = shift(ex1, ind, word_from_str("b"))
    assert shifted.range_mask == ind.range_mask
    assert shifted.words == ((1, 0), (1, 0, 0))


def test_shift_random_prefixes():
    rng = random.Random(9)
    for aut in one_cluster_corpus(seed=21, count=10, n_max=8):
        ind = one_cluster(aut, 0)
        for _ in range(10):
            prefix = tuple(rng.randrange(aut.m) for _ in range(rng.randint(0, 6)))
            shifted = shift(aut, ind, prefix)
            assert shifted.range_mask == ind.range_mask


def _counting_identity_holds(aut, ind):
    from itertools import combinations

    from synchro.automaton import states_of
    range_states = states_of(ind.range_mask)
    for size in range(len(range_states) + 1):
        for combo in combinations(range_states, size):
            pmask = mask_of(combo)
            counts = [(aut.preimage(pmask, w) & ind.range_mask).bit_count()
                      for w in ind.words]
            if sum(counts) != ind.k * len(combo):
                return False
            # all counts match |P| or some count strictly exceeds it
            if not (all(c == len(combo) for c in counts)
                    or any(c > len(combo) for c in counts)):
                return False
    return True


def test_counting_identity_example(ex1):
    ind = check_independent(ex1, [word_from_str("a"), word_from_str("aa")])
    assert _counting_identity_holds(ex1, ind)


def test_counting_identity_random():
    for aut in one_cluster_corpus(seed=33, count=15, n_max=10):
        assert _counting_identity_holds(aut, one_cluster(aut, 0))


def test_trahtman_condition(ex1, c4):
    # both trees of the a-skeleton carry maximal level 1 but hang on
    # different cycle states
    assert not trahtman_condition(ex1, 0)
    # a pure permutation letter has no tree at all
    assert not trahtman_condition(c4, 0)
    aut = Automaton(3, 2, ((1, 0), (2, 0), (0, 0)))
    assert trahtman_condition(aut, 1)
