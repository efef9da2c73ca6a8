"""Certified synchronization algorithms for deterministic automata.

Reset words, stable-set collapses and minimal-rank words for automata with
an independent word set, plus synchronizing colorings of uniform-outdegree
graphs with a Hamiltonian path.  Every synthesized word comes with a
replayed simulation proof and the closed-form bound it satisfies, and
exhaustive desk-scale searches provide independent ground truth.
"""

from .automaton import (Automaton, Word, automaton_to_dot, format_automaton,
                        full_mask, mask_of, parse_automaton, states_of,
                        word_from_str, word_str)
from .errors import (AutomataError, CapExceededError, DomainError,
                     NotIndependentError, NotOneClusterError,
                     NotSynchronizingError, ParseError, TheoryError)
from .graphs import (AGWGraph, agw_failure, color_with_mono_path, format_graph,
                     graph_to_dot, hamiltonian_path, multigraph_of,
                     parse_graph, path_plus_edge, validate_agw)
from .independence import (IndependentSet, LetterSkeleton, check_independent,
                           letter_skeleton, one_cluster, shift,
                           trahtman_condition)
from .reducibility import (Congruence, PairTable, check_clique_equivalences,
                           is_reducible_set, max_reducible_in_range,
                           reducible_pairs, stability_congruence, stable_pairs)
from .extension import (LinearSystem, build_system, exact_rank, find_extension,
                        system_rank)
from .road_coloring import (RespectingRelabeling, induce_relabeling, quotient,
                            relabel, synthesize_coloring, translate_word)
from .synthesis import (Certificate, collapse_stable_set,
                        collapse_stable_set_1cluster, collapse_to_state,
                        min_rank_word, reset_word, reset_word_1cluster)

__all__ = [name for name in dir() if not name.startswith("_")]
