"""Independent word sets and the single-cycle structure of a letter.

An independent set is a list of k distinct words together with k distinct
states (its range) such that reading the words from any one state yields
exactly the range.  A letter whose transition graph has a unique cycle of
length k induces the independent set {a^(n-1), ..., a^(n-k)} whose range is
the cycle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automaton import Automaton, Word, mask_of, set_str, states_of, word_str
from .errors import DomainError, NotIndependentError, NotOneClusterError, TheoryError


@dataclass(frozen=True)
class IndependentSet:
    """k distinct words whose image from every state is the k-state range."""

    words: tuple[Word, ...]
    range_mask: int

    @property
    def k(self) -> int:
        return len(self.words)

    @property
    def max_len(self) -> int:
        return max(len(w) for w in self.words)

    @property
    def min_len(self) -> int:
        return min(len(w) for w in self.words)

    def shortest_word(self) -> Word:
        """The first word of minimal length."""
        return min(self.words, key=len)


@dataclass(frozen=True)
class LetterSkeleton:
    """Cycle/tree decomposition of one letter's functional graph.

    Every state is on exactly one cycle or hangs in a tree rooted at a cycle
    state.  ``level[q]`` is the height above the cycle (0 on the cycle) and
    ``attach[q]`` the cycle state whose tree contains q (itself on a cycle).
    """

    letter: int
    cycles: tuple[tuple[int, ...], ...]
    level: tuple[int, ...]
    attach: tuple[int, ...]


def letter_skeleton(aut: Automaton, letter: int) -> LetterSkeleton:
    if not 0 <= letter < aut.m:
        raise DomainError(f"letter {letter} out of range 0..{aut.m - 1}")
    succ = [aut.delta[q][letter] for q in range(aut.n)]

    # Peel states of in-degree zero; whatever survives lies on a cycle.
    indeg = [0] * aut.n
    for q in range(aut.n):
        indeg[succ[q]] += 1
    queue = [q for q in range(aut.n) if indeg[q] == 0]
    on_cycle = [True] * aut.n
    while queue:
        q = queue.pop()
        on_cycle[q] = False
        t = succ[q]
        indeg[t] -= 1
        if indeg[t] == 0:
            queue.append(t)

    cycles = []
    seen = [False] * aut.n
    for q in range(aut.n):
        if on_cycle[q] and not seen[q]:
            cycle = []
            s = q
            while not seen[s]:
                seen[s] = True
                cycle.append(s)
                s = succ[s]
            cycles.append(tuple(cycle))

    level = [0] * aut.n
    attach = list(range(aut.n))
    # Reverse BFS from the cycles assigns levels and attachment roots.
    preds = [[] for _ in range(aut.n)]
    for q in range(aut.n):
        preds[succ[q]].append(q)
    frontier = [q for q in range(aut.n) if on_cycle[q]]
    while frontier:
        nxt = []
        for q in frontier:
            for p in preds[q]:
                if not on_cycle[p]:
                    level[p] = level[q] + 1
                    attach[p] = attach[q] if not on_cycle[q] else q
                    nxt.append(p)
        frontier = nxt

    return LetterSkeleton(letter, tuple(cycles), tuple(level), tuple(attach))


def check_independent(aut: Automaton, words) -> IndependentSet:
    """Validate the independence condition and return the set with its range.

    Raises NotIndependentError naming the first violating state (carried on
    the exception) when the condition fails.
    """
    words = tuple(tuple(w) for w in words)
    if not words:
        raise DomainError("need at least one word")
    if len(set(words)) != len(words):
        raise NotIndependentError("duplicate words; the k words must be distinct")
    for w in words:
        aut._check_word(w)
    k = len(words)
    range_mask = None
    for s in range(aut.n):
        images = mask_of(aut.apply(s, w) for w in words)
        if images.bit_count() != k:
            raise NotIndependentError(
                f"state {s} reaches only {images.bit_count()} distinct states "
                f"{set_str(images)} under the {k} words", state=s)
        if range_mask is None:
            range_mask = images
        elif images != range_mask:
            raise NotIndependentError(
                f"state {s} reaches {set_str(images)}, expected the common "
                f"range {set_str(range_mask)}", state=s)
    return IndependentSet(words, range_mask)


def one_cluster(aut: Automaton, letter: int | None = None) -> IndependentSet:
    """Independent set {a^(n-1), ..., a^(n-k)} of a single-cycle letter.

    With no letter given, scans the alphabet and returns the set of the
    letter with the smallest cycle (ties to the smallest letter index).
    """
    if letter is None:
        best = None
        counts = {}
        for x in range(aut.m):
            skel = letter_skeleton(aut, x)
            counts[x] = len(skel.cycles)
            if len(skel.cycles) == 1:
                k = len(skel.cycles[0])
                if best is None or k < best[0]:
                    best = (k, x)
        if best is None:
            raise NotOneClusterError(
                f"no letter has a unique cycle (cycle counts: {counts})",
                cycle_counts=counts)
        letter = best[1]

    skel = letter_skeleton(aut, letter)
    if len(skel.cycles) != 1:
        raise NotOneClusterError(
            f"letter {word_str((letter,))} has {len(skel.cycles)} cycles, need exactly 1",
            cycle_counts={letter: len(skel.cycles)})
    k = len(skel.cycles[0])
    words = tuple((letter,) * (aut.n - 1 - i) for i in range(k))
    ind = check_independent(aut, words)
    if ind.range_mask != mask_of(skel.cycles[0]):
        raise TheoryError(
            f"power words of letter {letter} have range {set_str(ind.range_mask)}"
            f" instead of the cycle {set_str(mask_of(skel.cycles[0]))}")
    return ind


def shift(aut: Automaton, ind: IndependentSet, prefix: Word) -> IndependentSet:
    """Prefix every word of an independent set; range is preserved."""
    aut._check_word(tuple(prefix))
    shifted = tuple(tuple(prefix) + w for w in ind.words)
    try:
        out = check_independent(aut, shifted)
    except NotIndependentError as exc:
        raise TheoryError(
            f"prefixing by {word_str(tuple(prefix))} broke independence: {exc}") from exc
    if out.range_mask != ind.range_mask:
        raise TheoryError("prefixing changed the range")
    return out


def trahtman_condition(aut: Automaton, letter: int) -> bool:
    """True when the letter's graph has tree states and all states of
    maximal level lie in the same tree.  Automata produced by coloring a
    graph along a monochromatic Hamiltonian path always satisfy this, and a
    strongly connected automaton satisfying it has a non-trivial stable pair.
    """
    skel = letter_skeleton(aut, letter)
    top = max(skel.level)
    if top == 0:
        return False
    roots = {skel.attach[q] for q in range(aut.n) if skel.level[q] == top}
    return len(roots) == 1
