"""Brute-force ground truth at desk scale.

Exhaustive subset-lattice searches with bitmask tables: exact shortest reset
words, exact minimal rank, exact shortest collapse words and the exact
maximal reducible cardinality inside a range.  Every search refuses to run
past its size cap instead of degrading.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .automaton import EPSILON, Automaton, Word, full_mask, word_str
from .errors import CapExceededError
from .independence import IndependentSet

DEFAULT_CAP = 14
RANGE_CAP = 20


def _check_cap(aut: Automaton, cap: int) -> None:
    if aut.n > cap:
        raise CapExceededError(
            f"exhaustive search refused: n={aut.n} exceeds cap {cap}")


@lru_cache(maxsize=8)
def _image_tables(aut: Automaton) -> tuple[tuple[int, ...], ...]:
    """Per letter, image mask of every subset, built by subset DP."""
    size = 1 << aut.n
    tables = []
    for x in range(aut.m):
        table = [0] * size
        for q in range(aut.n):
            table[1 << q] = 1 << aut.delta[q][x]
        for mask in range(1, size):
            low = mask & -mask
            if mask != low:
                table[mask] = table[mask ^ low] | table[low]
        tables.append(tuple(table))
    return tuple(tables)


@lru_cache(maxsize=8)
def _preimage_tables(aut: Automaton) -> tuple[tuple[int, ...], ...]:
    size = 1 << aut.n
    tables = []
    for x in range(aut.m):
        table = [0] * size
        for q in range(aut.n):
            table[1 << q] = aut.letter_preimages[x][q]
        for mask in range(1, size):
            low = mask & -mask
            if mask != low:
                table[mask] = table[mask ^ low] | table[low]
        tables.append(tuple(table))
    return tuple(tables)


def shortest_collapse(aut: Automaton, mask: int,
                      cap: int = DEFAULT_CAP) -> tuple[int, Word] | None:
    """Length and word of a shortest collapse of the set, or None."""
    _check_cap(aut, cap)
    aut._check_mask(mask)
    if mask.bit_count() <= 1:
        return (0, EPSILON)
    tables = _image_tables(aut)
    parent: dict[int, tuple[int, int]] = {mask: (-1, -1)}
    frontier = [mask]
    while frontier:
        nxt = []
        for current in frontier:
            for x in range(aut.m):
                img = tables[x][current]
                if img in parent:
                    continue
                parent[img] = (current, x)
                if img.bit_count() == 1:
                    word = []
                    node = img
                    while parent[node][0] != -1:
                        node, letter = parent[node]
                        word.append(letter)
                    word.reverse()
                    return len(word), tuple(word)
                nxt.append(img)
        frontier = nxt
    return None


def shortest_reset(aut: Automaton, cap: int = DEFAULT_CAP) -> tuple[int, Word] | None:
    """Shortest reset word by subset BFS from the full state set."""
    return shortest_collapse(aut, full_mask(aut.n), cap)


def minimal_rank(aut: Automaton, cap: int = DEFAULT_CAP) -> int:
    """Minimum cardinality over all reachable images of the full state set."""
    _check_cap(aut, cap)
    tables = _image_tables(aut)
    start = full_mask(aut.n)
    best = aut.n
    seen = {start}
    frontier = [start]
    while frontier and best > 1:
        nxt = []
        for current in frontier:
            for x in range(aut.m):
                img = tables[x][current]
                if img not in seen:
                    seen.add(img)
                    best = min(best, img.bit_count())
                    nxt.append(img)
        frontier = nxt
    return best


def shortest_min_rank(aut: Automaton, cap: int = DEFAULT_CAP) -> tuple[int, int, Word]:
    """(t, length, word) of a shortest word of the minimal rank t."""
    _check_cap(aut, cap)
    tables = _image_tables(aut)
    start = full_mask(aut.n)
    parent: dict[int, tuple[int, int]] = {start: (-1, -1)}
    depth = {start: 0}
    frontier = [start]
    while frontier:
        nxt = []
        for current in frontier:
            for x in range(aut.m):
                img = tables[x][current]
                if img not in parent:
                    parent[img] = (current, x)
                    depth[img] = depth[current] + 1
                    nxt.append(img)
        frontier = nxt
    best = min(mask.bit_count() for mask in parent)
    winner = min((mask for mask in parent if mask.bit_count() == best),
                 key=lambda mask: depth[mask])
    word = []
    node = winner
    while parent[node][0] != -1:
        node, letter = parent[node]
        word.append(letter)
    word.reverse()
    return best, len(word), tuple(word)


def exact_M(aut: Automaton, ind: IndependentSet, cap: int = DEFAULT_CAP) -> int:
    """Exact maximal cardinality of reducible subsets of the range.

    A set collapses iff it is contained in some iterated preimage of a
    singleton, so the closure of the singletons under letter preimages
    decides every subset at once.
    """
    _check_cap(aut, cap)
    if ind.k > RANGE_CAP:
        raise CapExceededError(f"range size {ind.k} exceeds cap {RANGE_CAP}")
    tables = _preimage_tables(aut)
    seen = set(1 << q for q in range(aut.n))
    frontier = list(seen)
    best = 1
    for mask in frontier:
        best = max(best, (mask & ind.range_mask).bit_count())
    while frontier:
        nxt = []
        for current in frontier:
            for x in range(aut.m):
                back = tables[x][current]
                if back not in seen:
                    seen.add(back)
                    best = max(best, (back & ind.range_mask).bit_count())
                    nxt.append(back)
        frontier = nxt
    return best


@dataclass(frozen=True)
class OracleReport:
    """Answers of the exhaustive searches that were requested."""

    reset_length: int | None = None
    reset_word: Word | None = None
    reset_exists: bool | None = None
    min_rank: int | None = None
    range_max_reducible: int | None = None

    def lines(self) -> list[str]:
        out = []
        if self.reset_exists is not None:
            if self.reset_exists:
                out.append(f"shortest_reset: len={self.reset_length} "
                           f"word={word_str(self.reset_word)}")
            else:
                out.append("shortest_reset: none")
        if self.min_rank is not None:
            out.append(f"minimal_rank: {self.min_rank}")
        if self.range_max_reducible is not None:
            out.append(f"max_reducible_in_range: {self.range_max_reducible}")
        return out
