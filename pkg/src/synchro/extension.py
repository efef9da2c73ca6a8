"""Growth steps for reducible subsets of a range.

Given a reducible K strictly smaller than the maximal reducible cardinality,
some short word v and some word w of the independent set satisfy
|K(vw)^-1 ∩ R| > |K|.  The search walks words in length order but only keeps
a word when its range row vector leaves the span of the vectors kept so far;
the violation test is linear in that vector, so the pruning loses nothing
and the first hit has globally minimal length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd

from .automaton import Automaton, Word, full_mask, mask_dot, set_str
from .errors import DomainError, TheoryError
from .independence import IndependentSet


def exact_rank(rows) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    matrix = [list(row) for row in rows]
    if not matrix:
        return 0
    n_rows, n_cols = len(matrix), len(matrix[0])
    rank = 0
    prev_pivot = 1
    for col in range(n_cols):
        pivot_row = next((i for i in range(rank, n_rows) if matrix[i][col]), None)
        if pivot_row is None:
            continue
        matrix[rank], matrix[pivot_row] = matrix[pivot_row], matrix[rank]
        pivot = matrix[rank][col]
        for i in range(rank + 1, n_rows):
            factor = matrix[i][col]
            for j in range(n_cols):
                matrix[i][j] = (matrix[i][j] * pivot - factor * matrix[rank][j]) // prev_pivot
        prev_pivot = pivot
        rank += 1
        if rank == n_rows:
            break
    return rank


class _SpanBasis:
    """Incremental exact row-echelon basis over the integers."""

    def __init__(self):
        self.rows = []  # (pivot column, reduced integer vector)

    def contains_or_add(self, vec) -> bool:
        """True when vec already lies in the span; otherwise insert it."""
        v = list(vec)
        for pivot, row in self.rows:
            if v[pivot]:
                scale, factor = row[pivot], v[pivot]
                v = [a * scale - b * factor for a, b in zip(v, row)]
        pivot = next((j for j, a in enumerate(v) if a), None)
        if pivot is None:
            return True
        g = 0
        for a in v:
            g = gcd(g, a)
        if v[pivot] < 0:
            g = -g
        v = [a // g for a in v]
        self.rows.append((pivot, v))
        self.rows.sort(key=lambda item: item[0])
        return False


@dataclass(frozen=True)
class LinearSystem:
    """Rows k*char(K w^-1) - |K|*ones, one per word of the independent set.

    A range row vector x solves the system exactly when every pulled-back
    count |K(vw)^-1 ∩ R| equals |K| for the word v that produced x.
    """

    rows: tuple[tuple[int, ...], ...]
    preimage_masks: tuple[int, ...]
    range_size: int
    subset_size: int

    def solves(self, vec) -> bool:
        return all(sum(a * b for a, b in zip(row, vec)) == 0 for row in self.rows)


def build_system(aut: Automaton, ind: IndependentSet, kmask: int) -> LinearSystem:
    if kmask & ~ind.range_mask:
        raise DomainError(f"K = {set_str(kmask)} is not a subset of the range "
                          f"{set_str(ind.range_mask)}")
    k = ind.k
    card = kmask.bit_count()
    masks = tuple(aut.preimage(kmask, w) for w in ind.words)
    rows = []
    for pmask in masks:
        rows.append(tuple(k * (pmask >> q & 1) - card for q in range(aut.n)))
    return LinearSystem(tuple(rows), masks, k, card)


def rank_lower_bound(k: int, card: int) -> float:
    """max{(k-|K|)/|K|, |K|/(k-|K|)}; requires 0 < |K| < k."""
    return max((k - card) / card, card / (k - card))


def system_rank(system: LinearSystem, n: int) -> int:
    """Exact rank; asserts the guaranteed lower bound when it applies."""
    rank = exact_rank(system.rows)
    card = system.subset_size
    k = system.range_size
    if 0 < card < k:
        usable = all(mask not in (0, full_mask(n)) for mask in system.preimage_masks)
        if usable and rank < rank_lower_bound(k, card):
            raise TheoryError(
                f"system rank {rank} below guaranteed bound "
                f"{rank_lower_bound(k, card)} (k={k}, |K|={card})")
    return rank


def find_extension(aut: Automaton, ind: IndependentSet,
                   kmask: int) -> tuple[Word, int] | None:
    """Shortest (v, i) with |K(v w_i)^-1 ∩ R| > |K|, or None when K already
    has the maximal reducible cardinality.

    Words are explored in length order, letters in index order; a word is
    expanded only when its range row vector grows the span seen so far.
    Exhausting that span without a violation certifies maximality.  Found
    words are checked against the length bound n - max{(k-|K|)/|K|, |K|/(k-|K|)}.
    """
    if kmask == 0:
        raise DomainError("K must be non-empty")
    if kmask & ~ind.range_mask:
        raise DomainError(f"K = {set_str(kmask)} is not a subset of the range")
    k = ind.k
    card = kmask.bit_count()
    pmasks = [aut.preimage(kmask, w) for w in ind.words]

    basis = _SpanBasis()
    start = aut.row_vector(ind.range_mask, ())
    basis.contains_or_add(start)
    frontier = [((), start)]
    while frontier:
        nxt = []
        for word, vec in frontier:
            counts = [mask_dot(vec, pmask) for pmask in pmasks]
            if any(c != card for c in counts):
                index = next((i for i, c in enumerate(counts) if c > card), None)
                if index is None:
                    raise TheoryError(
                        f"counts {counts} differ from |K|={card} but none exceeds it")
                if card < k:
                    limit = aut.n - rank_lower_bound(k, card)
                    if len(word) > limit + 1e-9:
                        raise TheoryError(
                            f"extension word of length {len(word)} exceeds the "
                            f"bound {limit}")
                return word, index
            for x in range(aut.m):
                child = _push_vector(aut, vec, x)
                if not basis.contains_or_add(child):
                    nxt.append((word + (x,), child))
        frontier = nxt
    return None


def _push_vector(aut: Automaton, vec, letter: int):
    new = [0] * aut.n
    delta = aut.delta
    for q, c in enumerate(vec):
        if c:
            new[delta[q][letter]] += c
    return tuple(new)
