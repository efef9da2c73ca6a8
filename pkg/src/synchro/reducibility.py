"""Reducible state sets, stable pairs and the stability congruence.

A set is reducible when some word collapses it to a singleton.  A pair of
states is stable when every joint image of the pair stays reducible; the
stable pairs form a congruence whose classes refine every behaviour of the
automaton.  Both relations are computed exactly by closures over the
n(n-1)/2 unordered state pairs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .automaton import EPSILON, Automaton, Word, mask_of, set_str, states_of
from .errors import CapExceededError, DomainError, TheoryError
from .independence import IndependentSet

MAX_RANGE_ENUMERATION = 24


@dataclass(frozen=True)
class PairTable:
    """Reducibility (and optionally stability) flags per unordered pair."""

    n: int
    reducible: frozenset
    stable: frozenset | None = None

    def is_reducible(self, p: int, q: int) -> bool:
        return p == q or (min(p, q), max(p, q)) in self.reducible

    def is_stable(self, p: int, q: int) -> bool:
        if self.stable is None:
            raise DomainError("stability was not computed for this table")
        return p == q or (min(p, q), max(p, q)) in self.stable

    def is_stable_set(self, mask: int) -> bool:
        return self.unstable_witness(mask) is None

    def unstable_witness(self, mask: int) -> tuple[int, int] | None:
        """Some non-stable pair inside mask, or None when the set is stable."""
        states = states_of(mask)
        for i, p in enumerate(states):
            for q in states[i + 1:]:
                if not self.is_stable(p, q):
                    return (p, q)
        return None


def _pair_successors(aut: Automaton):
    """For each unordered pair, its image pair per letter (None = collapsed)."""
    succ = {}
    for p, q in itertools.combinations(range(aut.n), 2):
        row = []
        for x in range(aut.m):
            a, b = aut.delta[p][x], aut.delta[q][x]
            row.append(None if a == b else (min(a, b), max(a, b)))
        succ[(p, q)] = row
    return succ


def reducible_pairs(aut: Automaton) -> PairTable:
    """Backward closure from collapsed pairs: a pair is reducible iff one
    letter takes it to equal states or to a reducible pair."""
    succ = _pair_successors(aut)
    preds = {pair: [] for pair in succ}
    reducible = set()
    worklist = []
    for pair, row in succ.items():
        for target in row:
            if target is None:
                if pair not in reducible:
                    reducible.add(pair)
                    worklist.append(pair)
            else:
                preds[target].append(pair)
    while worklist:
        pair = worklist.pop()
        for source in preds[pair]:
            if source not in reducible:
                reducible.add(source)
                worklist.append(source)
    return PairTable(aut.n, frozenset(reducible))


def stable_pairs(aut: Automaton) -> PairTable:
    """A pair is stable iff no irreducible pair is reachable from it in the
    pair graph; computed by propagating badness backward."""
    table = reducible_pairs(aut)
    succ = _pair_successors(aut)
    preds = {pair: [] for pair in succ}
    for pair, row in succ.items():
        for target in row:
            if target is not None:
                preds[target].append(pair)
    bad = {pair for pair in succ if pair not in table.reducible}
    worklist = list(bad)
    while worklist:
        pair = worklist.pop()
        for source in preds[pair]:
            if source not in bad:
                bad.add(source)
                worklist.append(source)
    stable = frozenset(pair for pair in succ if pair not in bad)
    return PairTable(aut.n, table.reducible, stable)


@dataclass(frozen=True)
class Congruence:
    """A partition of the states compatible with every letter."""

    class_of: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.classes)

    def class_mask(self, index: int) -> int:
        return mask_of(self.classes[index])


def partition_congruence(aut: Automaton, class_of) -> Congruence:
    """Build a Congruence from a state -> class map, checking compatibility."""
    groups = {}
    for q, c in enumerate(class_of):
        groups.setdefault(c, []).append(q)
    ordered = sorted(groups.values(), key=min)
    renumber = {}
    for i, members in enumerate(ordered):
        for q in members:
            renumber[q] = i
    cong = Congruence(tuple(renumber[q] for q in range(aut.n)),
                      tuple(tuple(ms) for ms in ordered))
    for members in cong.classes:
        for x in range(aut.m):
            targets = {cong.class_of[aut.delta[q][x]] for q in members}
            if len(targets) != 1:
                raise DomainError(
                    f"letter {x} splits class {set_str(mask_of(members))} "
                    f"across classes {sorted(targets)}")
    return cong


def stability_congruence(aut: Automaton) -> Congruence:
    """Partition into stability classes, re-verifying the congruence laws.

    Transitivity and letter-compatibility of the stable-pair relation are
    guaranteed facts; a violation is reported as TheoryError with a witness.
    """
    table = stable_pairs(aut)
    for p, q, r in itertools.combinations(range(aut.n), 3):
        pq, qr, pr = table.is_stable(p, q), table.is_stable(q, r), table.is_stable(p, r)
        if (pq and qr and not pr) or (pq and pr and not qr) or (pr and qr and not pq):
            raise TheoryError(f"stable pairs not transitive on states ({p},{q},{r})")
    for (p, q) in table.stable:
        for x in range(aut.m):
            if not table.is_stable(aut.delta[p][x], aut.delta[q][x]):
                raise TheoryError(
                    f"stability broken by letter {x} on pair ({p},{q})")

    class_of = list(range(aut.n))
    for (p, q) in sorted(table.stable):
        root = class_of[p]
        old = class_of[q]
        if old != root:
            for s in range(aut.n):
                if class_of[s] == old:
                    class_of[s] = root
    return partition_congruence(aut, class_of)


def is_reducible_set(aut: Automaton, mask: int) -> Word | None:
    """Shortest word collapsing the set to one state, or None.

    Breadth-first search over the images of the set; the letter order makes
    the returned word deterministic.
    """
    aut._check_mask(mask)
    if mask == 0:
        raise DomainError("the empty set cannot be collapsed")
    if mask.bit_count() == 1:
        return EPSILON
    seen = {mask}
    frontier = [(mask, EPSILON)]
    while frontier:
        nxt = []
        for current, word in frontier:
            for x in range(aut.m):
                img = aut.image(current, (x,))
                if img in seen:
                    continue
                seen.add(img)
                if img.bit_count() == 1:
                    return word + (x,)
                nxt.append((img, word + (x,)))
        frontier = nxt
    return None


def _subsets_by_size_desc(states: tuple[int, ...]):
    for size in range(len(states), 0, -1):
        for combo in itertools.combinations(states, size):
            yield mask_of(combo)


def max_reducible_in_range(aut: Automaton, ind: IndependentSet):
    """Largest reducible subset of the range.

    Returns (M, K, word) where K is the lexicographically smallest witness
    of the maximal cardinality M and word collapses it.  Subsets are
    enumerated largest-first; reducibility is downward closed, so the first
    hit is maximal.  Failed collapse searches mark their whole image orbit
    irreducible, which prunes the enumeration.
    """
    k = ind.k
    if k > MAX_RANGE_ENUMERATION:
        raise CapExceededError(
            f"range has {k} states; subset enumeration is capped at "
            f"{MAX_RANGE_ENUMERATION}")
    range_states = states_of(ind.range_mask)
    irreducible = set()
    for mask in _subsets_by_size_desc(range_states):
        if mask in irreducible:
            continue
        word = _collapse_with_memo(aut, mask, irreducible)
        if word is not None:
            return mask.bit_count(), mask, word
    raise TheoryError("no reducible subset found; singletons are always reducible")


def _collapse_with_memo(aut: Automaton, mask: int, irreducible: set) -> Word | None:
    if mask.bit_count() == 1:
        return EPSILON
    seen = {mask}
    frontier = [(mask, EPSILON)]
    while frontier:
        nxt = []
        for current, word in frontier:
            for x in range(aut.m):
                img = aut.image(current, (x,))
                if img in seen:
                    continue
                seen.add(img)
                if img.bit_count() == 1:
                    return word + (x,)
                if img in irreducible:
                    continue
                nxt.append((img, word + (x,)))
        frontier = nxt
    # Nothing in the image orbit collapses, so every orbit member is stuck too.
    irreducible.update(seen)
    return None


@dataclass(frozen=True)
class MaximalityReport:
    """Truth values of the four equivalent maximality conditions for a
    reducible subset K of the range: |K| = M; every pulled-back count is
    bounded by |K|; every pulled-back count equals |K|; K is maximal."""

    card_equals_max: bool
    counts_bounded: bool
    counts_constant: bool
    set_maximal: bool

    def all_agree(self) -> bool:
        return (self.card_equals_max == self.counts_bounded
                == self.counts_constant == self.set_maximal)


def check_clique_equivalences(aut: Automaton, ind: IndependentSet,
                              kmask: int) -> MaximalityReport:
    """Evaluate the four maximality conditions for K and assert they agree.

    The quantification over all words is decided exactly by closing the
    preimage sets K w^-1 under letter preimages (a finite fixed point).
    """
    if kmask == 0 or kmask & ~ind.range_mask:
        raise DomainError(f"K = {set_str(kmask)} must be a non-empty subset "
                          f"of the range {set_str(ind.range_mask)}")
    if is_reducible_set(aut, kmask) is None:
        raise DomainError(f"K = {set_str(kmask)} is not reducible")

    card = kmask.bit_count()
    m_value, _, _ = max_reducible_in_range(aut, ind)

    counts = set()
    seen = set()
    frontier = []
    for w in ind.words:
        start = aut.preimage(kmask, w)
        if start not in seen:
            seen.add(start)
            frontier.append(start)
    while frontier:
        current = frontier.pop()
        counts.add((current & ind.range_mask).bit_count())
        for x in range(aut.m):
            back = aut.preimage(current, (x,))
            if back not in seen:
                seen.add(back)
                frontier.append(back)

    maximal = True
    others = [q for q in states_of(ind.range_mask) if not kmask >> q & 1]
    for size in range(1, len(others) + 1):
        for extra in itertools.combinations(others, size):
            if is_reducible_set(aut, kmask | mask_of(extra)) is not None:
                maximal = False
                break
        if not maximal:
            break

    report = MaximalityReport(
        card_equals_max=(card == m_value),
        counts_bounded=all(c <= card for c in counts),
        counts_constant=all(c == card for c in counts),
        set_maximal=maximal,
    )
    if not report.all_agree():
        raise TheoryError(
            f"maximality conditions disagree on K={set_str(kmask)}: {report}")
    return report
