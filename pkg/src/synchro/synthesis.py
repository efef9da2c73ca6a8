"""Bounded constructions with self-certifying output.

Each operation returns a Certificate carrying the synthesized word, the
closed-form length bound it is guaranteed to satisfy, and the replayed
image set proving the claim.  Construction fails loudly (TheoryError)
rather than ever emitting an unverified certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import bounds, oracle
from .automaton import EPSILON, Automaton, Word, full_mask, set_str, states_of
from .bounds import TOLERANCE, within
from .errors import DomainError, NotSynchronizingError, TheoryError
from .extension import find_extension
from .independence import IndependentSet, one_cluster
from .reducibility import stable_pairs


@dataclass(frozen=True)
class Certificate:
    """A synthesized word, its bound, and the replayed evidence.

    ``end`` is the image of ``start`` under ``word`` recomputed by direct
    simulation; ``verified`` records that the replay matched the claim and
    that the length respects the bound.
    """

    kind: str
    word: Word
    bound_name: str
    bound: float
    params: dict = field(compare=False)
    start: int = 0
    end: int = 0
    verified: bool = False
    fallback: str | None = None

    @property
    def length(self) -> int:
        return len(self.word)

    def verify(self, aut: Automaton) -> bool:
        """Re-run the simulation and the bound comparison."""
        return (aut.image(self.start, self.word) == self.end
                and within(self.length, self.bound))


def _certify(kind: str, aut: Automaton, start: int, word: Word, expect_end: int,
             bound_name: str, bound: float, params: dict,
             fallback: str | None = None) -> Certificate:
    end = aut.image(start, word)
    if end != expect_end:
        raise TheoryError(f"{kind}: replay reached {set_str(end)}, "
                          f"claimed {set_str(expect_end)}")
    if not within(len(word), bound):
        raise TheoryError(f"{kind}: word length {len(word)} exceeds "
                          f"{bound_name} = {bound}")
    return Certificate(kind, word, bound_name, bound, params,
                       start, end, True, fallback)


def _extension_loop(aut: Automaton, ind: IndependentSet, q: int) -> tuple[int, Word]:
    """Grow {q} through preimage steps until no strict growth exists.

    Returns (K, v) with |K| maximal among reducible subsets of the range and
    image(K, v) = {q}; v is a concatenation of the discovered segments.
    """
    kmask = 1 << q
    word: Word = EPSILON
    while True:
        found = find_extension(aut, ind, kmask)
        if found is None:
            return kmask, word
        v, index = found
        segment = v + ind.words[index]
        grown = aut.preimage(kmask, segment) & ind.range_mask
        if grown.bit_count() <= kmask.bit_count():
            raise TheoryError(
                f"extension step did not grow {set_str(kmask)} "
                f"(got {set_str(grown)})")
        kmask = grown
        word = segment + word


def _base_params(aut: Automaton, ind: IndependentSet) -> dict:
    return {"n": aut.n, "k": ind.k, "L": ind.max_len, "ell": ind.min_len}


def collapse_to_state(aut: Automaton, ind: IndependentSet,
                      q: int) -> tuple[int, Certificate]:
    """Maximal reducible subset K of the range collapsing onto q.

    The returned word lies in A*W ∪ {ε} and its length respects
    (M-1)(L+n+1) - k ln M.
    """
    if not ind.range_mask >> q & 1:
        raise DomainError(f"state {q} is not in the range {set_str(ind.range_mask)}")
    kmask, word = _extension_loop(aut, ind, q)
    m_value = kmask.bit_count()
    params = _base_params(aut, ind) | {"M": m_value}
    bound = bounds.collapse_bound(m_value, ind.k, aut.n, ind.max_len)
    cert = _certify("collapse", aut, kmask, word, 1 << q,
                    "max_reducible_collapse", bound, params)
    return kmask, cert


def collapse_stable_set(aut: Automaton, ind: IndependentSet,
                        cmask: int) -> Certificate:
    """Word collapsing a stable set, of length at most
    (M-1)(n+L+1) - k ln M + L."""
    aut._check_mask(cmask)
    if cmask == 0:
        raise DomainError("the stable set must be non-empty")
    witness = stable_pairs(aut).unstable_witness(cmask)
    if witness is not None:
        raise DomainError(f"set {set_str(cmask)} is not stable: "
                          f"pair {witness} is not stable")

    q_start = states_of(ind.range_mask)[0]
    kmask, loop_word = _extension_loop(aut, ind, q_start)
    m_value = kmask.bit_count()
    params = _base_params(aut, ind) | {"M": m_value}
    bound = bounds.stable_collapse_bound(m_value, ind.k, aut.n, ind.max_len)

    if cmask.bit_count() == 1:
        return _certify("collapse", aut, cmask, EPSILON, cmask,
                        "stable_set_collapse", bound, params)

    lead = None
    for w in sorted(ind.words, key=len):
        if aut.image(cmask, w) & kmask:
            lead = w
            break
    if lead is None:
        raise TheoryError(f"no word of the independent set sends "
                          f"{set_str(cmask)} into {set_str(kmask)}")
    moved = aut.image(cmask, lead)
    if moved & ~kmask:
        raise TheoryError(
            f"stable image {set_str(moved)} leaks outside the maximal "
            f"reducible set {set_str(kmask)}")
    word = lead + loop_word
    end = aut.image(cmask, word)
    if end.bit_count() != 1:
        raise TheoryError(f"collapse of {set_str(cmask)} reached "
                          f"{set_str(end)}, not a singleton")
    return _certify("collapse", aut, cmask, word, end,
                    "stable_set_collapse", bound, params)


def reset_word(aut: Automaton, ind: IndependentSet) -> Certificate:
    """Reset word of length at most (k-1)(n+L+1) - 2k ln((k+1)/2) + ell.

    Raises NotSynchronizingError (reporting the maximal reducible
    cardinality reached) when the growth loop stops before the full range.
    """
    q_start = states_of(ind.range_mask)[0]
    kmask, loop_word = _extension_loop(aut, ind, q_start)
    if kmask != ind.range_mask:
        raise NotSynchronizingError(
            f"not synchronizing: reducible subsets of the range max out at "
            f"{kmask.bit_count()} of {ind.k} states",
            max_reducible=kmask.bit_count())
    word = ind.shortest_word() + loop_word
    params = _base_params(aut, ind) | {"M": ind.k, "t": 1}
    bound = bounds.reset_bound(ind.k, aut.n, ind.max_len, ind.min_len)
    return _certify("reset", aut, full_mask(aut.n), word, 1 << q_start,
                    "reset_independent_set", bound, params)


def reset_word_1cluster(aut: Automaton,
                        cap: int = oracle.DEFAULT_CAP) -> Certificate:
    """Reset word of a synchronizing single-cycle-letter automaton within
    f(n) = 2n^2 - 4n + 1 - 2(n-1) ln(n/2).

    The cycle-spans-all-states case is circular, where exhaustive search
    (cap applies) is used instead of the growth loop and the (n-1)^2
    guarantee for circular automata is asserted; the certificate notes the
    fallback.
    """
    ind = one_cluster(aut)
    n = aut.n
    f_bound = bounds.one_cluster_reset_bound(n)
    if ind.k == n:
        found = oracle.shortest_reset(aut, cap)
        if found is None:
            raise NotSynchronizingError("not synchronizing", max_reducible=None)
        length, word = found
        if length > (n - 1) ** 2:
            raise TheoryError(
                f"circular automaton has shortest reset word of length "
                f"{length} > (n-1)^2 = {(n - 1) ** 2}")
        end = aut.image(full_mask(n), word)
        if end.bit_count() != 1:
            raise TheoryError("exhaustive search returned a non-reset word")
        params = _base_params(aut, ind) | {"M": ind.k, "t": 1}
        return _certify("reset", aut, full_mask(n), word, end,
                        "reset_one_cluster", f_bound, params,
                        fallback="exact-search")
    inner = reset_word(aut, ind)
    if not within(inner.length, f_bound):
        raise TheoryError(f"one-cluster reset word of length {inner.length} "
                          f"exceeds f({n}) = {f_bound}")
    return Certificate("reset", inner.word, "reset_one_cluster", f_bound,
                       inner.params, inner.start, inner.end, True)


def min_rank_word(aut: Automaton, ind: IndependentSet) -> tuple[int, Certificate]:
    """Word of the minimal rank t = k/M within
    ell + (k-t)(L+n+1) - tk ln(k/t).

    Accumulates pairwise distinct target states whose preimages slice the
    range into blocks of the maximal reducible cardinality M; divisibility
    k = tM is checked, not assumed.
    """
    word: Word = EPSILON
    targets: list[int] = []
    m_value: int | None = None
    while True:
        covered = 0
        for qt in targets:
            covered |= aut.preimage(1 << qt, word)
        covered &= ind.range_mask
        if m_value is not None and covered.bit_count() != len(targets) * m_value:
            raise TheoryError(
                f"target preimages cover {covered.bit_count()} range states, "
                f"expected {len(targets)} * {m_value}")
        if covered == ind.range_mask:
            break
        fresh = states_of(ind.range_mask & ~covered)[0]
        kmask, segment = _extension_loop(aut, ind, fresh)
        if m_value is None:
            m_value = kmask.bit_count()
        elif kmask.bit_count() != m_value:
            raise TheoryError(
                f"maximal reducible cardinality changed from {m_value} to "
                f"{kmask.bit_count()} across growth loops")
        new_target = aut.apply(fresh, word)
        if new_target in targets:
            raise TheoryError(f"duplicate minimal-rank target {new_target}")
        word = segment + word
        targets.append(new_target)
        for qt in targets:
            got = (aut.preimage(1 << qt, word) & ind.range_mask).bit_count()
            if got != m_value:
                raise TheoryError(
                    f"target {qt} pulls back to {got} range states, "
                    f"expected {m_value}")

    t = len(targets)
    if t * m_value != ind.k:
        raise TheoryError(f"range of size {ind.k} is not partitioned by "
                          f"{t} blocks of size {m_value}")
    full_word = ind.shortest_word() + word
    end = aut.image(full_mask(aut.n), full_word)
    if end.bit_count() != t:
        raise TheoryError(f"minimal-rank word has rank {end.bit_count()}, "
                          f"expected {t}")
    params = _base_params(aut, ind) | {"M": m_value, "t": t}
    bound = bounds.min_rank_bound(ind.k, t, aut.n, ind.max_len, ind.min_len)
    cert = _certify("minrank", aut, full_mask(aut.n), full_word, end,
                    "min_rank_word", bound, params)
    return t, cert


def collapse_stable_set_1cluster(aut: Automaton, cmask: int) -> Certificate:
    """Stable-set collapse with the single-cycle-letter bound
    2nk/t - n - 1 - k ln(k/t), tightened to n^2 - n - 1 - n ln(n/2) when the
    automaton is not synchronizing and that value is smaller."""
    ind = one_cluster(aut)
    inner = collapse_stable_set(aut, ind, cmask)
    m_value = inner.params["M"]
    if ind.k % m_value:
        raise TheoryError(f"range size {ind.k} not divisible by the maximal "
                          f"reducible cardinality {m_value}")
    t = ind.k // m_value
    bound = bounds.cluster_collapse_bound(aut.n, ind.k, t)
    name = "one_cluster_collapse"
    if t > 1:
        loose = bounds.nonsync_cluster_collapse_bound(aut.n)
        if loose < bound:
            bound, name = loose, "nonsync_one_cluster_collapse"
    if not within(inner.length, bound):
        raise TheoryError(f"collapse word of length {inner.length} exceeds "
                          f"{name} = {bound}")
    params = dict(inner.params) | {"t": t}
    return Certificate("collapse", inner.word, name, bound, params,
                       inner.start, inner.end, True)
