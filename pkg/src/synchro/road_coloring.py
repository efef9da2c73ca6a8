"""Synchronizing colorings of uniform-outdegree graphs with a Hamiltonian path.

The synthesis recurses on the stability quotient: color the graph along a
monochromatic Hamiltonian path, and if the coloring is not yet synchronizing,
recursively color the quotient graph, pull the quotient's letters back as a
per-class relabeling, and append either a stable-set collapse (many classes
of states) or a short walk to a singleton class (few classes).  Every proof
obligation along the way is asserted at runtime.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import bounds
from .automaton import (EPSILON, Automaton, Word, full_mask, set_str,
                        states_of)
from .bounds import TOLERANCE, within
from .errors import DomainError, TheoryError
from .graphs import (AGWGraph, agw_failure, color_with_mono_path,
                     format_graph, multigraph_of, path_plus_edge)
from .reducibility import Congruence, partition_congruence, stability_congruence, stable_pairs
from .synthesis import Certificate, collapse_stable_set_1cluster, reset_word_1cluster

Relabeling = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class RespectingRelabeling:
    """A letter permutation per congruence class.

    Reading letter x in the relabeled automaton from a state of class C
    moves along the original letter perm(C)(x), so the congruence survives
    the relabeling and words translate class-locally.
    """

    congruence: Congruence
    class_perms: tuple[tuple[int, ...], ...]

    def state_perms(self) -> Relabeling:
        return tuple(self.class_perms[c] for c in self.congruence.class_of)


def _check_perm(perm, m: int) -> tuple[int, ...]:
    perm = tuple(perm)
    if sorted(perm) != list(range(m)):
        raise DomainError(f"{perm} is not a permutation of 0..{m - 1}")
    return perm


def relabel(aut: Automaton, perms) -> Automaton:
    """Apply per-state letter permutations; the multigraph is unchanged."""
    perms = tuple(_check_perm(p, aut.m) for p in perms)
    if len(perms) != aut.n:
        raise DomainError(f"expected {aut.n} permutations, got {len(perms)}")
    rows = tuple(tuple(aut.delta[q][perms[q][x]] for x in range(aut.m))
                 for q in range(aut.n))
    return Automaton(aut.n, aut.m, rows)


def quotient(aut: Automaton, rho: Congruence) -> Automaton:
    """Automaton on the classes of a congruence."""
    if len(rho.class_of) != aut.n:
        raise DomainError("congruence does not cover the state set")
    rows = []
    for index, members in enumerate(rho.classes):
        row = []
        for x in range(aut.m):
            targets = {rho.class_of[aut.delta[q][x]] for q in members}
            if len(targets) != 1:
                raise DomainError(
                    f"not a congruence: letter {x} splits class {index} "
                    f"({set_str(sum(1 << q for q in members))}) across "
                    f"classes {sorted(targets)}")
            row.append(targets.pop())
        rows.append(tuple(row))
    return Automaton(rho.size, aut.m, tuple(rows))


def induce_relabeling(aut: Automaton, rho: Congruence,
                      quotient_perms) -> RespectingRelabeling:
    """Lift a relabeling of the quotient automaton to one respecting rho.

    Both guarantees are asserted: rho stays a congruence of the relabeled
    automaton, and quotient-then-relabel equals relabel-then-quotient.
    """
    perms = tuple(_check_perm(p, aut.m) for p in quotient_perms)
    if len(perms) != rho.size:
        raise DomainError(f"expected {rho.size} class permutations, got {len(perms)}")
    rel = RespectingRelabeling(rho, perms)
    recolored = relabel(aut, rel.state_perms())
    try:
        partition_congruence(recolored, rho.class_of)
    except DomainError as exc:
        raise TheoryError(f"relabeling broke the congruence: {exc}") from exc
    if quotient(recolored, rho) != relabel(quotient(aut, rho), perms):
        raise TheoryError("quotient of the relabeled automaton differs from "
                          "the relabeled quotient")
    return rel


def translate_word(aut: Automaton, rel: RespectingRelabeling,
                   class_index: int, word: Word) -> Word:
    """Word u with |u| = |word| acting on the given class, in the relabeled
    automaton, exactly as word acts in the original one (state by state)."""
    quot = quotient(aut, rel.congruence)
    inverses = []
    for perm in rel.class_perms:
        inv = [0] * aut.m
        for x, y in enumerate(perm):
            inv[y] = x
        inverses.append(tuple(inv))
    current = class_index
    out = []
    for y in word:
        out.append(inverses[current][y])
        current = quot.delta[current][y]
    return tuple(out)


def match_relabeling(base: Automaton, target: Automaton) -> Relabeling:
    """Per-state permutations turning base into target; both must color the
    same multigraph.  Repeated targets are matched smallest letter first."""
    if multigraph_of(base) != multigraph_of(target):
        raise DomainError("the automata do not color the same multigraph")
    perms = []
    for q in range(base.n):
        used = [False] * base.m
        perm = []
        for x in range(base.m):
            wanted = target.delta[q][x]
            choice = next(y for y in range(base.m)
                          if not used[y] and base.delta[q][y] == wanted)
            used[choice] = True
            perm.append(choice)
        perms.append(tuple(perm))
    return tuple(perms)


def mono_path_state(aut: Automaton, letter: int) -> int | None:
    """A state from which every state is reachable reading only the letter,
    i.e. the start of a monochromatic Hamiltonian path; None if there is none."""
    for q in range(aut.n):
        seen = set()
        s = q
        while s not in seen:
            seen.add(s)
            s = aut.delta[s][letter]
        if len(seen) == aut.n:
            return q
    return None


def _two_vertex_coloring(graph: AGWGraph) -> tuple[Automaton, Word]:
    """Aperiodicity gives a loop; send both vertices to it with letter 0."""
    loop = next((v for v in range(2) if v in graph.out[v]), None)
    if loop is None:
        raise TheoryError("aperiodic 2-vertex graph without a loop")
    rows = []
    for v in range(2):
        slots = list(graph.out[v])
        if loop not in slots:
            raise TheoryError(f"strongly connected graph lacks edge ({v}, {loop})")
        slots.remove(loop)
        rows.append((loop, *slots))
    return Automaton(2, graph.d, tuple(rows)), (0,)


def _bfs_word(aut: Automaton, source: int, target: int) -> Word:
    """Shortest word routing source to target, letters tried in index order."""
    if source == target:
        return EPSILON
    parent = {source: None}
    frontier = [source]
    while frontier:
        nxt = []
        for q in frontier:
            for x in range(aut.m):
                t = aut.delta[q][x]
                if t not in parent:
                    parent[t] = (q, x)
                    if t == target:
                        word = []
                        node = t
                        while parent[node] is not None:
                            node, letter = parent[node]
                            word.append(letter)
                        word.reverse()
                        return tuple(word)
                    nxt.append(t)
        frontier = nxt
    raise DomainError(f"state {target} unreachable from {source}")


def synthesize_coloring(graph: AGWGraph) -> tuple[Automaton, Certificate]:
    """Synchronizing coloring of a strongly connected aperiodic graph with a
    Hamiltonian path, with a reset word of length at most
    f(n) = 2n^2 - 4n + 1 - 2(n-1) ln(n/2).

    The certificate's params carry one audit entry per recursion level:
    (n, class count, case, slack of the proof-step inequality).
    """
    failure = agw_failure(graph)
    if failure is not None:
        raise DomainError(failure)
    n = graph.n
    if n < 2:
        raise DomainError("need at least 2 vertices")
    f_n = bounds.one_cluster_reset_bound(n)

    if n == 2:
        coloring, word = _two_vertex_coloring(graph)
        cert = _road_certificate(graph, coloring, word, f_n, levels=())
        return coloring, cert

    path, q = path_plus_edge(graph)
    coloring = color_with_mono_path(graph, path, q)
    table = stable_pairs(coloring)
    if not table.stable:
        raise TheoryError(
            "coloring along a monochromatic Hamiltonian path has no "
            f"non-trivial stable pair; instance:\n{format_graph(graph)}")
    rho = stability_congruence(coloring)

    if rho.size == 1:
        inner = reset_word_1cluster(coloring)
        cert = _road_certificate(graph, coloring, inner.word, f_n, levels=())
        return coloring, cert

    k_prime = rho.size
    quot = quotient(coloring, rho)
    qgraph = multigraph_of(quot)
    qfail = agw_failure(qgraph)
    if qfail is not None:
        raise TheoryError(f"stability quotient is not a road-colorable "
                          f"graph: {qfail}\ninstance:\n{format_graph(graph)}")
    sub_coloring, sub_cert = synthesize_coloring(qgraph)
    u = sub_cert.word

    perms = match_relabeling(quot, sub_coloring)
    if relabel(quot, perms) != sub_coloring:
        raise TheoryError("letter matching failed to reproduce the quotient coloring")
    rel = induce_relabeling(coloring, rho, perms)
    recolored = relabel(coloring, rel.state_perms())

    c_set = recolored.image(full_mask(n), u)
    c_class = rho.class_of[states_of(c_set)[0]]
    if c_set & ~rho.class_mask(c_class):
        raise TheoryError(f"image {set_str(c_set)} of the quotient reset word "
                          f"straddles several stability classes")
    if table.unstable_witness(c_set) is not None:
        raise TheoryError(f"image {set_str(c_set)} is not stable")

    if n >= 2 * k_prime:
        collapse = collapse_stable_set_1cluster(coloring, c_set)
        v = collapse.word
        loose = bounds.nonsync_cluster_collapse_bound(n)
        if not within(len(v), loose):
            raise TheoryError(f"stable-set collapse of length {len(v)} exceeds "
                              f"{loose}")
        v_prime = translate_word(coloring, rel, c_class, v)
        if recolored.image(c_set, v_prime) != coloring.image(c_set, v):
            raise TheoryError("translated word acts differently on the stable set")
        word = u + v_prime
        margin = f_n - (bounds.one_cluster_reset_bound(k_prime) + loose)
        case = "collapse"
    else:
        singles = [i for i, members in enumerate(rho.classes) if len(members) == 1]
        if not singles:
            raise TheoryError(f"no singleton stability class though "
                              f"n={n} < 2*{k_prime}")
        target_class = singles[0]
        source_class = states_of(sub_cert.end)[0]
        v = _bfs_word(sub_coloring, source_class, target_class)
        if len(v) > k_prime - 1:
            raise TheoryError(f"quotient walk of length {len(v)} exceeds "
                              f"{k_prime - 1}")
        word = u + v
        margin = (f_n - 1) - (bounds.one_cluster_reset_bound(k_prime) + k_prime - 1)
        case = "walk-to-singleton"
    if margin < -TOLERANCE:
        raise TheoryError(f"recursion inequality violated at n={n}, "
                          f"k'={k_prime} ({case}): slack {margin}")

    levels = tuple(sub_cert.params.get("levels", ())) + (
        {"n": n, "classes": k_prime, "case": case, "slack": margin},)
    cert = _road_certificate(graph, recolored, word, f_n, levels)
    return recolored, cert


def _road_certificate(graph: AGWGraph, coloring: Automaton, word: Word,
                      f_n: float, levels) -> Certificate:
    if multigraph_of(coloring) != graph:
        raise TheoryError("coloring does not match the input multigraph")
    start = full_mask(coloring.n)
    end = coloring.image(start, word)
    if end.bit_count() != 1:
        raise TheoryError(f"road-coloring word reached {set_str(end)}, "
                          "not a singleton")
    if not within(len(word), f_n):
        raise TheoryError(f"road-coloring word of length {len(word)} exceeds "
                          f"f({graph.n}) = {f_n}")
    params = {"n": graph.n, "d": graph.d, "levels": tuple(levels)}
    return Certificate("coloring", word, "road_coloring_hamiltonian", f_n,
                       params, start, end, True)
