"""Uniform-outdegree multigraphs and their colorings.

A graph holds, per vertex, the sorted multiset of its d out-neighbours
(repeats are genuine multi-edges).  A coloring assigns the letters 0..d-1
bijectively onto each vertex's out-slots, producing an Automaton whose
underlying multigraph is the original graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from .automaton import Automaton, _data_lines, _int_row
from .errors import CapExceededError, DomainError, ParseError

HAMILTONIAN_CAP = 24


@dataclass(frozen=True)
class AGWGraph:
    """Directed multigraph with every vertex of outdegree d.

    The name follows the usual road-coloring usage: the interesting
    instances are Aperiodic with a Global strongly connected structure and
    constant outdegree (checked by validate_agw, not by the constructor).
    """

    n: int
    d: int
    out: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1 or self.d < 1:
            raise DomainError(f"need n >= 1 and d >= 1, got n={self.n}, d={self.d}")
        if len(self.out) != self.n:
            raise DomainError(f"expected {self.n} adjacency rows, got {len(self.out)}")
        for v, row in enumerate(self.out):
            if len(row) != self.d:
                raise DomainError(f"vertex {v}: expected {self.d} slots, got {len(row)}")
            if tuple(sorted(row)) != row:
                raise DomainError(f"vertex {v}: slots must be sorted")
            for t in row:
                if not 0 <= t < self.n:
                    raise DomainError(f"vertex {v}: target {t} is not a vertex")


def graph_of(targets) -> AGWGraph:
    """Build a graph from unsorted per-vertex target lists."""
    rows = tuple(tuple(sorted(row)) for row in targets)
    if not rows:
        raise DomainError("graph needs at least one vertex")
    return AGWGraph(len(rows), len(rows[0]), rows)


def multigraph_of(aut: Automaton) -> AGWGraph:
    """Forget the letters of an automaton."""
    return graph_of(aut.delta)


def _reachable(n: int, adjacency, start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for t in adjacency[v]:
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return seen


def agw_failure(graph: AGWGraph) -> str | None:
    """None when the graph is strongly connected and aperiodic, else a
    message naming the violated property.

    Aperiodicity: the period of a strongly connected digraph is the gcd of
    level(u) + 1 - level(v) over all edges (u, v), levels from any BFS.
    """
    forward = [set(row) for row in graph.out]
    reached = _reachable(graph.n, forward, 0)
    if len(reached) != graph.n:
        missing = min(set(range(graph.n)) - reached)
        return f"strong connectivity: vertex {missing} unreachable from 0"
    backward = [set() for _ in range(graph.n)]
    for v, row in enumerate(graph.out):
        for t in row:
            backward[t].add(v)
    reached = _reachable(graph.n, backward, 0)
    if len(reached) != graph.n:
        missing = min(set(range(graph.n)) - reached)
        return f"strong connectivity: vertex 0 unreachable from {missing}"

    level = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for v in frontier:
            for t in forward[v]:
                if t not in level:
                    level[t] = level[v] + 1
                    nxt.append(t)
        frontier = nxt
    period = 0
    for v, row in enumerate(graph.out):
        for t in row:
            period = gcd(period, level[v] + 1 - level[t])
    period = abs(period)
    if period != 1:
        return f"aperiodicity: period {period}"
    return None


def validate_agw(graph: AGWGraph) -> None:
    failure = agw_failure(graph)
    if failure is not None:
        raise DomainError(failure)


def hamiltonian_path(graph: AGWGraph) -> tuple[int, ...] | None:
    """Lexicographically least Hamiltonian path (by start vertex, then by
    successive choices), or None.  Depth-first over (visited set, last
    vertex) with failure memoization."""
    n = graph.n
    if n > HAMILTONIAN_CAP:
        raise CapExceededError(
            f"Hamiltonian search refused: n={n} exceeds cap {HAMILTONIAN_CAP}")
    if n == 1:
        return (0,)
    succ = [sorted(set(row)) for row in graph.out]
    everything = (1 << n) - 1
    dead: set[tuple[int, int]] = set()

    def extend(last: int, visited: int, path: list[int]):
        if visited == everything:
            return tuple(path)
        if (visited, last) in dead:
            return None
        for t in succ[last]:
            if not visited >> t & 1:
                path.append(t)
                found = extend(t, visited | 1 << t, path)
                if found:
                    return found
                path.pop()
        dead.add((visited, last))
        return None

    for start in range(n):
        found = extend(start, 1 << start, [start])
        if found:
            return found
    return None


def path_plus_edge(graph: AGWGraph) -> tuple[tuple[int, ...], int]:
    """A Hamiltonian path (q0, ..., q_{n-1}) plus an edge (q_{n-1}, q) with
    q != q0.

    When every out-edge of the path's end returns to its start the path
    closes into a Hamiltonian cycle; aperiodicity then provides an edge that
    is not parallel to a cycle edge, and rotating the cycle to end at its
    source yields the wanted pair.
    """
    if graph.n < 2:
        raise DomainError("need at least 2 vertices")
    path = hamiltonian_path(graph)
    if path is None:
        raise DomainError("graph has no Hamiltonian path")
    last, start = path[-1], path[0]
    candidates = sorted(t for t in graph.out[last] if t != start)
    if candidates:
        return path, candidates[0]

    # Hamiltonian cycle: path + (last -> start).  Find (p, q) with q not the
    # cycle successor of p; if none existed every edge would be parallel to
    # the cycle and all cycle lengths would be multiples of n.
    cycle = list(path)
    succ_on_cycle = {cycle[i]: cycle[(i + 1) % graph.n] for i in range(graph.n)}
    for i, p in enumerate(cycle):
        off = sorted(t for t in graph.out[p] if t != succ_on_cycle[p])
        if off:
            rotated = tuple(cycle[i + 1:] + cycle[:i + 1])
            return rotated, off[0]
    raise DomainError("aperiodicity: all edges parallel to a Hamiltonian cycle")


def color_with_mono_path(graph: AGWGraph, path, q: int) -> Automaton:
    """Coloring whose letter 0 follows the path and the closing edge.

    Letter 0 reads q0 -> q1 -> ... -> q_{n-1} -> q; every vertex's remaining
    slots get letters 1..d-1 onto the leftover targets in ascending order.
    The letter-0 graph is then a single cycle through q with one tree
    hanging off it (so the coloring is single-cycle for letter 0 with cycle
    length n - index(q) < n whenever q != q0).
    """
    path = tuple(path)
    if sorted(path) != list(range(graph.n)):
        raise DomainError("path must visit every vertex exactly once")
    follow = {path[i]: path[i + 1] for i in range(graph.n - 1)}
    follow[path[-1]] = q
    rows = []
    for v in range(graph.n):
        slots = list(graph.out[v])
        try:
            slots.remove(follow[v])
        except ValueError:
            raise DomainError(
                f"edge ({v}, {follow[v]}) is not in the graph") from None
        rows.append((follow[v], *slots))
    return Automaton(graph.n, graph.d, tuple(rows))


def parse_graph(text: str) -> AGWGraph:
    """Read the graph text format: ``n d`` then n rows of d targets; repeats
    are multi-edges; ``#`` comments and blank lines are ignored."""
    lines = list(_data_lines(text))
    if not lines:
        raise ParseError("empty input", 1)
    lineno, raw = lines[0]
    n, d = _int_row(lineno, raw, 2, "header values")
    if n < 1 or d < 1:
        raise ParseError(f"need n >= 1 and d >= 1, got {n} {d}", lineno)
    if len(lines) != n + 1:
        raise ParseError(f"expected {n} adjacency rows, got {len(lines) - 1}",
                         lines[-1][0] if len(lines) > 1 else lineno)
    rows = []
    for v, (lineno, raw) in enumerate(lines[1:]):
        row = _int_row(lineno, raw, d, "targets")
        for x, target in enumerate(row):
            if not 0 <= target < n:
                col = raw.index(raw.split()[x]) + 1
                raise ParseError(f"vertex {target} out of range 0..{n - 1}",
                                 lineno, col)
        rows.append(tuple(sorted(row)))
    return AGWGraph(n, d, tuple(rows))


def format_graph(graph: AGWGraph) -> str:
    lines = [f"{graph.n} {graph.d}"]
    for row in graph.out:
        lines.append(" ".join(str(t) for t in row))
    return "\n".join(lines) + "\n"


def graph_to_dot(graph: AGWGraph, name: str = "graph") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for v in range(graph.n):
        lines.append(f"  {v} [shape=circle];")
    for v in range(graph.n):
        for t in graph.out[v]:
            lines.append(f"  {v} -> {t};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def simple_cycle_gcd(graph: AGWGraph, cap: int = 7) -> int:
    """gcd of the lengths of all simple cycles, by exhaustive walks.

    Reference implementation for cross-checking the BFS-level period; only
    meant for tiny graphs.
    """
    if graph.n > cap:
        raise CapExceededError(f"cycle enumeration capped at n={cap}")
    period = 0
    succ = [sorted(set(row)) for row in graph.out]

    def walk(origin: int, v: int, visited: set[int], length: int):
        nonlocal period
        for t in succ[v]:
            if t == origin:
                period = gcd(period, length + 1)
            elif t > origin and t not in visited:
                visited.add(t)
                walk(origin, t, visited, length + 1)
                visited.remove(t)

    for origin in range(graph.n):
        walk(origin, origin, set(), 0)
    return period
