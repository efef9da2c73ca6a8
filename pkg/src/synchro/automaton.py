"""Complete deterministic automata over dense integer states and letters.

States are the indices 0..n-1 and letters the indices 0..m-1.  A set of
states is a plain int bitmask (bit q set = state q in the set) and a word
is a tuple of letter indices; the empty tuple is the empty word.  All
counting is exact integer arithmetic.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import DomainError, ParseError

Word = tuple[int, ...]

EPSILON: Word = ()


def mask_of(states: Iterable[int]) -> int:
    """Bitmask of a collection of state indices."""
    mask = 0
    for q in states:
        mask |= 1 << q
    return mask


def states_of(mask: int) -> tuple[int, ...]:
    """State indices of a bitmask, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_dot(vec: tuple[int, ...], mask: int) -> int:
    """Dot product of an integer vector with the characteristic vector of mask."""
    total = 0
    while mask:
        low = mask & -mask
        total += vec[low.bit_length() - 1]
        mask ^= low
    return total


def word_from_str(text: str) -> Word:
    """Parse a word written with letters a, b, c, ...; '' and 'ε' mean the empty word."""
    text = text.strip()
    if text in ("", "ε", "eps"):
        return EPSILON
    letters = []
    for ch in text:
        idx = string.ascii_lowercase.find(ch)
        if idx < 0:
            raise DomainError(f"cannot read letter {ch!r} in word {text!r}")
        letters.append(idx)
    return tuple(letters)


def word_str(word: Word) -> str:
    """Render a word with letters a, b, c, ...; the empty word prints as ε."""
    if not word:
        return "ε"
    return "".join(
        string.ascii_lowercase[x] if x < 26 else f"[{x}]" for x in word
    )


def set_str(mask: int) -> str:
    return "{" + ",".join(str(q) for q in states_of(mask)) + "}"


@dataclass(frozen=True)
class Automaton:
    """A complete deterministic transition table.

    ``delta[q][x]`` is the successor of state q under letter x.  Instances
    are immutable and hashable; every operation below is pure.
    """

    n: int
    m: int
    delta: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise DomainError(f"need n >= 1 and m >= 1, got n={self.n}, m={self.m}")
        if len(self.delta) != self.n:
            raise DomainError(f"expected {self.n} transition rows, got {len(self.delta)}")
        for q, row in enumerate(self.delta):
            if len(row) != self.m:
                raise DomainError(f"state {q}: expected {self.m} entries, got {len(row)}")
            for x, target in enumerate(row):
                if not 0 <= target < self.n:
                    raise DomainError(f"delta({q},{x}) = {target} is not a state")

    @cached_property
    def letter_preimages(self) -> tuple[tuple[int, ...], ...]:
        """Per letter, per state q: bitmask of the states that map to q."""
        tables = []
        for x in range(self.m):
            table = [0] * self.n
            for q in range(self.n):
                table[self.delta[q][x]] |= 1 << q
            tables.append(tuple(table))
        return tuple(tables)

    def _check_state(self, q: int) -> None:
        if not 0 <= q < self.n:
            raise DomainError(f"state {q} out of range 0..{self.n - 1}")

    def _check_word(self, word: Word) -> None:
        for x in word:
            if not 0 <= x < self.m:
                raise DomainError(f"letter {x} out of range 0..{self.m - 1}")

    def _check_mask(self, mask: int) -> None:
        if mask < 0 or mask >> self.n:
            raise DomainError(f"state set {bin(mask)} not within 0..{self.n - 1}")

    def step(self, q: int, x: int) -> int:
        return self.delta[q][x]

    def apply(self, q: int, word: Word) -> int:
        """State reached from q after reading word."""
        self._check_state(q)
        self._check_word(word)
        for x in word:
            q = self.delta[q][x]
        return q

    def image(self, mask: int, word: Word) -> int:
        """Image set of a state set under a word; never grows."""
        self._check_mask(mask)
        self._check_word(word)
        for x in word:
            new = 0
            rest = mask
            while rest:
                low = rest & -rest
                new |= 1 << self.delta[low.bit_length() - 1][x]
                rest ^= low
            mask = new
        return mask

    def preimage(self, mask: int, word: Word) -> int:
        """Set of states sent into mask by word."""
        self._check_mask(mask)
        self._check_word(word)
        pre = self.letter_preimages
        for x in reversed(word):
            new = 0
            rest = mask
            while rest:
                low = rest & -rest
                new |= pre[x][low.bit_length() - 1]
                rest ^= low
            mask = new
        return mask

    def row_vector(self, mask: int, word: Word) -> tuple[int, ...]:
        """The characteristic vector of mask pushed through the word's
        transition matrix, entry t counting the states of mask sent to t.

        For any target set S the identity
        ``mask_dot(row_vector(mask, v), S) == |preimage(S, v) & mask|.bit_count()``
        holds, and the entry sum always equals ``mask.bit_count()``.
        """
        self._check_mask(mask)
        self._check_word(word)
        vec = [1 if mask >> q & 1 else 0 for q in range(self.n)]
        for x in word:
            new = [0] * self.n
            row = self.delta
            for q, c in enumerate(vec):
                if c:
                    new[row[q][x]] += c
            vec = new
        return tuple(vec)

    def rank(self, word: Word) -> int:
        """Cardinality of the image of the full state set."""
        return self.image(full_mask(self.n), word).bit_count()


def _data_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, raw


def _int_row(lineno: int, raw: str, expected: int, what: str) -> list[int]:
    values = []
    col = 0
    for token in raw.split():
        col = raw.index(token, col) + 1
        try:
            values.append(int(token))
        except ValueError:
            raise ParseError(f"expected an integer, got {token!r}", lineno, col) from None
        col += len(token) - 1
    if len(values) != expected:
        raise ParseError(f"expected {expected} {what}, got {len(values)}", lineno)
    return values


def parse_automaton(text: str) -> Automaton:
    """Read the automaton text format: a header line ``n m`` followed by n
    rows of m successor states; blank lines and ``#`` comments are ignored."""
    lines = list(_data_lines(text))
    if not lines:
        raise ParseError("empty input", 1)
    lineno, raw = lines[0]
    n, m = _int_row(lineno, raw, 2, "header values")
    if n < 1 or m < 1:
        raise ParseError(f"need n >= 1 and m >= 1, got {n} {m}", lineno)
    if len(lines) != n + 1:
        raise ParseError(f"expected {n} transition rows, got {len(lines) - 1}",
                         lines[-1][0] if len(lines) > 1 else lineno)
    rows = []
    for q, (lineno, raw) in enumerate(lines[1:]):
        row = _int_row(lineno, raw, m, "entries")
        for x, target in enumerate(row):
            if not 0 <= target < n:
                col = raw.index(raw.split()[x]) + 1
                raise ParseError(f"state {target} out of range 0..{n - 1}", lineno, col)
        rows.append(tuple(row))
    return Automaton(n, m, tuple(rows))


def format_automaton(aut: Automaton) -> str:
    lines = [f"{aut.n} {aut.m}"]
    for row in aut.delta:
        lines.append(" ".join(str(t) for t in row))
    return "\n".join(lines) + "\n"


def automaton_to_dot(aut: Automaton, name: str = "automaton") -> str:
    """DOT rendering: one node per state, one labeled edge per transition."""
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for q in range(aut.n):
        lines.append(f"  {q} [shape=circle];")
    for q in range(aut.n):
        for x in range(aut.m):
            label = word_str((x,))
            lines.append(f'  {q} -> {aut.delta[q][x]} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
