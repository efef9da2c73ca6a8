"""Closed-form length bounds attached to certificates.

All bounds are evaluated in double precision; synthesized word lengths are
integers, so comparisons allow a 1e-9 slack without admitting false passes.
"""

from __future__ import annotations

import math

TOLERANCE = 1e-9


def collapse_bound(m_value: int, k: int, n: int, max_len: int) -> float:
    """Collapsing a maximal reducible subset of the range onto one state:
    (M-1)(L+n+1) - k ln M."""
    return (m_value - 1) * (max_len + n + 1) - k * math.log(m_value)


def stable_collapse_bound(m_value: int, k: int, n: int, max_len: int) -> float:
    """Collapsing a stable set: the collapse bound plus one leading word."""
    return collapse_bound(m_value, k, n, max_len) + max_len


def reset_bound(k: int, n: int, max_len: int, min_len: int) -> float:
    """Reset word of a synchronizing automaton with an independent set:
    (k-1)(n+L+1) - 2k ln((k+1)/2) + ell."""
    return (k - 1) * (n + max_len + 1) - 2 * k * math.log((k + 1) / 2) + min_len


def one_cluster_reset_bound(n: int) -> float:
    """Reset word of a synchronizing single-cycle-letter automaton:
    f(n) = 2n^2 - 4n + 1 - 2(n-1) ln(n/2)."""
    return 2 * n * n - 4 * n + 1 - 2 * (n - 1) * math.log(n / 2)


def min_rank_bound(k: int, t: int, n: int, max_len: int, min_len: int) -> float:
    """Word of minimal rank t: ell + (k-t)(L+n+1) - tk ln(k/t)."""
    return min_len + (k - t) * (max_len + n + 1) - t * k * math.log(k / t)


def cluster_collapse_bound(n: int, k: int, t: int) -> float:
    """Stable-set collapse in a single-cycle-letter automaton:
    2nk/t - n - 1 - k ln(k/t)."""
    return 2 * n * k / t - n - 1 - k * math.log(k / t)


def nonsync_cluster_collapse_bound(n: int) -> float:
    """Stable-set collapse in a non-synchronizing single-cycle-letter
    automaton: n^2 - n - 1 - n ln(n/2)."""
    return n * n - n - 1 - n * math.log(n / 2)


def harmonic_min_sum(k: int) -> float:
    """sum over j=1..k-1 of 1/min(j, k-j); at least 2 ln((k+1)/2)."""
    return sum(1 / min(j, k - j) for j in range(1, k))


def within(length: int, bound: float) -> bool:
    return length <= bound + TOLERANCE
