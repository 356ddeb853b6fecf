"""Ranges of h-fold sumset sizes over k-element sets.

``exhaustive_range`` searches one canonical representative per affine
orbit inside a window [0, q-1]; sizes are affine invariants, so nothing is
lost. When the window reaches ``complexity_bound(h, k)`` the result is the
exact range.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Iterable, Optional

import numpy as np

from .affine import canonical_block, candidate_count
from .core import EnumerationTooLargeError, SumsetError, batch_sumset_sizes, multiset_count

RANGE_GUARD = 10**9


class OutOfHypothesisError(SumsetError):
    """The window bound is only proved for h >= 3 and k >= 3."""


@dataclass(frozen=True)
class RangeResult:
    h: int
    k: int
    window_q: int
    achieved: frozenset[int]
    missing: frozenset[int]
    proof_grade: bool

    def rows(self) -> list[tuple[int, bool]]:
        """(size, achieved) for every size in the admissible interval."""
        lo, hi = min_size(self.h, self.k), max_size(self.h, self.k)
        return [(t, t in self.achieved) for t in range(lo, hi + 1)]


def min_size(h: int, k: int) -> int:
    if h < 1 or k < 1:
        raise SumsetError(f"h and k must be positive, got h={h}, k={k}")
    return h * (k - 1) + 1


def max_size(h: int, k: int) -> int:
    if h < 1 or k < 1:
        raise SumsetError(f"h and k must be positive, got h={h}, k={k}")
    return multiset_count(h, k)


def complexity_bound(h: int, k: int) -> int:
    """4 (8h)^(k-1); any window [0, N-1] with N at least this gives the full range."""
    if h < 3 or k < 3:
        raise OutOfHypothesisError(f"the window bound needs h >= 3 and k >= 3, got h={h}, k={k}")
    return 4 * (8 * h) ** (k - 1)


def closed_form_range(h: int, k: int) -> Optional[frozenset[int]]:
    """The exact range where a closed form is known, else None."""
    if h < 1 or k < 1:
        raise SumsetError(f"h and k must be positive, got h={h}, k={k}")
    if k == 1:
        return frozenset({1})
    if h == 1:
        return frozenset({k})
    if k == 2:
        return frozenset({h + 1})
    if h == 2:
        return frozenset(range(2 * k - 1, comb(k + 1, 2) + 1))
    if k == 3:
        return frozenset(comb(h + 2, 2) - comb(t, 2) for t in range(1, h + 1))
    return None


def _make_result(h: int, k: int, q: int, achieved: Iterable[int]) -> RangeResult:
    achieved = frozenset(int(t) for t in achieved)
    full = set(range(min_size(h, k), max_size(h, k) + 1))
    if h >= 3 and k >= 3:
        proof_grade = q >= complexity_bound(h, k)
    else:
        proof_grade = False
    return RangeResult(h, k, q, achieved, frozenset(full - achieved), proof_grade)


def _diameter_sizes(h: int, k: int, d: int) -> np.ndarray:
    rows = canonical_block(k, d)
    if not len(rows):
        return np.zeros(0, dtype=np.int64)
    return np.unique(batch_sumset_sizes(rows, h))


def exhaustive_range(
    h: int, k: int, q: int, guard: int = RANGE_GUARD, threads: int = 1
) -> RangeResult:
    """Sizes |hA| over canonical k-sets A inside [0, q-1].

    Work is sharded by diameter; the union of per-shard size sets does not
    depend on scheduling.
    """
    if h < 1 or k < 2 or q < k:
        raise SumsetError(f"need h >= 1, k >= 2, q >= k; got h={h}, k={k}, q={q}")
    estimate = candidate_count(k, q)
    if estimate > guard:
        raise EnumerationTooLargeError(
            f"window [0,{q - 1}] has {estimate} candidate {k}-sets, above the guard of {guard}",
            estimate,
        )
    diameters = range(k - 1, q)
    achieved: set[int] = set()
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            for sizes in pool.map(lambda d: _diameter_sizes(h, k, d), diameters):
                achieved.update(sizes.tolist())
    else:
        for d in diameters:
            achieved.update(_diameter_sizes(h, k, d).tolist())
    return _make_result(h, k, q, achieved)


def tetrahedral(j: int) -> int:
    """Tet_j = C(j+2, 3), the sum of the first j triangular numbers."""
    if j < 0:
        raise ValueError(f"j must be nonnegative, got {j}")
    return comb(j + 2, 3)


def predicted_popular_sizes(h: int, include_bh: bool = True) -> list[int]:
    """C(h+3,3) - Tet_j in descending order.

    ``include_bh`` starts at j = 0 (the B_h size itself, length h); otherwise
    j runs over [1, h-1].
    """
    if h < 2:
        raise ValueError(f"h must be at least 2, got {h}")
    top = comb(h + 3, 3)
    start = 0 if include_bh else 1
    return [top - tetrahedral(j) for j in range(start, h)]
