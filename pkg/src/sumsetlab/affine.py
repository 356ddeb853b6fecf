"""Canonical representatives of sets under x -> scale * x + shift.

The canonical form of A has minimum 0, coprime nonzero elements, and a gap
sequence (first differences) no larger, lexicographically, than the gap
sequence of its reflection ``max - A``. Since every canonical set starts at
0, comparing gap sequences and comparing element lists give the same order.
"""
from __future__ import annotations

from itertools import combinations
from math import comb, gcd
from typing import Iterator

import numpy as np

from .core import IntSet

CanonicalSet = IntSet


def _gaps(elems: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(b - a for a, b in zip(elems, elems[1:]))


def _is_canonical_tail(elems: tuple[int, ...]) -> bool:
    gaps = _gaps(elems)
    return gaps <= gaps[::-1]


def canonicalize(A: IntSet) -> CanonicalSet:
    """Return the canonical member of A's affine orbit."""
    if len(A) == 1:
        return IntSet((0,))
    shifted = [a - A.min for a in A]
    g = 0
    for a in shifted:
        g = gcd(g, a)
    scaled = tuple(a // g for a in shifted)
    gaps = _gaps(scaled)
    if gaps[::-1] < gaps:
        top = scaled[-1]
        scaled = tuple(top - a for a in reversed(scaled))
    return IntSet(scaled)


def is_canonical(A: IntSet) -> bool:
    return canonicalize(A) == A


def are_affinely_equivalent(A: IntSet, B: IntSet) -> bool:
    return len(A) == len(B) and canonicalize(A) == canonicalize(B)


def enumerate_canonical_sets(k: int, q: int) -> Iterator[CanonicalSet]:
    """Yield every canonical k-set inside [0, q-1], in lexicographic order."""
    if k < 2 or q < k:
        raise ValueError(f"need k >= 2 and q >= k, got k={k}, q={q}")
    for tail in combinations(range(1, q), k - 1):
        g = 0
        for t in tail:
            g = gcd(g, t)
            if g == 1:
                break
        if g != 1:
            continue
        elems = (0,) + tail
        if _is_canonical_tail(elems):
            yield IntSet(elems)


# -- batched enumeration for the range search --------------------------------

def colex_combinations(n: int, r: int) -> np.ndarray:
    """All r-subsets of range(n) as a (C(n,r), r) array in colex order.

    In colex order the subsets of range(t) form a prefix, which lets each
    level reuse the previous one by slicing.
    """
    if r == 0:
        return np.zeros((1, 0), dtype=np.int64)
    if r > n:
        return np.zeros((0, r), dtype=np.int64)
    if r == 1:
        return np.arange(n, dtype=np.int64)[:, None]
    prev = colex_combinations(n - 1, r - 1)
    blocks = []
    for top in range(r - 1, n):
        head = prev[: comb(top, r - 1)]
        blocks.append(np.hstack([head, np.full((len(head), 1), top, dtype=np.int64)]))
    return np.vstack(blocks)


def canonical_block(k: int, diameter: int) -> np.ndarray:
    """All canonical k-sets with max element ``diameter``, as an (m, k) array."""
    d = diameter
    if k == 2:
        return np.array([[0, 1]], dtype=np.int64) if d == 1 else np.zeros((0, 2), np.int64)
    middle = colex_combinations(d - 1, k - 2) + 1
    m = len(middle)
    rows = np.hstack([np.zeros((m, 1), np.int64), middle, np.full((m, 1), d, np.int64)])
    g = np.gcd.reduce(rows[:, 1:], axis=1)
    rows = rows[g == 1]
    gaps = np.diff(rows, axis=1)
    cmp = gaps - gaps[:, ::-1]
    nz = cmp != 0
    first = np.argmax(nz, axis=1)
    lead = cmp[np.arange(len(cmp)), first]
    keep = ~nz.any(axis=1) | (lead < 0)
    return rows[keep]


def candidate_count(k: int, q: int) -> int:
    """Number of k-sets containing 0 inside [0, q-1]; the search cost before filtering."""
    return comb(q - 1, k - 1)
