"""Exact h-fold sumset arithmetic on finite sets of integers.

Two kernels compute sumsets. The bit-vector kernel stores a translated copy
of the set as a Python integer (bit ``i`` set iff ``min + i`` is present) and
adds sets by OR-ing shifted copies; it is used whenever the translated span
fits in ``BITVECTOR_MAX_SPAN`` bits. The merge kernel sorts and deduplicates
pairwise sums with numpy and handles everything else.

Representation counts follow the multiset model: a multiset of size ``h``
drawn from ``A = (a_1, ..., a_k)`` is an exponent vector ``x`` with
``sum(x) == h`` and its value is the dot product ``x . A``.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Mapping

import numpy as np

INT64_MAX = 2**63 - 1
INT64_MIN = -(2**63)
BITVECTOR_MAX_SPAN = 1 << 26
HISTOGRAM_GUARD = 10**8

KERNELS = ("auto", "bitvector", "merge")


class SumsetError(ValueError):
    """Base class for invalid sumset requests."""


class OverflowRiskError(SumsetError):
    """A requested sum could leave the signed 64-bit range."""


class EnumerationTooLargeError(SumsetError):
    """An enumeration would exceed its workload guard."""

    def __init__(self, message: str, estimate: int):
        super().__init__(message)
        self.estimate = estimate


@dataclass(frozen=True)
class IntSet:
    """A nonempty finite set of 64-bit integers in strictly increasing order."""

    elements: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(int(e) for e in self.elements)
        object.__setattr__(self, "elements", elems)
        if not elems:
            raise SumsetError("an IntSet needs at least one element")
        for e in elems:
            if not INT64_MIN <= e <= INT64_MAX:
                raise OverflowRiskError(f"element {e} is outside the 64-bit range")
        for a, b in zip(elems, elems[1:]):
            if a >= b:
                raise SumsetError(f"elements must be strictly increasing: {a} >= {b}")

    @classmethod
    def of(cls, values: Iterable[int]) -> "IntSet":
        """Build from unsorted values; duplicates are rejected."""
        vals = sorted(int(v) for v in values)
        for a, b in zip(vals, vals[1:]):
            if a == b:
                raise SumsetError(f"duplicate element {a}")
        return cls(tuple(vals))

    @classmethod
    def interval(cls, lo: int, hi: int) -> "IntSet":
        return cls(tuple(range(lo, hi + 1)))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, n: object) -> bool:
        i = bisect_left(self.elements, n)
        return i < len(self.elements) and self.elements[i] == n

    @property
    def min(self) -> int:
        return self.elements[0]

    @property
    def max(self) -> int:
        return self.elements[-1]

    def affine_image(self, scale: int, shift: int) -> "IntSet":
        """Return ``scale * A + shift``; ``scale`` must be nonzero."""
        if scale == 0:
            raise SumsetError("scale must be nonzero")
        return IntSet.of(scale * a + shift for a in self.elements)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


@dataclass(frozen=True)
class SumsetParams:
    h: int
    k: int

    def __post_init__(self):
        if self.h < 1 or self.k < 1:
            raise SumsetError(f"h and k must be positive, got h={self.h}, k={self.k}")


@dataclass(frozen=True)
class RepHistogram:
    """The representation function r_{A,h}: value -> number of multisets."""

    h: int
    k: int
    counts: Mapping[int, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def support(self) -> IntSet:
        return IntSet(tuple(sorted(self.counts)))

    def __getitem__(self, n: int) -> int:
        return self.counts.get(n, 0)


def _check_fold(A: IntSet, h: int) -> None:
    if h < 1:
        raise SumsetError(f"h must be positive, got {h}")
    bound = h * max(abs(A.min), abs(A.max))
    if bound > INT64_MAX:
        raise OverflowRiskError(
            f"{h} * max|a| = {bound} does not fit in a signed 64-bit integer"
        )


def _check_pair(A: IntSet, B: IntSet) -> None:
    for s in (A.min + B.min, A.max + B.max):
        if not INT64_MIN <= s <= INT64_MAX:
            raise OverflowRiskError(f"sum {s} does not fit in a signed 64-bit integer")


# -- bit-vector kernel -------------------------------------------------------

def _to_bits(offsets: Iterable[int]) -> int:
    bits = 0
    for o in offsets:
        bits |= 1 << o
    return bits


def _shift_or(bits: int, offsets: Iterable[int]) -> int:
    out = 0
    for o in offsets:
        out |= bits << o
    return out


def _bits_to_offsets(bits: int) -> np.ndarray:
    raw = np.frombuffer(bits.to_bytes((bits.bit_length() + 7) // 8, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little")).astype(np.int64)


def _fold_bits(A: IntSet, h: int) -> int:
    offsets = [a - A.min for a in A.elements]
    acc = 1
    for _ in range(h):
        acc = _shift_or(acc, offsets)
    return acc


# -- merge kernel ------------------------------------------------------------

def _merge_add(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if len(x) < len(y):
        x, y = y, x
    parts = [x + b for b in y]
    return np.unique(np.concatenate(parts))


def _fold_merge(A: IntSet, h: int) -> np.ndarray:
    # untranslated: partial sums stay within h * max|a|, spans may not
    base = np.asarray(A.elements, dtype=np.int64)
    acc = np.zeros(1, dtype=np.int64)
    for _ in range(h):
        acc = _merge_add(acc, base)
    return acc


def _pick_kernel(span: int, kernel: str) -> str:
    if kernel not in KERNELS:
        raise SumsetError(f"unknown kernel {kernel!r}; choose from {KERNELS}")
    if kernel == "auto":
        return "bitvector" if span <= BITVECTOR_MAX_SPAN else "merge"
    return kernel


def add_sumsets(A: IntSet, B: IntSet, kernel: str = "auto") -> IntSet:
    """Return ``A + B = {a + b}``."""
    _check_pair(A, B)
    span = (A.max - A.min) + (B.max - B.min)
    if _pick_kernel(span, kernel) == "bitvector":
        bits = _shift_or(_to_bits(a - A.min for a in A), (b - B.min for b in B))
        offsets = _bits_to_offsets(bits)
    else:
        return IntSet(tuple(int(v) for v in _merge_add(
            np.asarray(A.elements, dtype=np.int64), np.asarray(B.elements, dtype=np.int64)
        )))
    shift = A.min + B.min
    return IntSet(tuple(int(o) + shift for o in offsets))


def h_fold_sumset(A: IntSet, h: int, kernel: str = "auto") -> IntSet:
    """Return hA, the set of sums of ``h`` not necessarily distinct elements."""
    _check_fold(A, h)
    if _pick_kernel(h * (A.max - A.min), kernel) == "bitvector":
        offsets = _bits_to_offsets(_fold_bits(A, h))
    else:
        return IntSet(tuple(int(v) for v in _fold_merge(A, h)))
    shift = h * A.min
    return IntSet(tuple(int(o) + shift for o in offsets))


def sumset_size(A: IntSet, h: int, kernel: str = "auto") -> int:
    """Return |hA| without materializing the elements when possible."""
    _check_fold(A, h)
    if _pick_kernel(h * (A.max - A.min), kernel) == "bitvector":
        return _fold_bits(A, h).bit_count()
    return len(_fold_merge(A, h))


def multiset_count(h: int, k: int) -> int:
    """Number of size-``h`` multisets from ``k`` symbols, C(h+k-1, h).

    This equals C(h+k-1, k-1), the maximum of |hA| over k-sets.
    """
    if h < 0 or k < 1:
        raise SumsetError(f"need h >= 0 and k >= 1, got h={h}, k={k}")
    n = comb(h + k - 1, h)
    if n > INT64_MAX:
        raise OverflowRiskError(f"C({h + k - 1},{h}) exceeds the 64-bit range")
    return n


def iter_multisets(h: int, k: int) -> Iterator[tuple[int, ...]]:
    """Yield multisets as nondecreasing index tuples, in colex order.

    Odometer: bump the leftmost position that may grow without passing its
    right neighbour (or ``k - 1`` for the last one) and zero everything left
    of it.
    """
    if h == 0:
        yield ()
        return
    idx = [0] * h
    while True:
        yield tuple(idx)
        j = 0
        while j < h:
            ceiling = idx[j + 1] if j + 1 < h else k - 1
            if idx[j] < ceiling:
                break
            j += 1
        if j == h:
            return
        idx[j] += 1
        for i in range(j):
            idx[i] = 0


@lru_cache(maxsize=64)
def _multiset_indices(h: int, k: int) -> np.ndarray:
    # colex: group by largest index c, the rest is a colex prefix of size h-1
    if h == 0:
        return np.zeros((1, 0), dtype=np.int64)
    prev = _multiset_indices(h - 1, k)
    blocks = []
    for c in range(k):
        head = prev[: comb(h - 1 + c, h - 1)]
        blocks.append(np.hstack([head, np.full((len(head), 1), c, dtype=np.int64)]))
    out = np.vstack(blocks)
    out.setflags(write=False)
    return out


def multiset_indices(h: int, k: int) -> np.ndarray:
    """All multisets of size ``h`` over ``range(k)`` as a (C(h+k-1,h), h) array.

    Rows are nondecreasing index tuples in the same colex order as
    :func:`iter_multisets`.
    """
    return _multiset_indices(h, k)


@lru_cache(maxsize=64)
def exponent_matrix(h: int, k: int) -> np.ndarray:
    """The set X_{h,k} of exponent vectors, one row per multiset (colex order)."""
    idx = _multiset_indices(h, k)
    X = np.zeros((len(idx), k), dtype=np.int64)
    rows = np.repeat(np.arange(len(idx)), h)
    np.add.at(X, (rows, idx.ravel()), 1)
    X.setflags(write=False)
    return X


def _multiset_sums(values: np.ndarray, h: int) -> np.ndarray:
    # sums of colex multisets, built without materializing index rows
    sums = np.zeros(1, dtype=np.int64)
    for level in range(1, h + 1):
        blocks = [sums[: comb(level - 1 + c, level - 1)] + v for c, v in enumerate(values)]
        sums = np.concatenate(blocks)
    return sums


def representation_histogram(A: IntSet, h: int, guard: int = HISTOGRAM_GUARD) -> RepHistogram:
    """Return r_{A,h}: for each n in hA, how many multisets of size h sum to n."""
    _check_fold(A, h)
    k = len(A)
    total = multiset_count(h, k)
    if total > guard:
        raise EnumerationTooLargeError(
            f"C({h + k - 1},{h}) = {total} multisets exceeds the guard of {guard}", total
        )
    values, counts = np.unique(
        _multiset_sums(np.asarray(A.elements, dtype=np.int64), h), return_counts=True
    )
    return RepHistogram(h, k, {int(v): int(c) for v, c in zip(values, counts)})


def is_bh_set(A: IntSet, h: int) -> bool:
    """True iff every element of hA has exactly one representation."""
    return sumset_size(A, h) == multiset_count(h, len(A))


def interval_rep2(k: int, n: int) -> int:
    """r_{A,2}(n) for the interval A = [0, k-1], by the piecewise formula."""
    if k < 5:
        raise SumsetError(f"the piecewise formula needs k >= 5, got {k}")
    if n < 0 or n > 2 * k - 2:
        return 0
    if n <= k - 1:
        return n // 2 + 1
    return (2 * k - 2 - n) // 2 + 1


def collision_counts(A: IntSet, h: int, guard: int = HISTOGRAM_GUARD) -> tuple[int, int]:
    """Return (#n with r_{A,h}(n) = 2, #n with r_{A,h}(n) >= 3)."""
    counts = representation_histogram(A, h, guard).counts.values()
    eq2 = sum(1 for c in counts if c == 2)
    ge3 = sum(1 for c in counts if c >= 3)
    return eq2, ge3


# -- batched sizes for many sets of equal size -----------------------------

_BATCH_CELLS = 1 << 22


def batch_sumset_sizes(sets: np.ndarray, h: int) -> np.ndarray:
    """|hA| for every row of an (m, k) integer array of strictly increasing sets.

    Each row is evaluated as the number of distinct values of ``x . A`` over
    ``x`` in X_{h,k}. Callers are responsible for keeping ``h * max|a|`` small;
    rows are translated to start at 0 first.
    """
    sets = np.asarray(sets, dtype=np.int64)
    m, k = sets.shape
    X = exponent_matrix(h, k)
    out = np.empty(m, dtype=np.int64)
    step = max(1, _BATCH_CELLS // len(X))
    for lo in range(0, m, step):
        block = sets[lo : lo + step]
        block = block - block[:, :1]
        sums = block @ X.T
        sums.sort(axis=1)
        out[lo : lo + step] = 1 + np.count_nonzero(sums[:, 1:] != sums[:, :-1], axis=1)
    return out


def batch_collision_counts(sets: np.ndarray, h: int) -> np.ndarray:
    """(count_eq2, count_ge3) for every row of an (m, k) set array."""
    sets = np.asarray(sets, dtype=np.int64)
    m, k = sets.shape
    X = exponent_matrix(h, k)
    M = len(X)
    out = np.empty((m, 2), dtype=np.int64)
    step = max(1, _BATCH_CELLS // M)
    for lo in range(0, m, step):
        block = sets[lo : lo + step]
        block = block - block[:, :1]
        sums = block @ X.T
        sums.sort(axis=1)
        rows = len(block)
        new_run = np.ones_like(sums, dtype=bool)
        new_run[:, 1:] = sums[:, 1:] != sums[:, :-1]
        run_id = np.cumsum(new_run, axis=1) - 1
        flat = (np.arange(rows)[:, None] * M + run_id).ravel()
        lengths = np.bincount(flat, minlength=rows * M).reshape(rows, M)
        out[lo : lo + rows, 0] = np.count_nonzero(lengths == 2, axis=1)
        out[lo : lo + rows, 1] = np.count_nonzero(lengths >= 3, axis=1)
    return out
