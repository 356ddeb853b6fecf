"""Size distributions of h-fold sumsets over families of k-subsets of [0, q-1].

Exhaustive runs visit every k-subset (colex order, sharded by top element);
sampled runs draw ``n_samples`` independent subsets from the counter-based
streams in :mod:`sumsetlab.rng`. Shard results are merged by adding
histograms, so the output is identical for any number of workers.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterable, Optional

import numpy as np

from .affine import colex_combinations
from .core import (
    EnumerationTooLargeError,
    IntSet,
    SumsetError,
    batch_collision_counts,
    batch_sumset_sizes,
)
from .ranges import max_size, min_size, predicted_popular_sizes
from .rng import DEFAULT_SEED, sample_kset_elements, sample_ksets

EXHAUSTIVE_GUARD = 10**9
SAMPLE_CHUNK = 1 << 14
MODES = ("exhaustive", "sampled")


@dataclass(frozen=True)
class ExperimentSpec:
    h: int
    k: int
    q: int
    mode: str = "exhaustive"
    n_samples: Optional[int] = None
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.h < 1 or self.k < 1:
            raise SumsetError(f"h and k must be positive, got h={self.h}, k={self.k}")
        if self.q < self.k:
            raise SumsetError(f"universe [0,{self.q - 1}] has fewer than k={self.k} elements")
        if self.mode not in MODES:
            raise SumsetError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.mode == "sampled":
            if self.n_samples is None or self.n_samples < 1:
                raise SumsetError("sampled mode needs a positive sample count")
            if not 0 <= self.seed < 2**64:
                raise SumsetError(f"seed must be an unsigned 64-bit integer, got {self.seed}")

    @property
    def population(self) -> int:
        """Number of sets the run examines."""
        if self.mode == "exhaustive":
            return comb(self.q, self.k)
        return self.n_samples


@dataclass(frozen=True)
class SizeDistribution:
    spec: ExperimentSpec
    counts: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, t: int) -> int:
        return self.counts.get(t, 0)

    def table(self) -> list[tuple[int, int]]:
        """(t, S(t)) for every t in the admissible interval, zeros included."""
        lo, hi = min_size(self.spec.h, self.spec.k), max_size(self.spec.h, self.spec.k)
        return [(t, self[t]) for t in range(lo, hi + 1)]


@dataclass(frozen=True)
class CollisionReport:
    spec: ExperimentSpec
    pairs: list[tuple[int, int]] = field(repr=False)

    @property
    def colliding(self) -> list[tuple[int, int]]:
        """Pairs of the sets that are not B_h-sets (some count is nonzero)."""
        return [p for p in self.pairs if p != (0, 0)]

    @property
    def aggregate(self) -> tuple[int, int, int]:
        """Sets with count_ge3 <, =, > count_eq2."""
        less = sum(1 for eq2, ge3 in self.pairs if ge3 < eq2)
        equal = sum(1 for eq2, ge3 in self.pairs if ge3 == eq2)
        return less, equal, len(self.pairs) - less - equal


def _parallel_map(fn: Callable, items: Iterable, threads: int) -> list:
    items = list(items)
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(threads) as pool:
            return list(pool.map(fn, items))
    return [fn(it) for it in items]


def _exhaustive_shard(k: int, top: int) -> np.ndarray:
    low = colex_combinations(top, k - 1)
    return np.hstack([low, np.full((len(low), 1), top, dtype=np.int64)])


def _sample_ranges(n: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + SAMPLE_CHUNK, n)) for lo in range(0, n, SAMPLE_CHUNK)]


def _shards(spec: ExperimentSpec, guard: int) -> tuple[list, Callable[[object], np.ndarray]]:
    if spec.mode == "exhaustive":
        if spec.population > guard:
            raise EnumerationTooLargeError(
                f"C({spec.q},{spec.k}) = {spec.population} subsets exceeds the guard of {guard}",
                spec.population,
            )
        return list(range(spec.k - 1, spec.q)), lambda top: _exhaustive_shard(spec.k, top)
    return _sample_ranges(spec.n_samples), lambda r: sample_ksets(
        spec.q, spec.k, r[0], r[1], spec.seed
    )


def iter_sets(spec: ExperimentSpec, guard: int = EXHAUSTIVE_GUARD) -> Iterable[np.ndarray]:
    """Yield the sets of a run as (m, k) blocks, in run order."""
    shards, make = _shards(spec, guard)
    for s in shards:
        yield make(s)


def run_distribution(
    spec: ExperimentSpec, threads: int = 1, guard: int = EXHAUSTIVE_GUARD
) -> SizeDistribution:
    """Count, for every t, how many sets of the run have |hA| = t."""
    shards, make = _shards(spec, guard)
    hi = max_size(spec.h, spec.k)

    def work(shard) -> np.ndarray:
        sets = make(shard)
        if spec.k == 1:
            return np.bincount(np.ones(len(sets), dtype=np.int64), minlength=hi + 1)
        return np.bincount(batch_sumset_sizes(sets, spec.h), minlength=hi + 1)

    total = np.zeros(hi + 1, dtype=np.int64)
    for hist in _parallel_map(work, shards, threads):
        total += hist
    counts = {int(t): int(c) for t, c in enumerate(total) if c}
    return SizeDistribution(spec, counts)


def sample_kset(q: int, k: int, index: int, seed: int = DEFAULT_SEED) -> IntSet:
    """The ``index``-th sampled k-subset of [0, q-1] for ``seed``."""
    return IntSet(sample_kset_elements(q, k, index, seed))


class InsufficientKeysError(ValueError):
    pass


def popular_sizes(dist: SizeDistribution, m: int) -> list[tuple[int, int]]:
    """The ``m`` most frequent sizes, by descending count, ties to larger t."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    if len(dist.counts) < m:
        raise InsufficientKeysError(
            f"distribution has {len(dist.counts)} distinct sizes, fewer than {m}"
        )
    ranked = sorted(dist.counts.items(), key=lambda tc: (-tc[1], -tc[0]))
    return ranked[:m]


def frequent_sizes(dist: SizeDistribution, threshold: float = 1e-3) -> list[tuple[int, int]]:
    """Sizes whose share of the mass exceeds ``threshold``, ascending in t."""
    total = dist.total
    return sorted((t, c) for t, c in dist.counts.items() if c > threshold * total)


def successive_differences(sizes: list[int]) -> list[int]:
    """|s[i+1] - s[i]| for a strictly monotone list."""
    diffs = [b - a for a, b in zip(sizes, sizes[1:])]
    if diffs and not (all(d > 0 for d in diffs) or all(d < 0 for d in diffs)):
        raise ValueError(f"sizes are not strictly monotone: {sizes}")
    return [abs(d) for d in diffs]


@dataclass(frozen=True)
class PopularRow:
    h: int
    sizes: list[int]
    counts: list[int]
    predicted: list[int]

    @property
    def differences(self) -> list[int]:
        return successive_differences(self.sizes)

    @property
    def match(self) -> bool:
        return self.sizes == self.predicted


def popularity_row(dist: SizeDistribution) -> PopularRow:
    """Top-h sizes of a distribution (ascending) against the predicted pattern."""
    h = dist.spec.h
    top = sorted(popular_sizes(dist, h))
    predicted = sorted(predicted_popular_sizes(h))
    return PopularRow(h, [t for t, _ in top], [c for _, c in top], predicted)


def popularity_study(
    hs: Iterable[int],
    k: int = 4,
    q: int = 10**4,
    n_samples: int = 10**5,
    seed: int = DEFAULT_SEED,
    threads: int = 1,
) -> list[PopularRow]:
    rows = []
    for h in hs:
        spec = ExperimentSpec(h, k, q, "sampled", n_samples, seed)
        rows.append(popularity_row(run_distribution(spec, threads)))
    return rows


def run_collision_study(
    spec: ExperimentSpec, threads: int = 1, guard: int = EXHAUSTIVE_GUARD
) -> CollisionReport:
    """Per-set (count_eq2, count_ge3) of r_{A,h} over the sets of a run."""
    shards, make = _shards(spec, guard)

    def work(shard) -> np.ndarray:
        return batch_collision_counts(make(shard), spec.h)

    blocks = _parallel_map(work, shards, threads)
    pairs = [(int(a), int(b)) for block in blocks for a, b in block]
    return CollisionReport(spec, pairs)


def collision_summary(report: CollisionReport) -> dict:
    less, equal, greater = report.aggregate
    n = len(report.pairs)
    return {
        "sets": n,
        "ge3_less_than_eq2": less,
        "ge3_equal_eq2": equal,
        "ge3_greater_than_eq2": greater,
        "fraction_less": less / n if n else 0.0,
        "colliding_sets": len(report.colliding),
        "fraction_less_among_colliding": (
            less / len(report.colliding) if report.colliding else 0.0
        ),
        "pair_counts": dict(Counter(report.pairs)),
    }
