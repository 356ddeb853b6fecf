"""Counter-based SplitMix64 streams and uniform k-subset sampling.

Stream ``i`` of seed ``s`` is the SplitMix64 sequence whose state starts at
the ``i``-th SplitMix64 output of ``s`` (0-based). Draw ``c`` of a stream is
therefore ``mix64(key_i + (c + 1) * GOLDEN)`` with
``key_i = mix64(s + (i + 1) * GOLDEN)``, all modulo 2**64. Every value is a
pure function of (seed, stream, counter), so samples can be produced in any
order or in parallel.

Test vectors (SplitMix64 seeded with 0): 0xE220A8397B1DCDAF,
0x6E789E6AA1B965F4, 0x06C45D188009454F.

A k-subset of [0, q-1] is drawn with Floyd's algorithm; each bounded integer
uses the top 32 bits of a draw with rejection, so ``q`` is limited to 2**32.
"""
from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB
MAX_UNIVERSE = 1 << 32
DEFAULT_SEED = 0xC0FFEE


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def splitmix64(seed: int, n: int) -> list[int]:
    """First ``n`` outputs of plain SplitMix64."""
    return [mix64(seed + (i + 1) * GOLDEN) for i in range(n)]


def stream_key(seed: int, index: int) -> int:
    return mix64(seed + (index + 1) * GOLDEN)


def draw(seed: int, index: int, counter: int) -> int:
    return mix64(stream_key(seed, index) + (counter + 1) * GOLDEN)


def _check(q: int, k: int) -> None:
    if k < 1 or q < k:
        raise ValueError(f"need 1 <= k <= q, got k={k}, q={q}")
    if q > MAX_UNIVERSE:
        raise ValueError(f"universe size {q} exceeds {MAX_UNIVERSE}")


def sample_kset_elements(q: int, k: int, index: int, seed: int) -> tuple[int, ...]:
    """Reference scalar sampler; see :func:`sample_ksets` for the batched one."""
    _check(q, k)
    key = stream_key(seed, index)
    counter = 0
    chosen: set[int] = set()
    for j in range(q - k, q):
        m = j + 1
        limit = (MAX_UNIVERSE // m) * m
        while True:
            u = mix64(key + (counter + 1) * GOLDEN) >> 32
            counter += 1
            if u < limit:
                break
        t = u % m
        chosen.add(j if t in chosen else t)
    return tuple(sorted(chosen))


def _mix64_np(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX2)
    return z ^ (z >> np.uint64(31))


def sample_ksets(q: int, k: int, start: int, stop: int, seed: int) -> np.ndarray:
    """Rows ``start..stop-1`` of the sample stream as a sorted (n, k) int64 array.

    Row ``i`` equals ``sample_kset_elements(q, k, i, seed)``.
    """
    _check(q, k)
    n = stop - start
    idx = np.arange(start, stop, dtype=np.uint64)
    golden = np.uint64(GOLDEN)
    with np.errstate(over="ignore"):
        keys = _mix64_np(np.uint64(seed & MASK64) + (idx + np.uint64(1)) * golden)
        counters = np.zeros(n, dtype=np.uint64)
        out = np.empty((n, k), dtype=np.int64)
        for col, j in enumerate(range(q - k, q)):
            m = j + 1
            limit = (MAX_UNIVERSE // m) * m
            u = np.empty(n, dtype=np.uint64)
            pending = np.arange(n)
            while len(pending):
                c = counters[pending] + np.uint64(1)
                vals = _mix64_np(keys[pending] + c * golden) >> np.uint64(32)
                counters[pending] = c
                ok = vals < np.uint64(limit)
                u[pending[ok]] = vals[ok]
                pending = pending[~ok]
            t = (u % np.uint64(m)).astype(np.int64)
            clash = (out[:, :col] == t[:, None]).any(axis=1) if col else np.zeros(n, bool)
            out[:, col] = np.where(clash, j, t)
    out.sort(axis=1)
    return out
