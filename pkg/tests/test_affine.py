import random
from collections import defaultdict
from itertools import combinations
from math import gcd

from hypothesis import given, settings, strategies as st

from sumsetlab.affine import (
    are_affinely_equivalent,
    canonical_block,
    canonicalize,
    colex_combinations,
    enumerate_canonical_sets,
    is_canonical,
)
from sumsetlab.core import IntSet, sumset_size


def orbit_key_brute(elems):
    """Smallest translated-and-scaled copy among A and its reflection."""
    out = []
    for cand in (elems, [-e for e in elems]):
        lo = min(cand)
        shifted = sorted(c - lo for c in cand)
        g = 0
        for s in shifted:
            g = gcd(g, s)
        out.append(tuple(s // g for s in shifted) if g else tuple(shifted))
    return min(out)


def test_canonicalize_examples():
    assert canonicalize(IntSet((6, 10, 18))).elements == (0, 1, 3)
    assert canonicalize(IntSet((0, 1, 3))).elements == (0, 1, 3)
    assert canonicalize(IntSet((42,))).elements == (0,)
    assert canonicalize(IntSet((-5,))).elements == (0,)


def test_equivalence_examples():
    assert are_affinely_equivalent(IntSet((0, 1, 3)), IntSet((5, 9, 11)))
    assert are_affinely_equivalent(IntSet((0, 1, 3)), IntSet((0, 2, 3)))
    assert not are_affinely_equivalent(IntSet((0, 1, 2)), IntSet((0, 1, 3)))
    assert not are_affinely_equivalent(IntSet((0, 1)), IntSet((0, 1, 2)))


def test_enumeration_examples():
    assert [c.elements for c in enumerate_canonical_sets(2, 3)] == [(0, 1)]
    assert [c.elements for c in enumerate_canonical_sets(3, 4)] == [(0, 1, 2), (0, 1, 3)]
    assert [c.elements for c in enumerate_canonical_sets(3, 5)] == [
        (0, 1, 2), (0, 1, 3), (0, 1, 4)
    ]


def test_enumeration_matches_brute_orbits():
    for k in range(2, 5):
        for q in range(k, 13):
            expected = sorted(
                c for c in combinations(range(q), k) if c[0] == 0 and orbit_key_brute(c) == c
            )
            got = [c.elements for c in enumerate_canonical_sets(k, q)]
            assert got == expected


def test_canonical_invariants():
    for k in range(2, 5):
        for C in enumerate_canonical_sets(k, 14):
            e = C.elements
            assert e[0] == 0
            g = 0
            for x in e[1:]:
                g = gcd(g, x)
            assert g == 1
            gaps = [b - a for a, b in zip(e, e[1:])]
            assert gaps <= gaps[::-1]
            assert is_canonical(C)


def test_blocks_match_generator():
    for k in range(2, 6):
        q = 16
        blocks = [tuple(r) for d in range(k - 1, q) for r in canonical_block(k, d).tolist()]
        assert sorted(blocks) == [c.elements for c in enumerate_canonical_sets(k, q)]


def test_colex_combinations():
    for n in range(0, 8):
        for r in range(0, 5):
            rows = [tuple(x) for x in colex_combinations(n, r).tolist()]
            assert sorted(rows) == list(combinations(range(n), r))
            assert rows == sorted(rows, key=lambda t: t[::-1])


def test_partition_and_completeness():
    for k in range(2, 5):
        for q in (k, 7, 12):
            classes = defaultdict(set)
            for c in combinations(range(q), k):
                classes[canonicalize(IntSet(c))].add(c)
            canon = list(enumerate_canonical_sets(k, q))
            for h in range(1, 5):
                for members in classes.values():
                    assert len({sumset_size(IntSet(m), h) for m in members}) == 1
                everything = {sumset_size(IntSet(c), h) for c in combinations(range(q), k)}
                assert everything == {sumset_size(C, h) for C in canon}
            # every subset's orbit has a representative no wider than itself
            reps = set(canon)
            for key, members in classes.items():
                assert key in reps
                assert key.max <= min(m[-1] - m[0] for m in members)


nonzero = st.integers(-9, 9).filter(bool)
sets = st.lists(st.integers(-40, 40), min_size=1, max_size=7, unique=True).map(IntSet.of)


@settings(max_examples=1000)
@given(sets, nonzero, st.integers(-100, 100))
def test_orbit_soundness_and_idempotence(A, scale, shift):
    C = canonicalize(A)
    assert canonicalize(C) == C
    assert canonicalize(A.affine_image(scale, shift)) == C


def test_random_orbits_exhaustive_small():
    rng = random.Random(11)
    for k in range(1, 5):
        for c in combinations(range(13), k):
            A = IntSet(c)
            C = canonicalize(A)
            assert canonicalize(C) == C
            scale = rng.choice([-5, -3, -2, -1, 1, 2, 4, 7])
            assert canonicalize(A.affine_image(scale, rng.randint(-50, 50))) == C
