"""Matroid families, axioms, rank, and the greedy algorithm."""

import random

import pytest

from matroid_shift import (
    GraphicMatroid,
    InputError,
    LinearGf2Matroid,
    OverflowGuardError,
    PartitionMatroid,
    Subset01,
    TransversalMatroid,
    UniformMatroid,
    full_rank,
    greedy_max,
    is_independent,
    matroid_from_json,
    matroid_to_json,
    rank,
)
from corpora import TRIANGLE, family_corpus, random_matroid


def all_independent_masks(m):
    return [
        mask for mask in range(1 << m.d)
        if m._indep(frozenset(i for i in range(m.d) if mask >> i & 1))
    ]


def assert_matroid_axioms(m):
    indep = set(all_independent_masks(m))
    assert 0 in indep, "empty set must be independent"
    for a in indep:
        for i in range(m.d):
            if a >> i & 1:
                assert a & ~(1 << i) in indep, "downward closure violated"
    members = sorted(indep)
    for a in members:
        for b in members:
            if bin(a).count("1") >= bin(b).count("1"):
                continue
            extra = b & ~a
            assert any(a | (1 << i) in indep for i in range(m.d) if extra >> i & 1), \
                "exchange axiom violated"


@pytest.mark.parametrize("m", family_corpus(max_d=4))
def test_axioms_small_corpus(m):
    assert_matroid_axioms(m)


def test_axioms_larger_instances():
    rng = random.Random(3)
    bigger = [
        UniformMatroid(8, 3),
        GraphicMatroid(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (1, 3), (2, 4)]),
        PartitionMatroid([0, 1, 2, 0, 1, 2, 0, 1], [2, 1, 1]),
        LinearGf2Matroid([[rng.randint(0, 1) for _ in range(4)] for _ in range(7)]),
        TransversalMatroid([[0, 1], [1, 2], [0], [2], [0, 2], [1]], 3),
    ]
    for m in bigger:
        assert_matroid_axioms(m)


def test_graphic_triangle_examples():
    assert is_independent(TRIANGLE, Subset01([1, 1, 0]))
    assert not is_independent(TRIANGLE, Subset01([1, 1, 1]))
    assert rank(TRIANGLE, Subset01([1, 1, 1])) == 2


def test_uniform_examples():
    u = UniformMatroid(4, 2)
    assert not is_independent(u, Subset01([1, 1, 1, 0]))
    assert rank(u, Subset01.full(4)) == 2


def test_gf2_rank_example():
    # columns (1,0), (0,1), (1,1): any two are a basis, all three dependent
    m = LinearGf2Matroid([[1, 0], [0, 1], [1, 1]])
    assert rank(m, Subset01.full(3)) == 2
    assert not is_independent(m, Subset01([1, 1, 1]))
    assert is_independent(m, Subset01([1, 0, 1]))


def test_rank_matches_bruteforce():
    rng = random.Random(1)
    for _ in range(30):
        m = random_matroid(rng, dmax=6)
        expect = max(bin(mask).count("1") for mask in all_independent_masks(m))
        assert full_rank(m) == expect


def test_greedy_examples():
    assert greedy_max(UniformMatroid(3, 1), [5, 3, 7]).indices() == (2,)
    got = greedy_max(TRIANGLE, [4, 2, 5])
    assert got.indices() == (0, 2)  # e3 then e1, total weight 9
    basis = greedy_max(UniformMatroid(3, 2), [-1, -2, -3], force_basis=True)
    assert basis.indices() == (0, 1)


def test_greedy_positive_weights_returns_basis():
    rng = random.Random(2)
    for _ in range(25):
        m = random_matroid(rng, dmax=6)
        w = [rng.randint(1, 9) for _ in range(m.d)]
        assert greedy_max(m, w).size() == full_rank(m)


def test_greedy_matches_bruteforce():
    rng = random.Random(4)
    for _ in range(40):
        m = random_matroid(rng, dmax=6)
        w = [rng.randint(-9, 9) for _ in range(m.d)]
        got = greedy_max(m, w)
        got_weight = sum(w[i] for i in got.indices())
        best = max(
            sum(w[i] for i in range(m.d) if mask >> i & 1)
            for mask in all_independent_masks(m)
        )
        assert got_weight == best


def test_greedy_invariant_under_monotone_relabeling():
    rng = random.Random(5)
    for _ in range(20):
        m = random_matroid(rng, dmax=6)
        w = [rng.randint(-9, 9) for _ in range(m.d)]
        scaled = [7 * x + 3 for x in w]  # strictly increasing map keeps ties
        assert greedy_max(m, w, force_basis=True) == greedy_max(m, scaled, force_basis=True)
        # independent-set mode needs positivity preserved as well
        pos = [x + 20 for x in w]
        assert greedy_max(m, pos) == greedy_max(m, [3 * x for x in pos])


def test_dimension_mismatch_rejected():
    with pytest.raises(InputError):
        is_independent(TRIANGLE, Subset01([1, 0]))
    with pytest.raises(InputError):
        greedy_max(TRIANGLE, [1, 2])
    with pytest.raises(InputError):
        Subset01([0, 2, 1])


def test_weight_guard():
    with pytest.raises(OverflowGuardError):
        greedy_max(UniformMatroid(2, 1), [2**61, 5])


def test_invalid_descriptions_rejected():
    with pytest.raises(InputError):
        GraphicMatroid(2, [(1, 3)])
    with pytest.raises(InputError):
        UniformMatroid(3, 4)
    with pytest.raises(InputError):
        PartitionMatroid([0, 2], [1, 1])
    with pytest.raises(InputError):
        TransversalMatroid([[0], [1]], 1)
    with pytest.raises(InputError):
        LinearGf2Matroid([[1, 0], [1]])


def test_json_round_trip():
    for m in family_corpus(max_d=4):
        clone = matroid_from_json(matroid_to_json(m))
        assert clone.kind == m.kind and clone.d == m.d
        for mask in range(1 << m.d):
            s = Subset01([(mask >> i) & 1 for i in range(m.d)])
            assert is_independent(clone, s) == is_independent(m, s)


def test_json_rejects_garbage():
    with pytest.raises(InputError):
        matroid_from_json({"kind": "moebius", "d": 2, "params": {}})
    with pytest.raises(InputError):
        matroid_from_json({"kind": "graphic", "d": 3,
                           "params": {"vertices": 3, "edges": [[1, 2]]}})
    with pytest.raises(InputError):
        matroid_from_json([1, 2, 3])
