from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from excessum.counts import count_forests
from excessum.hypergraphs import (
    ForestCode,
    Hypergraph,
    InvalidCode,
    NotAForest,
    components,
    connected_with_excess,
    count_codes,
    decode,
    decode_edges,
    encode,
    enumerate_all,
    excess,
    is_connected,
    iter_codes,
    prune_to_smooth,
    random_code,
    sample_forest,
)

REF_CODE = ForestCode(
    frozenset({5, 9, 13, 16}),
    13,
    ((1, 22), (2, 17), (3, 19), (4, 8), (6, 7), (10, 15), (11, 18), (12, 14), (20, 21)),
    (21, 18, 13, 13, 4, 18, 21, 7),
)


def test_excess_examples():
    assert excess(Hypergraph(4, 2, ((1, 2), (2, 3), (3, 4)))) == -1
    assert excess(Hypergraph(3, 2, ((1, 2), (2, 3), (1, 3)))) == 0
    assert excess(Hypergraph(4, 3, ((1, 2, 3), (2, 3, 4)))) == 0


def test_hypergraph_validation():
    with pytest.raises(ValueError):
        Hypergraph(3, 2, ((1, 1),))
    with pytest.raises(ValueError):
        Hypergraph(3, 2, ((1, 4),))
    with pytest.raises(ValueError):
        Hypergraph(3, 2, ((1, 2), (2, 1)))


def test_json_round_trip():
    H = Hypergraph(6, 3, ((4, 5, 6), (1, 2, 3)), roots={1})
    assert Hypergraph.from_json(H.to_json()) == H
    assert H.to_json()["edges"] == [[1, 2, 3], [4, 5, 6]]


def test_pruning_leaves_smooth_core():
    # triangle with a pendant path
    H = Hypergraph(5, 2, ((1, 2), (2, 3), (1, 3), (3, 4), (4, 5)))
    core = prune_to_smooth(H)
    assert core.edges == ((1, 2), (1, 3), (2, 3))
    assert core.vertices == frozenset({1, 2, 3})
    assert excess(core) == excess(H)


def test_tree_prunes_to_single_vertex():
    H = Hypergraph(5, 3, ((1, 2, 3), (3, 4, 5)))
    core = prune_to_smooth(H)
    assert core.edges == () and len(core.vertices) == 1


def test_enumerate_all_small():
    assert enumerate_all(2, 4, connected_with_excess(0)) == 15
    assert enumerate_all(2, 4) == 2 ** 6
    with pytest.raises(ValueError):
        enumerate_all(2, 8)


def test_components_split():
    H = Hypergraph(5, 2, ((1, 2), (4, 5)))
    comps = components(H)
    assert [sorted(C.vertices) for C in comps] == [[1, 2], [3], [4, 5]]
    assert not is_connected(H)


def test_reference_code():
    F = decode(REF_CODE, 3, 22)
    assert F.edges == (
        (1, 21, 22), (2, 17, 18), (3, 13, 19), (4, 8, 18), (4, 12, 14),
        (6, 7, 13), (7, 20, 21), (10, 13, 15), (11, 18, 21),
    )
    assert F.roots == REF_CODE.R
    assert encode(F) == REF_CODE


def test_code_json_round_trip():
    assert ForestCode.from_json(REF_CODE.to_json()) == REF_CODE


@pytest.mark.parametrize("b,s,k", [(2, 3, 0), (2, 2, 1), (3, 2, 0), (3, 1, 1), (3, 2, 1), (4, 2, 0)])
def test_codes_biject_with_forests(b, s, k):
    n = s * (b - 1) + k + 1
    seen = set()
    for c in iter_codes(b, s, k):
        F = decode(c, b, n)
        assert encode(F) == c
        seen.add((F.edges, F.roots))
    assert len(seen) == count_codes(b, s, k) == count_forests(b, s, k)


def test_invalid_codes_rejected():
    with pytest.raises(InvalidCode):
        decode(ForestCode(frozenset({1}), 1, ((2,), (3,)), (4,)), 2, 3)
    with pytest.raises(InvalidCode):
        decode(ForestCode(frozenset({1}), 2, ((2,), (3,)), (3,)), 2, 3)


def test_encode_rejects_non_forest():
    cyc = Hypergraph(3, 2, ((1, 2), (2, 3), (1, 3)), roots={1})
    with pytest.raises(NotAForest):
        encode(cyc)


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 5), st.integers(0, 15), st.integers(0, 5), st.integers(0, 2 ** 32 - 1))
def test_random_round_trip(b, s, k, seed):
    c = random_code(b, s, k, np.random.default_rng(seed))
    n = s * (b - 1) + k + 1
    F = decode(c, b, n)
    assert len(components(F)) == k + 1
    assert all(excess(C) == -1 for C in components(F))
    assert encode(F) == c
    assert tuple(sorted(tuple(sorted(e)) for e in decode_edges(c))) == F.edges


def test_sampler_is_deterministic():
    assert sample_forest(3, 10, 2, seed=5) == sample_forest(3, 10, 2, seed=5)
    F = sample_forest(3, 10, 2, seed=5)
    assert F.n == 23 and len(F.roots) == 3


def test_sampler_covers_small_support():
    rng = np.random.default_rng(0)
    seen = {sample_forest(2, 2, 0, rng=rng).to_json().__repr__() for _ in range(400)}
    assert len(seen) == count_forests(2, 2, 0) == 9
