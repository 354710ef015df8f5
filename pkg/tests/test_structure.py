import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as hst

from homogkit import oracles
from homogkit import structure as st
from homogkit.catalog import fixture, random_structure
from homogkit.structure import BinaryStructure, StructureParseError
from homogkit.verify import all_digraphs


@hst.composite
def structures(draw, max_size=5):
    n = draw(hst.integers(0, max_size))
    cells = [(i, j) for i in range(n) for j in range(n)]
    chosen = draw(hst.lists(hst.sampled_from(cells), unique=True)) if cells else []
    return BinaryStructure(n, chosen)


def every_structure(n):
    cells = [(i, j) for i in range(n) for j in range(n)]
    for bits in itertools.product((0, 1), repeat=len(cells)):
        yield BinaryStructure(n, [c for c, b in zip(cells, bits) if b])


K2, K3, C3 = st.complete_graph(2), st.complete_graph(3), st.directed_cycle(3)


# -- construction and serialization ------------------------------------------


def test_rejects_out_of_range_pairs():
    with pytest.raises(ValueError, match=r"\(0, 2\)"):
        BinaryStructure(2, [(0, 2)])


def test_json_round_trip_and_errors_name_the_pair():
    X = fixture("mKn", [2, 3])
    assert BinaryStructure.from_json(X.dumps()) == X
    assert BinaryStructure.from_json(X.to_json()) == X
    with pytest.raises(StructureParseError, match=r"duplicate pair \[0, 1\]"):
        BinaryStructure.from_json({"n": 2, "pairs": [[0, 1], [0, 1]]})
    with pytest.raises(StructureParseError, match=r"pair \[1, 3\] out of range"):
        BinaryStructure.from_json({"n": 3, "pairs": [[1, 3]]})
    with pytest.raises(StructureParseError):
        BinaryStructure.from_json('{"n": 2}')
    with pytest.raises(StructureParseError):
        BinaryStructure.from_json("{not json")
    with pytest.raises(StructureParseError, match="malformed"):
        BinaryStructure.from_json({"n": 2, "pairs": [[0]]})


def test_dot_draws_symmetric_pairs_undirected():
    X = BinaryStructure(3, [(0, 1), (1, 0), (1, 2), (2, 2)])
    dot = X.to_dot()
    assert "0 -> 1 [dir=none];" in dot
    assert "1 -> 0" not in dot
    assert "  1 -> 2;" in dot
    assert "2 -> 2;" in dot


def test_matrix_round_trip():
    X = random_structure(5, 3)
    assert BinaryStructure.from_matrix(X.matrix) == X
    assert X.matrix.sum() == len(X.pairs)


# -- transforms ----------------------------------------------------------------


def test_complement_examples():
    assert st.complement(st.empty(2)).pairs == {(0, 0), (0, 1), (1, 0), (1, 1)}
    assert st.complement(K2).pairs == {(0, 0), (1, 1)}
    assert st.complement(st.complement(C3)) == C3


def test_inverse_examples():
    assert st.inverse(C3).pairs == {(0, 2), (2, 1), (1, 0)}
    assert st.inverse(K3) == K3


def test_reflexify_examples():
    assert st.reflexify(st.empty(2)).pairs == {(0, 0), (1, 1)}
    assert st.irreflexify(st.reflexify(K2)) == K2
    assert st.reflexify(st.irreflexify(st.diagonal(3))) == st.diagonal(3)


def test_enlarge_examples():
    for n in range(6):
        assert st.enlarge(st.empty(n)) == st.complete_graph(n)
    assert st.enlarge(C3) == C3
    got = st.enlarge(BinaryStructure(3, [(0, 1)]))
    assert got.pairs == {(0, 1), (0, 2), (2, 0), (1, 2), (2, 1)}
    assert got == oracles.enlarge(BinaryStructure(3, [(0, 1)]))


@given(structures())
def test_enlarge_matches_truth_table(X):
    assert st.enlarge(X) == oracles.enlarge(X)


def test_disjoint_union_examples():
    U = st.disjoint_union([K3, K3])
    assert U == fixture("mKn", [2, 3])
    assert st.components(U).to_json() == [[0, 1, 2], [3, 4, 5]]
    X = random_structure(4, 11)
    assert st.disjoint_union([X]) == X
    assert len(st.components(st.disjoint_union([K2, K2, K2]))) == 3
    with pytest.raises(ValueError):
        st.disjoint_union([])


def test_rs_relation_examples():
    assert st.rs_relation(BinaryStructure(2, [(0, 1)])).pairs == {(0, 0), (1, 1), (0, 1), (1, 0)}
    assert st.rs_relation(K3) == st.reflexify(K3)
    assert st.rs_relation(st.empty(4)) == st.diagonal(4)


@given(structures())
def test_involutions(X):
    assert st.complement(st.complement(X)) == X
    assert st.inverse(st.inverse(X)) == X
    if st.is_irreflexive(X):
        assert st.irreflexify(st.reflexify(X)) == X
    if st.is_reflexive(X):
        assert st.reflexify(st.irreflexify(X)) == X


def test_enlargement_identity_on_all_small_digraphs():
    for n in range(5):
        for Y in all_digraphs(n):
            E = st.enlarge(Y)
            assert E == st.complement(st.reflexify(st.inverse(Y)))
            assert st.is_irreflexive(E) and st.is_complete(E)


# -- components and predicates ---------------------------------------------------


def test_components_examples():
    assert st.components(st.empty(4)).to_json() == [[0], [1], [2], [3]]
    X = BinaryStructure(3, [(0, 1), (1, 2)])
    assert st.components(X).to_json() == [[0, 1, 2]]
    assert {frozenset(b) for b in st.components(X).blocks} == oracles.components(X)


@given(structures(max_size=7))
@settings(max_examples=200)
def test_components_match_bfs_and_induce_connected_parts(X):
    parts = st.components(X)
    assert set(parts.blocks) == oracles.components(X)
    for k, block in enumerate(parts.blocks):
        assert st.is_connected(X.induced(block))
        assert all(parts.block_of[v] == k for v in block)
    # No pair crosses blocks.
    assert all(parts.block_of[i] == parts.block_of[j] for i, j in X.pairs)


def test_structure_or_its_complement_is_connected_exhaustively():
    for n in range(1, 5):
        for X in every_structure(n):
            assert st.is_connected(X) or st.is_connected(st.complement(X))


@given(structures(max_size=7))
@settings(max_examples=300)
def test_structure_or_its_complement_is_connected_random(X):
    if X.size:
        assert st.is_connected(X) or st.is_connected(st.complement(X))


def test_union_of_connected_parts_has_matching_components():
    parts = [K2, C3, st.path_graph(4), st.empty(1)]
    U = st.disjoint_union(parts)
    blocks = st.components(U).blocks
    assert len(blocks) == len(parts)
    for block, part in zip(blocks, parts):
        assert st.isomorphism(U.induced(block), part) is not None


def test_empty_structure_is_not_connected():
    E = st.empty(0)
    assert not st.is_connected(E)
    assert st.predicates(E)["connected"] is False
    assert st.complement(E) == E


def test_predicate_examples():
    p = st.predicates(C3)
    assert p["digraph"] and p["tournament"] and p["complete"] and p["connected"] and p["biconnected"]
    p = st.predicates(fixture("mKn", [2, 3]))
    assert p["graph"] and not p["complete"] and not p["connected"] and not p["biconnected"]
    C5 = st.cycle_graph(5)
    assert st.isomorphism(st.irreflexify(st.complement(C5)), C5) is not None
    assert st.predicates(C5)["biconnected"]


# -- isomorphism -------------------------------------------------------------------


def test_isomorphism_examples():
    f = st.isomorphism(C3, st.inverse(C3))
    assert f is not None and st.is_isomorphism(C3, st.inverse(C3), f)
    assert st.isomorphism(K3, st.empty(3)) is None
    X = random_structure(5, 2)
    assert st.isomorphism(X, X) == tuple(range(5))


def test_isomorphism_witness_is_lexicographically_least():
    for seed in range(40):
        X = random_structure(4, seed)
        perm = [int(v) for v in np.random.default_rng(seed).permutation(4)]
        Y = X.relabel(perm)
        brute = [p for p in itertools.permutations(range(4)) if st.is_isomorphism(X, Y, p)]
        assert st.isomorphism(X, Y) == brute[0]


def test_isomorphism_on_symmetric_structures_beyond_the_cheap_search():
    # Large automorphism groups push the search past its cheap first phase.
    X = st.disjoint_union([st.enlarge(st.directed_cycle(4))] * 4)
    perm = list(range(X.size))[::-1]
    Y = X.relabel(perm)
    f = st.isomorphism(X, Y)
    assert f is not None and st.is_isomorphism(X, Y, f)
    Z = st.disjoint_union([st.enlarge(st.directed_cycle(4))] * 3 + [st.complete_graph(4)])
    assert st.isomorphism(X, Z) is None


@given(structures(max_size=6), hst.randoms(use_true_random=False))
def test_isomorphism_finds_relabelings(X, rnd):
    perm = list(range(X.size))
    rnd.shuffle(perm)
    Y = X.relabel(perm)
    f = st.isomorphism(X, Y)
    assert f is not None and st.is_isomorphism(X, Y, f)


def test_named_structures():
    assert fixture("Ln", [4]).pairs == {(i, j) for i in range(4) for j in range(4) if i < j}
    assert st.complete_bipartite(2, 3).size == 5
    assert len(st.complete_bipartite(2, 3).pairs) == 12
    assert json.loads(fixture("C3").dumps()) == {"n": 3, "pairs": [[0, 1], [1, 2], [2, 0]]}
