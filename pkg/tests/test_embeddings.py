import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as hst

from homogkit import embeddings as emb
from homogkit import oracles
from homogkit import structure as st
from homogkit.catalog import fixture, random_structure
from homogkit.embeddings import PartialMap
from homogkit.structure import BinaryStructure
from homogkit.verify import all_digraphs

from test_structure import every_structure, structures

K2, K3, C3, P3 = st.complete_graph(2), st.complete_graph(3), st.directed_cycle(3), st.path_graph(3)


# -- partial maps --------------------------------------------------------------------


def test_partial_map_basics():
    f = PartialMap.from_dict({2: 0, 0: 1})
    assert f.domain == (0, 2) and f.image == (1, 0)
    assert f(2) == 0
    assert f.to_json() == {"0": 1, "2": 0}
    assert f.extends(f.restrict([0]))
    assert not f.restrict([0]).extends(f)
    with pytest.raises(ValueError, match="injective"):
        PartialMap.from_dict({0: 1, 1: 1})


# -- enumeration ---------------------------------------------------------------------


def test_embedding_counts():
    for Y in (K3, C3, st.cycle_graph(5), st.empty(4)):
        assert len(emb.embeddings(st.empty(1), Y)) == Y.size
    assert len(emb.embeddings(K2, K3)) == 6
    assert emb.embeddings(P3, K3) == []
    assert emb.count_embeddings(K2, K3) == 6


def test_embeddings_are_sorted_and_match_brute_force():
    for seed in range(60):
        X = random_structure(1 + seed % 3, seed)
        Y = random_structure(4, 1000 + seed)
        got = [f.image for f in emb.embeddings(X, Y)]
        assert got == sorted(got)
        assert got == oracles.embeddings(X, Y)


@given(structures(max_size=3), structures(max_size=5))
@settings(max_examples=300)
def test_embeddings_match_brute_force(X, Y):
    assert [f.image for f in emb.embeddings(X, Y)] == oracles.embeddings(X, Y)


def test_automorphism_counts():
    for n in range(1, 6):
        assert len(emb.automorphisms(st.complete_graph(n))) == math.factorial(n)
    assert len(emb.automorphisms(C3)) == 3
    assert len(emb.automorphisms(P3)) == 2


def test_copies_examples():
    assert emb.copies(K2, K3) == {frozenset({0, 1}), frozenset({0, 2}), frozenset({1, 2})}
    assert emb.copies(st.empty(2), K3) == frozenset()
    for seed in range(30):
        X = random_structure(seed % 6, seed)
        assert emb.copies(X, X) == {frozenset(range(X.size))}


@given(structures(max_size=3), structures(max_size=5))
@settings(max_examples=200)
def test_copies_match_brute_force(X, Y):
    assert emb.copies(X, Y) == oracles.copies(X, Y)


def test_partial_isomorphism_examples():
    X = random_structure(4, 5)
    assert emb.partial_isomorphisms(X, 0) == [PartialMap()]
    maps = emb.partial_isomorphisms(K2, 1)
    # Four one-point maps, plus the empty map, which always counts.
    assert len([f for f in maps if len(f) == 1]) == 4
    assert len(maps) == 5 and maps[0] == PartialMap()
    with pytest.raises(ValueError):
        emb.partial_isomorphisms(K2, 3)


def test_partial_isomorphisms_match_brute_force_and_contain_restrictions():
    for seed in range(25):
        X = random_structure(3 + seed % 2, seed, ("any", "irreflexive")[seed % 2])
        got = emb.partial_isomorphisms(X, X.size)
        assert sorted(map(len, got)) == [len(g) for g in got]
        assert {p.pairs for p in got} == {
            tuple(sorted(d.items())) for d in oracles.partial_isomorphisms(X)
        }
        found = set(got)
        for g in emb.automorphisms(X):
            for k in range(X.size + 1):
                for dom in itertools.combinations(range(X.size), k):
                    assert g.restrict(dom) in found


# -- ultrahomogeneity ----------------------------------------------------------------


def test_ultrahomogeneity_examples():
    for n in range(0, 7):
        assert emb.is_ultrahomogeneous(st.complete_graph(n))
    verdict = emb.is_ultrahomogeneous(P3)
    assert not verdict and verdict.witness == PartialMap.from_dict({0: 1})
    assert verdict.to_json() == {"ultrahomogeneous": False, "witness": {"0": 1}}
    assert emb.is_ultrahomogeneous(fixture("mKn", [2, 3]))
    assert emb.is_ultrahomogeneous(st.cycle_graph(5))
    assert not emb.is_ultrahomogeneous(st.cycle_graph(6))
    assert emb.is_ultrahomogeneous(C3)


def _smallest_failure(X):
    """Least domain size of a partial isomorphism that no automorphism extends."""
    auts = oracles.automorphisms(X)
    sizes = [
        len(phi)
        for phi in oracles.partial_isomorphisms(X)
        if not any(all(g[a] == b for a, b in phi.items()) for g in auts)
    ]
    return min(sizes, default=None)


def _check_against_definition(X):
    verdict = emb.is_ultrahomogeneous(X)
    assert verdict.holds == oracles.is_ultrahomogeneous(X)
    # For finite structures the definition and one-point extension agree.
    assert verdict.holds == oracles.has_one_point_extensions(X)
    if not verdict.holds:
        w = verdict.witness
        assert emb.is_partial_isomorphism(X, X, w)
        assert not any(g.extends(w) for g in emb.automorphisms(X))
        assert len(w) == _smallest_failure(X)


def test_ultrahomogeneity_matches_definition_on_all_small_digraphs():
    for n in range(5):
        for Y in all_digraphs(n):
            _check_against_definition(Y)


def test_ultrahomogeneity_matches_definition_on_all_structures_up_to_three():
    for n in range(4):
        for X in every_structure(n):
            _check_against_definition(X)


def test_ultrahomogeneity_matches_definition_on_random_five_point_structures():
    for seed in range(40):
        kind = ("any", "irreflexive", "graph", "digraph")[seed % 4]
        _check_against_definition(random_structure(5, seed, kind))
    # A few that do hold, where the witness search never stops early.
    for X in (st.cycle_graph(5), st.complete_graph(5), st.reflexify(st.empty(5))):
        _check_against_definition(X)


# -- componentwise copies --------------------------------------------------------------


def test_copies_via_components_examples():
    twoK2, twoK3 = fixture("mKn", [2, 2]), fixture("mKn", [2, 3])
    got = emb.copies_via_components(twoK2, twoK3)
    assert len(got) == 9 and got == emb.copies(twoK2, twoK3)
    for seed in range(10):
        X = random_structure(4, seed)
        if st.is_connected(X):
            assert emb.copies_via_components(X, X) == {frozenset(range(4))}
    assert emb.copies_via_components(st.empty(2), K3) == frozenset()


@given(structures(max_size=4), structures(max_size=4), structures(max_size=3))
@settings(max_examples=200)
def test_copies_via_components_agree(A, B, C):
    X = st.disjoint_union([A, B])
    Y = st.disjoint_union([A, C, B]) if X.size else C
    assert emb.copies_via_components(X, Y) == emb.copies(X, Y)


# -- transform invariance ---------------------------------------------------------------


@given(structures(max_size=5))
@settings(max_examples=200)
def test_self_embeddings_survive_transforms(X):
    base = set(emb.automorphisms(X))
    assert set(emb.automorphisms(st.complement(X))) == base
    assert set(emb.automorphisms(st.inverse(X))) == base
    if st.is_irreflexive(X):
        assert set(emb.automorphisms(st.reflexify(X))) == base
    if st.is_reflexive(X):
        assert set(emb.automorphisms(st.irreflexify(X))) == base
    if X.size <= 4:
        assert set(emb.partial_isomorphisms(X, X.size)) == set(
            emb.partial_isomorphisms(st.complement(X), X.size)
        )
        assert set(emb.partial_isomorphisms(X, X.size)) == set(
            emb.partial_isomorphisms(st.inverse(X), X.size)
        )


def test_ultrahomogeneity_survives_complement_and_inverse():
    for seed in range(60):
        X = random_structure(4, seed)
        v = emb.is_ultrahomogeneous(X).holds
        assert emb.is_ultrahomogeneous(st.complement(X)).holds == v
        assert emb.is_ultrahomogeneous(st.inverse(X)).holds == v


def test_digraph_and_enlargement_share_embeddings_and_copies():
    for Y in all_digraphs(3):
        E = st.enlarge(Y)
        assert set(emb.automorphisms(Y)) == set(emb.automorphisms(E))
        for Z in all_digraphs(2):
            assert emb.copies(Z, Y) == emb.copies(st.enlarge(Z), E)


def test_embedding_components_land_in_components():
    Y = st.disjoint_union([K2, st.empty(1), st.directed_cycle(3), K2])
    cy = st.components(Y)
    maps = emb.embeddings(K2, Y)
    assert len(maps) == 4
    for f in maps:
        assert len({cy.block_of[v] for v in f.image}) == 1
