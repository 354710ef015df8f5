from math import lcm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as hst

from homogkit import omega as om
from homogkit import oracles

EVENS, ODDS = om.periodic(2, {0}), om.periodic(2, {1})


@hst.composite
def upsets(draw, infinite=False):
    t = draw(hst.integers(0, 8))
    p = draw(hst.integers(1, 8))
    prefix = draw(hst.sets(hst.integers(0, max(t - 1, 0)))) if t else set()
    residues = draw(hst.sets(hst.integers(0, p - 1), min_size=1 if infinite else 0))
    return om.canonicalize(t, prefix, p, residues)


def _window(*sets):
    return max(A.threshold for A in sets) + 2 * lcm(*(A.period for A in sets))


# -- canonical form and parsing -------------------------------------------------------


def test_parse_examples():
    assert om.parse("mod(2,{0})") == EVENS
    assert om.canonicalize(0, (), 6, {0, 2, 4}) == EVENS
    A = om.parse("fin{1,2,3}")
    assert A.is_finite and not A.residues and A.elements_finite() == [1, 2, 3]
    assert om.parse("omega") == om.OMEGA
    assert om.parse(" ~ fin{ } ") == om.OMEGA


def test_precedence_and_associativity():
    # & binds tighter than | and \, which associate to the left.
    assert om.parse("fin{1} | mod(2,{0}) & mod(3,{0})") == om.union(
        om.finite([1]), om.periodic(6, {0})
    )
    assert om.parse("omega \\ fin{1} \\ fin{2}") == om.difference(om.OMEGA, om.finite([1, 2]))
    assert om.parse("~mod(2,{0}) & omega") == ODDS
    assert om.parse("(omega \\ fin{0}) | fin{0}") == om.OMEGA


def test_syntax_errors_report_positions():
    with pytest.raises(om.UPSetSyntaxError) as info:
        om.parse("mod(0,{0})")
    assert info.value.position == 4
    with pytest.raises(om.UPSetSyntaxError) as info:
        om.parse("mod(2,{0}) ^ omega")
    assert info.value.position == 11
    with pytest.raises(om.UPSetSyntaxError) as info:
        om.parse("fin{1,2")
    assert info.value.position == 7
    with pytest.raises(om.UPSetSyntaxError, match="residue 5"):
        om.parse("mod(3,{5})")
    with pytest.raises(om.UPSetSyntaxError):
        om.parse("")


@given(upsets())
def test_canonical_form_is_minimal_and_round_trips(A):
    assert om.parse(om.render(A)) == A
    assert om.parse(str(A)) == A
    p, t = A.period, A.threshold
    for d in range(1, p):
        if p % d == 0:
            assert any((k in A) != (k + d in A) for k in range(t, t + 2 * p))
    if t > 0:
        assert ((t - 1) in A) != ((t - 1 + p) in A)


@given(hst.integers(0, 8), hst.sets(hst.integers(0, 20)), hst.integers(1, 12), hst.sets(hst.integers(0, 30)))
def test_canonicalize_preserves_membership(t, prefix, p, residues):
    A = om.canonicalize(t, prefix, p, residues)
    raw = lambda k: (k in prefix) if k < t else (k % p in {r % p for r in residues})
    assert all((k in A) == raw(k) for k in range(t + 3 * p + 2 * A.period))


def test_render_examples():
    assert om.render(om.finite([3, 1])) == "fin{1,3}"
    assert om.render(om.OMEGA) == "omega"
    assert om.render(om.union(EVENS, om.finite([1, 3]))) == "mod(2,{0}) | fin{1,3}"
    assert om.render(om.difference(om.OMEGA, om.finite([0, 4]))) == "omega \\ fin{0,4}"


# -- boolean operations -----------------------------------------------------------------


def test_boolean_examples():
    assert om.intersect(EVENS, ODDS) == om.EMPTY
    assert om.difference(EVENS, om.periodic(3, {0})) == om.periodic(6, {2, 4})
    got = om.difference(EVENS, om.periodic(3, {0}))
    assert got.members(60) == [k for k in range(60) if k % 2 == 0 and k % 3 != 0]
    assert om.complement(om.complement(EVENS)) == EVENS


@given(upsets(), upsets())
@settings(max_examples=300)
def test_boolean_operations_are_pointwise(A, B):
    ops = {
        om.union: lambda a, b: a or b,
        om.intersect: lambda a, b: a and b,
        om.difference: lambda a, b: a and not b,
    }
    for fn, op in ops.items():
        C = fn(A, B)
        _, _, members = oracles.window_members(A, B, op)
        assert C.members(_window(A, B)) == members
        assert lcm(A.period, B.period) % C.period == 0
        assert C.is_finite == oracles.finite_by_window(A, B, op)
    assert all((k in om.complement(A)) != (k in A) for k in range(_window(A)))


# -- almost inclusion and compatibility ----------------------------------------------------


def test_almost_inclusion_examples():
    assert om.almost_subset(om.union(EVENS, om.finite([1, 3, 5])), EVENS)
    assert not om.almost_subset(EVENS, om.periodic(3, {0}))
    A = om.periodic(5, {1, 2})
    assert om.almost_equal(A, om.union(A, om.finite([7])))
    assert om.is_subset(om.periodic(4, {0}), EVENS)
    assert not om.is_subset(om.union(EVENS, om.finite([1])), EVENS)


def test_compatibility_examples():
    assert not om.compatible(EVENS, ODDS)
    assert om.compatible(EVENS, om.periodic(3, {0}))
    assert om.compatible(ODDS, ODDS)


@given(upsets(infinite=True), upsets(infinite=True))
def test_compatible_iff_some_infinite_set_lies_below_both(A, B):
    C = om.intersect(A, B)
    assert om.compatible(A, B) == (not C.is_finite)
    if not C.is_finite:
        assert om.is_subset(C, A) and om.is_subset(C, B)


# -- witnesses -------------------------------------------------------------------------------


def test_split_examples():
    assert om.split(EVENS) == (om.periodic(4, {0}), om.periodic(4, {2}))
    assert om.split(om.periodic(3, {1})) == (om.periodic(6, {1}), om.periodic(6, {4}))
    assert om.split(om.OMEGA) == (EVENS, ODDS)
    with pytest.raises(ValueError):
        om.split(om.finite([1, 2]))


@given(upsets(infinite=True))
def test_split_halves_are_disjoint_infinite_and_cover(A):
    C, D = om.split(A)
    assert not C.is_finite and not D.is_finite
    assert om.intersect(C, D) == om.EMPTY
    assert om.union(C, D) == A
    assert not om.compatible(C, D)


def test_sm_witness_examples():
    v = om.sm_leq_witness(EVENS, om.periodic(3, {0}))
    assert not v.leq and v.witness == om.periodic(6, {2, 4})
    A = om.periodic(4, {1, 3})
    assert om.sm_leq_witness(om.union(A, om.finite([9])), A).leq
    v = om.sm_leq_witness(A, A)
    assert v.leq and v.witness is None and v.samples_checked > 0
    with pytest.raises(ValueError):
        om.sm_leq_witness(om.finite([1]), A)


@given(upsets(infinite=True), upsets(infinite=True))
@settings(max_examples=300)
def test_sm_order_is_almost_inclusion(A, B):
    v = om.sm_leq_witness(A, B)
    assert v.leq == om.almost_subset(A, B)
    if not v.leq:
        W = v.witness
        assert not W.is_finite and om.almost_subset(W, A) and not om.compatible(W, B)


def test_chain_lower_bound_examples():
    chain = [om.periodic(2, {0}), om.periodic(4, {0}), om.periodic(8, {0})]
    assert om.chain_lower_bound(chain) == om.periodic(8, {0})
    chain = [om.OMEGA, EVENS, om.periodic(6, {0})]
    bound = om.chain_lower_bound(chain)
    assert bound == om.periodic(6, {0})
    assert all(om.almost_subset(bound, A) for A in chain)


def test_chain_lower_bound_rejects_increasing_chains_with_indices():
    with pytest.raises(ValueError, match=r"\(0, 1\)"):
        om.chain_lower_bound([om.periodic(4, {0}), EVENS])
    with pytest.raises(ValueError, match=r"\(1, 2\)"):
        om.chain_lower_bound([om.OMEGA, om.periodic(6, {0}), EVENS])
    with pytest.raises(ValueError, match="finite"):
        om.chain_lower_bound([om.OMEGA, om.finite([2])])
    with pytest.raises(ValueError):
        om.chain_lower_bound([])


def test_chain_lower_bound_accepts_almost_equal_members():
    # Members equal up to a finite set are decreasing in the almost order either way round.
    chain = [EVENS, om.union(EVENS, om.finite([1]))]
    assert om.chain_lower_bound(chain) == EVENS
    assert om.chain_lower_bound(chain[::-1]) == EVENS


def test_diagonal_picks_settle_into_the_lower_bound():
    chain = [om.OMEGA, om.difference(EVENS, om.finite([0, 2])), om.periodic(6, {0})]
    picks = om.diagonal_picks(chain, 8)
    assert picks == [0, 4, 6, 12, 18, 24, 30, 36]
    bound = om.chain_lower_bound(chain)
    assert all(k in bound for k in picks[2:])
    assert picks == sorted(set(picks))
