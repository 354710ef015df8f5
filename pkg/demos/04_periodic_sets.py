"""Infinite subsets of the naturals modulo finite sets, on ultimately periodic sets."""
from homogkit import omega as om

evens = om.parse("mod(2,{0})")
threes = om.parse("mod(3,{0})")

print("evens \\ threes =", om.difference(evens, threes))
print("evens almost inside threes:", om.almost_subset(evens, threes))
v = om.sm_leq_witness(evens, threes)
print("refuted by", v.witness, "- below evens, disjoint from threes:", not om.compatible(v.witness, threes))

A = om.parse("mod(2,{0}) | fin{1,3,5}")
print(A, "almost equals evens:", om.almost_equal(A, evens))

# No infinite set is an atom: each splits into two incompatible infinite halves.
for text in ("omega", "mod(3,{1})", "mod(5,{0,2}) \\ fin{0}"):
    C, D = om.split(om.parse(text))
    print(f"split({text}) = {C} , {D}")

chain = [om.OMEGA, om.parse("mod(2,{0}) \\ fin{0,2}"), om.parse("mod(6,{0})")]
print("lower bound:", om.chain_lower_bound(chain), "picks:", om.diagonal_picks(chain, 6))
