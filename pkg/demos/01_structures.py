"""Structures, transforms and components on a few small examples."""
from homogkit import structure as st
from homogkit.catalog import fixture

C3 = fixture("C3")
print("C3:", C3.sorted_pairs())
print("inverse:", st.inverse(C3).sorted_pairs())
print("complement keeps the diagonal:", st.complement(C3).sorted_pairs())

# The enlargement joins every unrelated pair both ways.
Y = st.BinaryStructure(3, [(0, 1)])
print("enlarge(0->1 on 3 points):", st.enlarge(Y).sorted_pairs())
print("same as complement(reflexify(inverse)):",
      st.enlarge(Y) == st.complement(st.reflexify(st.inverse(Y))))

X = fixture("mKn", [2, 3])
print("2K3 components:", st.components(X).to_json())
for name, flag in st.predicates(X).items():
    print(f"  {name:12} {flag}")

C5 = st.cycle_graph(5)
print("C5 biconnected:", st.is_biconnected(C5))
print(C5.to_dot("C5"))
