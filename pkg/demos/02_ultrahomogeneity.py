"""Which small structures are ultrahomogeneous, and what the disconnected ones look like."""
from homogkit import embeddings as emb
from homogkit import homogeneity as hom
from homogkit import structure as st
from homogkit.catalog import fixture
from homogkit.verify import all_digraphs

for name, X in [("P3", st.path_graph(3)), ("C5", st.cycle_graph(5)), ("C6", st.cycle_graph(6)),
                ("2K3", fixture("mKn", [2, 3])), ("K3+K2", st.disjoint_union([st.complete_graph(3), st.complete_graph(2)]))]:
    v = emb.is_ultrahomogeneous(X)
    print(f"{name:6} ultrahomogeneous={v.holds}", "" if v.holds else f"stuck map {v.witness.as_dict()}")

# Every ultrahomogeneous digraph on at most four points, by size.
uh = [Y for n in range(1, 5) for Y in all_digraphs(n) if emb.is_ultrahomogeneous(Y)]
print(len(uh), "labelled ultrahomogeneous digraphs on 1-4 points")
for Y in uh:
    print("  ", Y.size, Y.sorted_pairs())

# Disjoint copies of an enlarged digraph, dressed four ways, and taken apart again.
for variant in ("plain", "re", "c", "re_c"):
    X = hom.reconstruct(variant, fixture("C3"), 2)
    rep = hom.decompose(X)
    print(f"{variant:5} -> {rep.variant:5} kappa={rep.multiplicity} digraph={rep.digraph.sorted_pairs()}")

print("K_{3,3}:", hom.decompose(st.complete_bipartite(3, 3)).to_json())
print("C5:", hom.decompose(st.cycle_graph(5)).to_json())
