"""Atoms, separative modification and quotient on finite posets."""
from homogkit import embeddings as emb
from homogkit import poset as po
from homogkit import structure as st

V = po.inclusion_poset([{0}, {1}, {0, 1}])
print("V atoms:", po.atoms(V), "separative:", po.is_separative(V))

chain = po.chain(4)
print("4-chain separative:", po.is_separative(chain))
print("sm(4-chain) relates every pair:", len(po.separative_modification(chain).pairs()) == 16)
print("sq(4-chain):", po.separative_quotient(chain).elements)

P, Q = po.chain(2), po.antichain(2)
lhs = po.separative_quotient(po.product([P, Q]))
rhs = po.product([po.separative_quotient(P), po.separative_quotient(Q)])
print("sq(P x Q) ~ sq P x sq Q:", po.poset_isomorphism(lhs, rhs))

# Copies of K2 inside K3 form an antichain; a finite structure has one copy of itself.
print("copies of K2 in K3:", sorted(map(sorted, emb.copies(st.complete_graph(2), st.complete_graph(3)))))
X = st.disjoint_union([st.directed_cycle(3)] * 3)
print("copies of 3C3 in itself:", len(emb.copies(X, X)))
print(po.product([P, P]).to_dot("diamond"))
