"""Slow reference implementations used to cross-check the fast paths.

Everything here works from the literal definitions on plain Python sets of
pairs and shares no search code with the rest of the package.  Intended for
structures with at most about six vertices.
"""
from __future__ import annotations

from itertools import combinations, permutations

from .structure import BinaryStructure


def _rel(X: BinaryStructure) -> set[tuple[int, int]]:
    return set(X.iter_pairs())


def preserves(rx, ry, f: dict) -> bool:
    return all(((a, b) in rx) == ((f[a], f[b]) in ry) for a in f for b in f)


def embeddings(X: BinaryStructure, Y: BinaryStructure) -> list[tuple[int, ...]]:
    rx, ry = _rel(X), _rel(Y)
    return [
        img
        for img in permutations(range(Y.size), X.size)
        if preserves(rx, ry, dict(enumerate(img)))
    ]


def copies(X: BinaryStructure, Y: BinaryStructure) -> set[frozenset[int]]:
    """Subsets B of Y whose induced substructure is isomorphic to X."""
    rx, ry = _rel(X), _rel(Y)
    found = set()
    for B in combinations(range(Y.size), X.size):
        for img in permutations(B):
            if preserves(rx, ry, dict(enumerate(img))):
                found.add(frozenset(B))
                break
    return found


def partial_isomorphisms(X: BinaryStructure) -> list[dict[int, int]]:
    rx = _rel(X)
    out = []
    for k in range(X.size + 1):
        for dom in combinations(range(X.size), k):
            for img in permutations(range(X.size), k):
                f = dict(zip(dom, img))
                if preserves(rx, rx, f):
                    out.append(f)
    return out


def automorphisms(X: BinaryStructure) -> list[tuple[int, ...]]:
    return embeddings(X, X)


def is_ultrahomogeneous(X: BinaryStructure) -> bool:
    """Every partial isomorphism is contained in some automorphism."""
    auts = automorphisms(X)
    return all(
        any(all(g[a] == b for a, b in phi.items()) for g in auts)
        for phi in partial_isomorphisms(X)
    )


def has_one_point_extensions(X: BinaryStructure) -> bool:
    """Every partial isomorphism extends by any further point of the domain."""
    rx = _rel(X)
    for phi in partial_isomorphisms(X):
        used = set(phi.values())
        for x in range(X.size):
            if x in phi:
                continue
            if not any(
                preserves(rx, rx, {**phi, x: y}) for y in range(X.size) if y not in used
            ):
                return False
    return True


def enlarge(X: BinaryStructure) -> BinaryStructure:
    r = _rel(X)
    return BinaryStructure(
        X.size,
        [
            (x, y)
            for x in range(X.size)
            for y in range(X.size)
            if (x, y) in r or (x != y and (x, y) not in r and (y, x) not in r)
        ],
    )


def components(X: BinaryStructure) -> set[frozenset[int]]:
    """Classes of the least equivalence containing the relation, by breadth-first closure."""
    r = _rel(X)
    adj = {v: set() for v in range(X.size)}
    for a, b in r:
        adj[a].add(b)
        adj[b].add(a)
    seen, blocks = set(), set()
    for s in range(X.size):
        if s in seen:
            continue
        block, queue = {s}, [s]
        while queue:
            v = queue.pop()
            for w in adj[v] - block:
                block.add(w)
                queue.append(w)
        seen |= block
        blocks.add(frozenset(block))
    return blocks


# -- orders ------------------------------------------------------------------


def separative_modification(elements, le) -> set[tuple]:
    """Pairs ``(p, q)`` with ``p <=* q``, from the quantifier definition."""
    out = set()
    for p in elements:
        for q in elements:
            if all(
                any(le(s, r) and le(s, q) for s in elements)
                for r in elements
                if le(r, p)
            ):
                out.add((p, q))
    return out


# -- ultimately periodic sets ------------------------------------------------


def window_members(A, B, op) -> tuple[int, int, list[int]]:
    """Pointwise evaluation of ``op`` on ``[0, t + 2 * lcm)`` from field membership."""
    from math import lcm

    t = max(A.threshold, B.threshold)
    L = lcm(A.period, B.period)
    stop = t + 2 * L
    return t, L, [k for k in range(stop) if op(k in A, k in B)]


def finite_by_window(A, B, op) -> bool:
    """The result of ``op`` is finite iff it has no member in ``[t, t + lcm)``."""
    t, L, members = window_members(A, B, op)
    return not any(t <= k < t + L for k in members)
