"""Embeddings, automorphisms, copies and partial isomorphisms.

Every enumeration here is exact.  Maps are emitted in lexicographic order.
A total map ``f`` is ordered by its image tuple ``(f(0), f(1), ...)``.  A
partial map is ordered by domain size first and then by its sorted
``(source, target)`` pairs.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Mapping, Sequence

from .structure import (
    BinaryStructure,
    _refine,
    components,
    find_isomorphism,
    rs_relation,
)


@dataclass(frozen=True, order=True)
class PartialMap:
    """Injective partial vertex map, stored as sorted ``(source, target)`` pairs."""

    pairs: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, mapping: Mapping[int, int]) -> "PartialMap":
        m = cls(tuple(sorted(mapping.items())))
        if len(set(m.image)) != len(m.pairs):
            raise ValueError(f"map is not injective: {dict(mapping)}")
        return m

    @classmethod
    def total(cls, images: Sequence[int]) -> "PartialMap":
        return cls.from_dict(dict(enumerate(images)))

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(s for s, _ in self.pairs)

    @property
    def image(self) -> tuple[int, ...]:
        return tuple(t for _, t in self.pairs)

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def __call__(self, v: int) -> int:
        return self.as_dict()[v]

    def __len__(self) -> int:
        return len(self.pairs)

    def restrict(self, subset) -> "PartialMap":
        keep = set(subset)
        return PartialMap(tuple(p for p in self.pairs if p[0] in keep))

    def extends(self, other: "PartialMap") -> bool:
        """True when ``other`` is a restriction of this map."""
        return set(other.pairs) <= set(self.pairs)

    def to_json(self) -> dict[str, int]:
        return {str(s): t for s, t in self.pairs}


def is_partial_isomorphism(X: BinaryStructure, Y: BinaryStructure, phi: PartialMap) -> bool:
    img = phi.image
    if len(set(img)) != len(img):
        return False
    for a, fa in phi.pairs:
        for b, fb in phi.pairs:
            if X.has(a, b) != Y.has(fa, fb):
                return False
    return True


# -- embeddings --------------------------------------------------------------


def _degrees(S: BinaryStructure):
    """Loop-free out- and in-degrees."""
    return [
        ((S.out_rows[v] & ~(1 << v)).bit_count(), (S.in_rows[v] & ~(1 << v)).bit_count())
        for v in range(S.size)
    ]


def _iter_embeddings(X: BinaryStructure, Y: BinaryStructure, fixed=None):
    """Raw generator of embeddings as image lists (not in lexicographic order)."""
    n, m = X.size, Y.size
    if n > m:
        return
    dx, dy = _degrees(X), _degrees(Y)
    # A vertex of Y can host x only if its degrees and non-degrees dominate x's.
    cand = []
    for x in range(n):
        ox, ix = dx[x]
        cx = [
            y
            for y in range(m)
            if X.loop(x) == Y.loop(y)
            and dy[y][0] >= ox
            and dy[y][1] >= ix
            and (m - 1 - dy[y][0]) >= (n - 1 - ox)
            and (m - 1 - dy[y][1]) >= (n - 1 - ix)
        ]
        if fixed and x in fixed:
            cx = [y for y in cx if y == fixed[x]]
        cand.append(cx)
    order = sorted(range(n), key=lambda v: (len(cand[v]), -dx[v][0], -dx[v][1], v))
    images = [-1] * n
    used = [False] * m

    def rec(k: int):
        if k == n:
            yield list(images)
            return
        x = order[k]
        for y in cand[x]:
            if used[y]:
                continue
            ok = True
            for j in range(k):
                u = order[j]
                if X.code(x, u) != Y.code(y, images[u]):
                    ok = False
                    break
            if not ok:
                continue
            images[x] = y
            used[y] = True
            yield from rec(k + 1)
            used[y] = False
            images[x] = -1

    yield from rec(0)


def embeddings(X: BinaryStructure, Y: BinaryStructure) -> list[PartialMap]:
    """All embeddings X -> Y in lexicographic order of their image tuples."""
    found = sorted(tuple(f) for f in _iter_embeddings(X, Y))
    return [PartialMap.total(f) for f in found]


def count_embeddings(X: BinaryStructure, Y: BinaryStructure) -> int:
    return sum(1 for _ in _iter_embeddings(X, Y))


def automorphisms(X: BinaryStructure) -> list[PartialMap]:
    return embeddings(X, X)


_SYMMETRIC = 24


def _profile(S: BinaryStructure, vertices) -> tuple:
    """Isomorphism invariant of the substructure on ``vertices``: sorted
    (loop, out-degree, in-degree) triples."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return tuple(
        sorted(
            (S.out_rows[v] >> v & 1, (S.out_rows[v] & mask).bit_count(), (S.in_rows[v] & mask).bit_count())
            for v in vertices
        )
    )


def copies(X: BinaryStructure, Y: BinaryStructure) -> frozenset[frozenset[int]]:
    """Vertex sets of Y inducing a substructure isomorphic to X.

    Enumerating embeddings visits each copy once per automorphism of X, so
    for highly symmetric X the k-subsets of Y are screened by a degree
    profile instead and confirmed by one isomorphism search each.
    """
    k = X.size
    if k > Y.size:
        return frozenset()
    auts = 0
    for _ in _iter_embeddings(X, X):
        auts += 1
        if auts >= _SYMMETRIC:
            break
    else:
        return frozenset(frozenset(f) for f in _iter_embeddings(X, Y))
    target = _profile(X, range(k))
    found = []
    for B in combinations(range(Y.size), k):
        if _profile(Y, B) == target and find_isomorphism(X, Y.induced(B)) is not None:
            found.append(frozenset(B))
    return frozenset(found)


def partial_isomorphisms(X: BinaryStructure, max_size: int) -> list[PartialMap]:
    """Partial isomorphisms of X with at most ``max_size`` points, empty map included."""
    if max_size > X.size:
        raise ValueError(f"max_size {max_size} exceeds structure size {X.size}")
    out = [PartialMap()]
    for k in range(1, max_size + 1):
        for dom in combinations(range(X.size), k):
            sub = X.induced(dom)
            for f in _iter_embeddings(sub, X):
                out.append(PartialMap(tuple(zip(dom, f))))
    return sorted(out, key=lambda p: (len(p), p.pairs))


# -- ultrahomogeneity --------------------------------------------------------


@dataclass(frozen=True)
class UHVerdict:
    holds: bool
    witness: PartialMap | None = None

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        doc = {"ultrahomogeneous": self.holds}
        if self.witness is not None:
            doc["witness"] = self.witness.to_json()
        return doc


def _pinned_colors(n: int, fixed: Sequence[int], extra: int | None = None):
    """Colouring that pins each fixed vertex (and optionally one more) uniquely."""
    col = [0] * n
    for k, a in enumerate(fixed):
        col[a] = k + 1
    if extra is not None:
        col[extra] = len(fixed) + 1
    return col


def find_automorphism(
    X: BinaryStructure, fixed: Sequence[int], x: int, y: int
) -> tuple[int, ...] | None:
    """An automorphism fixing ``fixed`` pointwise and sending x to y, if any."""
    n = X.size
    return find_isomorphism(
        X, X, _pinned_colors(n, fixed, x), _pinned_colors(n, fixed, y)
    )


def _type_over(X: BinaryStructure, base: Sequence[int], v: int):
    return (X.loop(v), tuple(X.code(v, a) for a in base))


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _stabiliser_orbits(X: BinaryStructure, base: tuple[int, ...]):
    """Orbits of the pointwise stabiliser of ``base`` on the remaining vertices.

    Only pairs of the same type over ``base`` can share an orbit; each such
    pair not yet joined is settled by a direct search.  Returns
    ``(orbits, failure)`` where ``failure`` is the first same-type pair that
    no automorphism joins.
    """
    n = X.size
    inside = set(base)
    rest = [v for v in range(n) if v not in inside]
    uf = _UnionFind(n)
    types = {v: _type_over(X, base, v) for v in rest}
    for i, x in enumerate(rest):
        for y in rest[i + 1 :]:
            if types[x] != types[y] or uf.find(x) == uf.find(y):
                continue
            g = find_automorphism(X, base, x, y)
            if g is None:
                return None, (x, y)
            for v in rest:
                uf.union(v, g[v])
    orbits = {}
    for v in rest:
        orbits.setdefault(uf.find(v), []).append(v)
    return sorted(orbits.values()), None


def _marked_colors(n: int, subset) -> list[int]:
    return [1 if v in subset else 0 for v in range(n)]


def is_ultrahomogeneous(X: BinaryStructure) -> UHVerdict:
    """Decide whether every partial isomorphism of X extends to an automorphism.

    Works level by level over subsets ``A`` taken up to automorphism.  If
    every partial isomorphism with an ``|A|``-point domain extends, a map
    ``phi`` on ``A + {x}`` extends iff ``x`` and ``phi``'s image of ``x``
    (pulled back through an automorphism extending ``phi`` restricted to
    ``A``) lie in one orbit of the pointwise stabiliser of ``A``.  So it
    suffices that, for each ``A``, vertices of equal type over ``A`` share a
    stabiliser orbit.  The witness on failure is ``id_A + {x: y}``, which has
    the least possible domain size.
    """
    n = X.size
    level = [()]
    for _ in range(max(n - 1, 0)):
        buckets: dict = {}
        next_level = []
        for base in level:
            orbits, failure = _stabiliser_orbits(X, base)
            if failure is not None:
                x, y = failure
                phi = {a: a for a in base}
                phi[x] = y
                return UHVerdict(False, PartialMap.from_dict(phi))
            for orbit in orbits:
                grown = tuple(sorted(base + (orbit[0],)))
                _add_up_to_automorphism(X, grown, buckets, next_level)
        level = sorted(next_level)
    return UHVerdict(True)


def _add_up_to_automorphism(X, subset, buckets, out) -> None:
    n = X.size
    marked = set(subset)
    (col,) = _refine((X,), (_marked_colors(n, marked),))
    key = tuple(sorted(col))
    for other in buckets.get(key, []):
        if find_isomorphism(X, X, _marked_colors(n, marked), _marked_colors(n, set(other))):
            return
    buckets.setdefault(key, []).append(subset)
    out.append(subset)


# -- copies through components -----------------------------------------------


def copies_via_components(X: BinaryStructure, Y: BinaryStructure) -> frozenset[frozenset[int]]:
    """Copies of X in Y assembled component by component.

    Each component of X is embedded into Y separately; a choice of
    component images is accepted when no vertex of one image is linked to a
    vertex of another by the reflexive-symmetric envelope of Y (this also
    forces the images to be disjoint).
    """
    parts = [sorted(b) for b in components(X).blocks]
    if not parts:
        return frozenset({frozenset()})
    linked = rs_relation(Y).out_rows
    per_part = []
    for block in parts:
        sub = X.induced(block)
        imgs = {}
        for f in _iter_embeddings(sub, Y):
            mask = 0
            for y in f:
                mask |= 1 << y
            imgs[mask] = True
        per_part.append(sorted(imgs))
    results = set()

    def rec(k: int, chosen_mask: int, halo: int):
        if k == len(per_part):
            results.add(chosen_mask)
            return
        for mask in per_part[k]:
            if mask & halo:
                continue
            reach = 0
            m, v = mask, 0
            while m:
                if m & 1:
                    reach |= linked[v]
                m >>= 1
                v += 1
            rec(k + 1, chosen_mask | mask, halo | reach)

    rec(0, 0, 0)
    return frozenset(
        frozenset(v for v in range(Y.size) if mask >> v & 1) for mask in results
    )
