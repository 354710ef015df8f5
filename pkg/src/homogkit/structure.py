"""Finite binary structures and the transforms used throughout the toolkit.

A structure on ``n`` vertices is the set ``{0, ..., n-1}`` together with an
arbitrary set of ordered pairs (loops allowed).  The relation is stored as a
dense bit-matrix: ``out_rows[i]`` has bit ``j`` set iff ``(i, j)`` is a pair,
and ``in_rows`` is its transpose.  Values are immutable.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class StructureParseError(ValueError):
    """Raised when a structure document is malformed."""


class BinaryStructure:
    __slots__ = ("size", "out_rows", "in_rows", "_hash")

    def __init__(self, size: int, pairs: Iterable[tuple[int, int]] = ()):
        if size < 0:
            raise ValueError(f"size must be nonnegative, got {size}")
        out = [0] * size
        inn = [0] * size
        for i, j in pairs:
            if not (0 <= i < size and 0 <= j < size):
                raise ValueError(f"pair ({i}, {j}) out of range for size {size}")
            out[i] |= 1 << j
            inn[j] |= 1 << i
        self.size = size
        self.out_rows = tuple(out)
        self.in_rows = tuple(inn)
        self._hash = None

    @classmethod
    def from_rows(cls, out_rows: Sequence[int]) -> "BinaryStructure":
        n = len(out_rows)
        return cls(n, ((i, j) for i in range(n) for j in range(n) if out_rows[i] >> j & 1))

    @classmethod
    def from_matrix(cls, matrix) -> "BinaryStructure":
        m = np.asarray(matrix, dtype=bool)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("adjacency matrix must be square")
        return cls(m.shape[0], zip(*np.nonzero(m)))

    # -- access -----------------------------------------------------------

    def has(self, i: int, j: int) -> bool:
        return bool(self.out_rows[i] >> j & 1)

    def loop(self, i: int) -> bool:
        return bool(self.out_rows[i] >> i & 1)

    def code(self, i: int, j: int) -> int:
        """Two-bit relation code of the ordered pair: bit 0 is i->j, bit 1 is j->i."""
        return (self.out_rows[i] >> j & 1) | ((self.out_rows[j] >> i & 1) << 1)

    @property
    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.iter_pairs())

    def iter_pairs(self):
        for i, row in enumerate(self.out_rows):
            j = 0
            while row:
                if row & 1:
                    yield (i, j)
                row >>= 1
                j += 1

    def sorted_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.iter_pairs())

    @property
    def matrix(self) -> np.ndarray:
        m = np.zeros((self.size, self.size), dtype=bool)
        for i, j in self.iter_pairs():
            m[i, j] = True
        return m

    def __len__(self) -> int:
        return self.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryStructure):
            return NotImplemented
        return self.size == other.size and self.out_rows == other.out_rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.size, self.out_rows))
        return self._hash

    def __repr__(self) -> str:
        return f"BinaryStructure({self.size}, {self.sorted_pairs()})"

    def induced(self, vertices: Iterable[int]) -> "BinaryStructure":
        """Substructure on ``vertices``, relabeled 0.. in increasing vertex order."""
        vs = sorted(set(vertices))
        pos = {v: k for k, v in enumerate(vs)}
        return BinaryStructure(
            len(vs), ((pos[i], pos[j]) for i in vs for j in vs if self.has(i, j))
        )

    def relabel(self, perm: Sequence[int]) -> "BinaryStructure":
        """Image of the structure under the bijection ``i -> perm[i]``."""
        return BinaryStructure(self.size, ((perm[i], perm[j]) for i, j in self.iter_pairs()))

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {"n": self.size, "pairs": [list(p) for p in self.sorted_pairs()]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, doc) -> "BinaryStructure":
        if isinstance(doc, (str, bytes)):
            try:
                doc = json.loads(doc)
            except json.JSONDecodeError as exc:
                raise StructureParseError(f"invalid JSON: {exc}") from exc
        if not isinstance(doc, dict) or "n" not in doc or "pairs" not in doc:
            raise StructureParseError('expected an object with keys "n" and "pairs"')
        n = doc["n"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise StructureParseError(f'"n" must be a nonnegative integer, got {n!r}')
        seen = set()
        for raw in doc["pairs"]:
            if (
                not isinstance(raw, (list, tuple))
                or len(raw) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in raw)
            ):
                raise StructureParseError(f"malformed pair {raw!r}")
            pair = (raw[0], raw[1])
            if not (0 <= pair[0] < n and 0 <= pair[1] < n):
                raise StructureParseError(f"pair {list(pair)} out of range for n={n}")
            if pair in seen:
                raise StructureParseError(f"duplicate pair {list(pair)}")
            seen.add(pair)
        return cls(n, seen)

    def to_dot(self, name: str = "X") -> str:
        """DOT text; symmetric pairs are drawn as undirected edges (``dir=none``)."""
        lines = [f"digraph {name} {{"]
        lines += [f"  {v};" for v in range(self.size)]
        for i, j in self.sorted_pairs():
            if i == j:
                lines.append(f"  {i} -> {i};")
            elif self.has(j, i):
                if i < j:
                    lines.append(f"  {i} -> {j} [dir=none];")
            else:
                lines.append(f"  {i} -> {j};")
        lines.append("}")
        return "\n".join(lines)


def _full_mask(n: int) -> int:
    return (1 << n) - 1


# -- transforms --------------------------------------------------------------


def complement(X: BinaryStructure) -> BinaryStructure:
    """Literal set complement in X*X; loops appear wherever X has none."""
    full = _full_mask(X.size)
    return BinaryStructure.from_rows([full & ~row for row in X.out_rows])


def inverse(X: BinaryStructure) -> BinaryStructure:
    return BinaryStructure.from_rows(X.in_rows)


def reflexify(X: BinaryStructure) -> BinaryStructure:
    return BinaryStructure.from_rows([row | (1 << i) for i, row in enumerate(X.out_rows)])


def irreflexify(X: BinaryStructure) -> BinaryStructure:
    return BinaryStructure.from_rows([row & ~(1 << i) for i, row in enumerate(X.out_rows)])


def enlarge(X: BinaryStructure) -> BinaryStructure:
    """Keep every pair and join each unrelated pair of distinct vertices both ways."""
    full = _full_mask(X.size)
    rows = []
    for i in range(X.size):
        unrelated = full & ~(X.out_rows[i] | X.in_rows[i]) & ~(1 << i)
        rows.append(X.out_rows[i] | unrelated)
    return BinaryStructure.from_rows(rows)


def rs_relation(X: BinaryStructure) -> BinaryStructure:
    """Reflexive-symmetric envelope: diagonal, pairs and reversed pairs."""
    return BinaryStructure.from_rows(
        [X.out_rows[i] | X.in_rows[i] | (1 << i) for i in range(X.size)]
    )


def disjoint_union(parts: Sequence[BinaryStructure]) -> BinaryStructure:
    if len(parts) == 0:
        raise ValueError("disjoint union of an empty sequence")
    pairs = []
    offset = 0
    for part in parts:
        pairs.extend((i + offset, j + offset) for i, j in part.iter_pairs())
        offset += part.size
    return BinaryStructure(offset, pairs)


# -- components --------------------------------------------------------------


@dataclass(frozen=True)
class ComponentPartition:
    blocks: tuple[frozenset[int], ...]
    block_of: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.blocks)

    def to_json(self) -> list[list[int]]:
        return [sorted(b) for b in self.blocks]


def components(X: BinaryStructure) -> ComponentPartition:
    """Classes of the least equivalence containing the relation.

    Blocks are ordered by their least vertex.
    """
    n = X.size
    neighbours = [X.out_rows[i] | X.in_rows[i] for i in range(n)]
    block_of = [-1] * n
    blocks = []
    for start in range(n):
        if block_of[start] >= 0:
            continue
        seen = 1 << start
        frontier = 1 << start
        while frontier:
            nxt = 0
            v = 0
            f = frontier
            while f:
                if f & 1:
                    nxt |= neighbours[v]
                f >>= 1
                v += 1
            frontier = nxt & ~seen
            seen |= nxt
        members = frozenset(v for v in range(n) if seen >> v & 1)
        for v in members:
            block_of[v] = len(blocks)
        blocks.append(members)
    return ComponentPartition(tuple(blocks), tuple(block_of))


def is_connected(X: BinaryStructure) -> bool:
    # The empty structure has no components, so it is not connected.
    return len(components(X)) == 1


# -- predicates --------------------------------------------------------------


def is_reflexive(X: BinaryStructure) -> bool:
    return all(X.loop(i) for i in range(X.size))


def is_irreflexive(X: BinaryStructure) -> bool:
    return not any(X.loop(i) for i in range(X.size))


def is_symmetric(X: BinaryStructure) -> bool:
    return X.out_rows == X.in_rows


def is_asymmetric(X: BinaryStructure) -> bool:
    return all(X.out_rows[i] & X.in_rows[i] == 0 for i in range(X.size))


def is_graph(X: BinaryStructure) -> bool:
    return is_irreflexive(X) and is_symmetric(X)


def is_digraph(X: BinaryStructure) -> bool:
    return is_irreflexive(X) and is_asymmetric(X)


def is_complete(X: BinaryStructure) -> bool:
    """Every two distinct vertices are related in at least one direction."""
    full = _full_mask(X.size)
    return all((X.out_rows[i] | X.in_rows[i] | (1 << i)) == full for i in range(X.size))


def is_tournament(X: BinaryStructure) -> bool:
    return is_digraph(X) and is_complete(X)


def is_biconnected(X: BinaryStructure) -> bool:
    return is_connected(X) and is_connected(complement(X))


def predicates(X: BinaryStructure) -> dict[str, bool]:
    return {
        "reflexive": is_reflexive(X),
        "irreflexive": is_irreflexive(X),
        "graph": is_graph(X),
        "digraph": is_digraph(X),
        "tournament": is_tournament(X),
        "complete": is_complete(X),
        "connected": is_connected(X),
        "biconnected": is_biconnected(X),
    }


# -- isomorphism -------------------------------------------------------------


def _refine(structs, colorings):
    """Joint colour refinement of several structures.

    Colours are ints shared across the structures, so equal colours are
    comparable between them.  Returns the stable colourings.
    """
    colorings = [list(c) for c in colorings]
    ncolors = len({c for col in colorings for c in col})
    while True:
        sigs = []
        for S, col in zip(structs, colorings):
            classes = {}
            for v, c in enumerate(col):
                classes[c] = classes.get(c, 0) | (1 << v)
            masks = sorted(classes.items())
            ssig = []
            for v in range(S.size):
                o, i = S.out_rows[v], S.in_rows[v]
                both = o & i
                oo = o & ~i
                ii = i & ~o
                row = tuple(
                    (c, (both & m).bit_count(), (oo & m).bit_count(), (ii & m).bit_count())
                    for c, m in masks
                )
                ssig.append((col[v], S.loop(v), row))
            sigs.append(ssig)
        distinct = sorted({s for ss in sigs for s in ss})
        if len(distinct) == ncolors:
            return colorings
        index = {s: k for k, s in enumerate(distinct)}
        colorings = [[index[s] for s in ss] for ss in sigs]
        ncolors = len(distinct)


_PLAIN_BUDGET = 2000


class _BudgetExceeded(Exception):
    pass


def _same_histogram(a, b) -> bool:
    return sorted(a) == sorted(b)


def find_isomorphism(
    X: BinaryStructure,
    Y: BinaryStructure,
    colors_x: Sequence[int] | None = None,
    colors_y: Sequence[int] | None = None,
) -> tuple[int, ...] | None:
    """Lexicographically least colour-respecting isomorphism X -> Y, or None.

    The optional initial colourings restrict vertices of X to same-coloured
    vertices of Y; pinning a vertex is done by giving it a unique colour on
    both sides.  Search is depth-first over vertices 0, 1, ... of X with
    targets tried in increasing order, individualising and refining at each
    step, so the first hit is the lexicographic minimum.
    """
    n = X.size
    if n != Y.size:
        return None
    if X.out_rows.count(0) != Y.out_rows.count(0) or sum(
        r.bit_count() for r in X.out_rows
    ) != sum(r.bit_count() for r in Y.out_rows):
        return None
    cx = list(colors_x) if colors_x is not None else [0] * n
    cy = list(colors_y) if colors_y is not None else [0] * n
    if not _same_histogram(cx, cy):
        return None
    cx, cy = _refine((X, Y), (cx, cy))
    if not _same_histogram(cx, cy):
        return None
    assignment = [-1] * n

    def consistent(v: int, w: int) -> bool:
        if X.loop(v) != Y.loop(w):
            return False
        for u in range(v):
            if X.code(v, u) != Y.code(w, assignment[u]):
                return False
        return True

    budget = [_PLAIN_BUDGET]

    def plain(v: int, used: int) -> bool:
        # Consistency checks only; gives up (raises) once the budget is spent.
        if v == n:
            return True
        budget[0] -= 1
        if budget[0] < 0:
            raise _BudgetExceeded
        for w in range(n):
            if used >> w & 1 or cy[w] != cx[v] or not consistent(v, w):
                continue
            assignment[v] = w
            if plain(v + 1, used | 1 << w):
                return True
            assignment[v] = -1
        return False

    def refined(v: int, cx, cy) -> bool:
        if v == n:
            return True
        used = set(assignment[:v])
        fresh = max(max(cx), max(cy)) + 1
        for w in range(n):
            if w in used or cy[w] != cx[v] or not consistent(v, w):
                continue
            nx = list(cx)
            ny = list(cy)
            nx[v] = fresh
            ny[w] = fresh
            nx, ny = _refine((X, Y), (nx, ny))
            if not _same_histogram(nx, ny):
                continue
            assignment[v] = w
            if refined(v + 1, nx, ny):
                return True
            assignment[v] = -1
        return False

    # Both searches visit candidates in the same lexicographic order and only
    # prune infeasible branches, so either returns the least isomorphism.
    try:
        found = plain(0, 0)
    except _BudgetExceeded:
        assignment[:] = [-1] * n
        found = refined(0, cx, cy)
    return tuple(assignment) if found else None


def isomorphism(X: BinaryStructure, Y: BinaryStructure) -> tuple[int, ...] | None:
    """Lexicographically least isomorphism ``f`` as the tuple ``(f(0), f(1), ...)``."""
    return find_isomorphism(X, Y)


def is_isomorphism(X: BinaryStructure, Y: BinaryStructure, f: Sequence[int]) -> bool:
    if X.size != Y.size or len(f) != X.size or sorted(f) != list(range(Y.size)):
        return False
    return X.relabel(f) == Y


# -- named small structures --------------------------------------------------


def empty(n: int) -> BinaryStructure:
    return BinaryStructure(n)


def complete_graph(n: int) -> BinaryStructure:
    return BinaryStructure(n, ((i, j) for i in range(n) for j in range(n) if i != j))


def diagonal(n: int) -> BinaryStructure:
    return BinaryStructure(n, ((i, i) for i in range(n)))


def directed_cycle(n: int) -> BinaryStructure:
    return BinaryStructure(n, ((i, (i + 1) % n) for i in range(n)))


def cycle_graph(n: int) -> BinaryStructure:
    arcs = [(i, (i + 1) % n) for i in range(n)]
    return BinaryStructure(n, arcs + [(j, i) for i, j in arcs])


def path_graph(n: int) -> BinaryStructure:
    arcs = [(i, i + 1) for i in range(n - 1)]
    return BinaryStructure(n, arcs + [(j, i) for i, j in arcs])


def linear_order(n: int) -> BinaryStructure:
    """Strict linear order 0 < 1 < ... < n-1."""
    return BinaryStructure(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def complete_bipartite(m: int, n: int) -> BinaryStructure:
    left, right = range(m), range(m, m + n)
    return BinaryStructure(
        m + n, [(i, j) for i in left for j in right] + [(j, i) for i in left for j in right]
    )
