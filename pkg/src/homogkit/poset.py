"""Finite posets and preorders: atoms, separativity, separative quotients, products.

Orders are boolean matrices with ``leq[i, j]`` true iff element ``i`` is
below element ``j``.  Elements carry arbitrary hashable labels.
"""
from __future__ import annotations

import json
from itertools import product as _cartesian
from typing import Hashable, Iterable, Sequence

import numpy as np


class OrderError(ValueError):
    pass


def _closure(rel: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure (Warshall)."""
    m = rel.copy()
    np.fill_diagonal(m, True)
    for k in range(m.shape[0]):
        m |= np.outer(m[:, k], m[k, :])
    return m


class FinitePreorder:
    def __init__(self, elements: Sequence[Hashable], leq: Iterable | np.ndarray = ()):
        self.elements = tuple(elements)
        self.index = {e: k for k, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise OrderError("duplicate element labels")
        n = len(self.elements)
        if isinstance(leq, np.ndarray):
            rel = leq.astype(bool)
            if rel.shape != (n, n):
                raise OrderError(f"order matrix must be {n}x{n}")
        else:
            rel = np.zeros((n, n), dtype=bool)
            for a, b in leq:
                try:
                    rel[self.index[a], self.index[b]] = True
                except KeyError as exc:
                    raise OrderError(f"unknown element {exc.args[0]!r}") from None
        self.leq = _closure(rel)
        self.leq.setflags(write=False)

    def __len__(self) -> int:
        return len(self.elements)

    def le(self, a, b) -> bool:
        return bool(self.leq[self.index[a], self.index[b]])

    def pairs(self) -> set[tuple]:
        return {(self.elements[i], self.elements[j]) for i, j in zip(*np.nonzero(self.leq))}

    def compatibility(self) -> np.ndarray:
        """``C[p, q]`` iff p and q have a common lower bound."""
        L = self.leq.astype(np.int64)
        return (L.T @ L) > 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinitePreorder):
            return NotImplemented
        if set(self.elements) != set(other.elements):
            return False
        return self.pairs() == other.pairs()

    def __hash__(self):
        return hash((frozenset(self.elements), frozenset(self.pairs())))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(self.elements)!r}, {sorted(map(repr, self.cover_pairs()))})"

    def cover_pairs(self) -> list[tuple]:
        """Strict pairs ``a < b`` with nothing strictly between (classes of a preorder collapse)."""
        strict = self.leq & ~self.leq.T
        out = []
        for i, j in zip(*np.nonzero(strict)):
            if not np.any(strict[i, :] & strict[:, j]):
                out.append((self.elements[i], self.elements[j]))
        return out

    def to_json(self) -> dict:
        return {
            "elements": [_label_json(e) for e in self.elements],
            "leq": [[_label_json(a), _label_json(b)] for a, b in sorted(self.pairs(), key=repr)],
        }

    def to_dot(self, name: str = "P") -> str:
        """Hasse diagram, larger elements drawn above."""
        ids = {e: f"n{k}" for k, e in enumerate(self.elements)}
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for e in self.elements:
            label = json.dumps(str(_label_json(e)))
            lines.append(f"  {ids[e]} [label={label}];")
        for a, b in self.cover_pairs():
            lines.append(f"  {ids[a]} -> {ids[b]} [arrowhead=none];")
        lines.append("}")
        return "\n".join(lines)


class FinitePoset(FinitePreorder):
    def __init__(self, elements, leq=()):
        super().__init__(elements, leq)
        both = self.leq & self.leq.T
        np.fill_diagonal(both, False)
        if both.any():
            i, j = map(int, np.argwhere(both)[0])
            raise OrderError(
                f"antisymmetry fails for {self.elements[i]!r} and {self.elements[j]!r}"
            )

    @classmethod
    def from_json(cls, doc) -> "FinitePoset":
        if isinstance(doc, (str, bytes)):
            doc = json.loads(doc)
        if not isinstance(doc, dict) or "elements" not in doc or "leq" not in doc:
            raise OrderError('expected an object with keys "elements" and "leq"')
        elements = [_label_from_json(e) for e in doc["elements"]]
        leq = [(_label_from_json(a), _label_from_json(b)) for a, b in doc["leq"]]
        return cls(elements, leq)


def _label_json(e):
    if isinstance(e, frozenset):
        return sorted(_label_json(x) for x in e)
    if isinstance(e, tuple):
        return [_label_json(x) for x in e]
    return e


def _label_from_json(e):
    if isinstance(e, list):
        return tuple(_label_from_json(x) for x in e)
    return e


# -- constructors ------------------------------------------------------------


def inclusion_poset(family: Iterable[Iterable[int]]) -> FinitePoset:
    """Sets ordered by inclusion; labels are frozensets in a canonical order."""
    members = sorted({frozenset(s) for s in family}, key=lambda s: (len(s), sorted(s)))
    if not members:
        raise OrderError("inclusion poset of an empty family")
    leq = [(a, b) for a in members for b in members if a <= b]
    return FinitePoset(members, leq)


def chain(n: int) -> FinitePoset:
    return FinitePoset(range(n), [(i, i + 1) for i in range(n - 1)])


def antichain(n: int) -> FinitePoset:
    return FinitePoset(range(n))


def product(posets: Sequence[FinitePreorder]) -> FinitePreorder:
    """Componentwise order on tuples; a poset when every factor is one."""
    if len(posets) == 0:
        raise OrderError("product of an empty sequence")
    elements = list(_cartesian(*(p.elements for p in posets)))
    idx = list(_cartesian(*(range(len(p)) for p in posets)))
    n = len(elements)
    rel = np.ones((n, n), dtype=bool)
    for f, p in enumerate(posets):
        coord = np.array([t[f] for t in idx], dtype=np.int64)
        rel &= p.leq[np.ix_(coord, coord)]
    cls = FinitePoset if all(isinstance(p, FinitePoset) for p in posets) else FinitePreorder
    return cls(elements, rel)


# -- atoms and separativity --------------------------------------------------


def atoms(P: FinitePreorder) -> set:
    """Elements all of whose lower bounds are pairwise compatible."""
    C = P.compatibility()
    out = set()
    for p in range(len(P)):
        below = P.leq[:, p]
        if C[np.ix_(below, below)].all():
            out.add(P.elements[p])
    return out


def is_atomless(P: FinitePreorder) -> bool:
    return not atoms(P)


def is_atomic(P: FinitePreorder) -> bool:
    """Every element lies above some atom."""
    at = np.array([e in atoms(P) for e in P.elements], dtype=bool)
    return bool(np.all((P.leq & at[:, None]).any(axis=0))) if len(P) else True


def is_separative(P: FinitePreorder) -> bool:
    """Whenever p is not below q, some r below p is incompatible with q."""
    C = P.compatibility()
    n = len(P)
    for p in range(n):
        below = P.leq[:, p]
        for q in range(n):
            if not P.leq[p, q] and C[below, q].all():
                return False
    return True


def separative_modification(P: FinitePreorder) -> FinitePreorder:
    """``p <=* q`` iff every r below p is compatible with q."""
    C = P.compatibility()
    n = len(P)
    star = np.zeros((n, n), dtype=bool)
    for p in range(n):
        below = P.leq[:, p]
        star[p, :] = C[below, :].all(axis=0)
    return FinitePreorder(P.elements, star)


def separative_quotient(P: FinitePreorder) -> FinitePoset:
    """Classes of mutual ``<=*`` ordered by ``<=*``; labels are frozensets of members."""
    sm = separative_modification(P).leq
    n = len(P)
    eq = sm & sm.T
    seen = [False] * n
    classes = []
    for i in range(n):
        if not seen[i]:
            members = np.nonzero(eq[i])[0]
            for j in members:
                seen[j] = True
            classes.append(members)
    labels = [frozenset(P.elements[j] for j in c) for c in classes]
    reps = [c[0] for c in classes]
    rel = sm[np.ix_(reps, reps)]
    return FinitePoset(labels, rel)


def poset_isomorphism(P: FinitePreorder, Q: FinitePreorder) -> dict | None:
    """Order isomorphism P -> Q as a label mapping, or None.

    Elements of P are matched in index order against Q's elements in index
    order, so the witness is deterministic.
    """
    n = len(P)
    if n != len(Q) or P.leq.sum() != Q.leq.sum():
        return None
    sig_p = [(int(P.leq[:, i].sum()), int(P.leq[i, :].sum())) for i in range(n)]
    sig_q = [(int(Q.leq[:, i].sum()), int(Q.leq[i, :].sum())) for i in range(n)]
    if sorted(sig_p) != sorted(sig_q):
        return None
    assign = [-1] * n
    used = [False] * n

    def rec(i: int) -> bool:
        if i == n:
            return True
        for j in range(n):
            if used[j] or sig_q[j] != sig_p[i]:
                continue
            if any(
                P.leq[i, k] != Q.leq[j, assign[k]] or P.leq[k, i] != Q.leq[assign[k], j]
                for k in range(i)
            ):
                continue
            if P.leq[i, i] != Q.leq[j, j]:
                continue
            assign[i], used[j] = j, True
            if rec(i + 1):
                return True
            assign[i], used[j] = -1, False
        return False

    if not rec(0):
        return None
    return {P.elements[i]: Q.elements[assign[i]] for i in range(n)}


def is_order_isomorphism(P: FinitePreorder, Q: FinitePreorder, f: dict) -> bool:
    if sorted(map(repr, f.values())) != sorted(map(repr, Q.elements)) or len(f) != len(P):
        return False
    return all(P.le(a, b) == Q.le(f[a], f[b]) for a in P.elements for b in P.elements)
