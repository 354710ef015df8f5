"""Named finite structures and reproducible random structures.

Random structures are drawn with SplitMix64 so that a given
``(n, seed, kind)`` produces the same structure on every platform:

    state = (state + 0x9E3779B97F4A7C15) mod 2**64
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2**64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB mod 2**64
    output z ^ (z >> 31)

The generator is seeded with ``seed`` directly.  Candidate pairs are visited
in row-major order and each takes one draw.  Kind ``any`` and kind
``irreflexive`` keep a pair when the draw's top bit is set.  For ``graph``
the loop-free pairs ``i < j`` are visited, and a set top bit adds both
``(i, j)`` and ``(j, i)``.  For ``digraph`` those pairs each take one of
three states (none, ``i -> j``, ``j -> i``), with draws rejected above the
largest multiple of 3 so the choice is uniform.
"""
from __future__ import annotations

from typing import Callable

from . import structure as st
from .structure import BinaryStructure

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def bit(self) -> bool:
        return bool(self.next() >> 63)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection."""
        limit = (1 << 64) - (1 << 64) % bound
        while True:
            z = self.next()
            if z < limit:
                return z % bound


KINDS = ("any", "irreflexive", "digraph", "graph")


def random_structure(n: int, seed: int, kind: str = "any") -> BinaryStructure:
    if n < 0:
        raise ValueError("n must be nonnegative")
    rng = SplitMix64(seed)
    pairs = []
    if kind == "any":
        pairs = [(i, j) for i in range(n) for j in range(n) if rng.bit()]
    elif kind == "irreflexive":
        pairs = [(i, j) for i in range(n) for j in range(n) if i != j and rng.bit()]
    elif kind == "graph":
        for i in range(n):
            for j in range(i + 1, n):
                if rng.bit():
                    pairs += [(i, j), (j, i)]
    elif kind == "digraph":
        for i in range(n):
            for j in range(i + 1, n):
                state = rng.below(3)
                if state == 1:
                    pairs.append((i, j))
                elif state == 2:
                    pairs.append((j, i))
    else:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    return BinaryStructure(n, pairs)


def _mkn(m: int, n: int) -> BinaryStructure:
    return st.disjoint_union([st.complete_graph(n)] * m) if m else BinaryStructure(0)


_FIXTURES: dict[str, tuple[int, Callable[..., BinaryStructure], str]] = {
    "An": (1, st.empty, "n isolated points"),
    "Kn": (1, st.complete_graph, "complete graph"),
    "mKn": (2, _mkn, "m disjoint copies of K_n"),
    "C3": (0, lambda: st.directed_cycle(3), "3-cycle tournament"),
    "DCn": (1, st.directed_cycle, "directed n-cycle"),
    "Cn": (1, st.cycle_graph, "undirected n-cycle"),
    "Pn": (1, st.path_graph, "undirected path on n points"),
    "Ln": (1, st.linear_order, "strict linear order"),
    "Kmn": (2, st.complete_bipartite, "complete bipartite graph"),
    "Deltan": (1, st.diagonal, "n loops, nothing else"),
}


def fixture_names() -> list[str]:
    return sorted(_FIXTURES)


def fixture(name: str, params=()) -> BinaryStructure:
    try:
        arity, build, _ = _FIXTURES[name]
    except KeyError:
        raise ValueError(f"unknown fixture {name!r}; known: {', '.join(fixture_names())}") from None
    params = list(params)
    if len(params) != arity:
        raise ValueError(f"fixture {name!r} takes {arity} parameter(s), got {len(params)}")
    if any(not isinstance(p, int) or p < 0 for p in params):
        raise ValueError(f"fixture parameters must be nonnegative integers: {params}")
    return build(*params)
