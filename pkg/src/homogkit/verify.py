"""Named verification suites.

Each suite checks one claim over an exhaustive family of small cases plus a
seeded random sample, and reports the number of cases and any mismatches.
The default seed can be overridden with the ``HOMOGKIT_SEED`` environment
variable.
"""
from __future__ import annotations

import itertools
import os
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator

from . import embeddings as emb
from . import homogeneity as hom
from . import omega as om
from . import oracles
from . import poset as po
from . import structure as st
from .catalog import SplitMix64, fixture, random_structure
from .structure import BinaryStructure

DEFAULT_SEED = 20261015


def default_seed() -> int:
    return int(os.environ.get("HOMOGKIT_SEED", DEFAULT_SEED))


@dataclass
class SuiteResult:
    name: str
    claim: str
    cases: int = 0
    mismatches: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.cases > 0 and not self.mismatches

    def fail(self, message: str) -> None:
        # Keep reports short; the count is what matters once something breaks.
        if len(self.mismatches) < 20:
            self.mismatches.append(message)
        else:
            self.mismatches[-1] = f"... and more (last: {message})"

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.name}: {self.cases} cases, "
            f"{len(self.mismatches)} mismatches ({self.seconds:.1f}s) - {self.claim}"
        )

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "claim": self.claim,
            "passed": self.passed,
            "cases": self.cases,
            "mismatches": self.mismatches,
            "seconds": round(self.seconds, 3),
        }


# -- enumerators -------------------------------------------------------------


def all_irreflexive(n: int) -> Iterator[BinaryStructure]:
    slots = [(i, j) for i in range(n) for j in range(n) if i != j]
    for bits in itertools.product((0, 1), repeat=len(slots)):
        yield BinaryStructure(n, [p for p, b in zip(slots, bits) if b])


def all_digraphs(n: int) -> Iterator[BinaryStructure]:
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for states in itertools.product((0, 1, 2), repeat=len(slots)):
        yield BinaryStructure(
            n, [(i, j) if s == 1 else (j, i) for (i, j), s in zip(slots, states) if s]
        )


def all_complete_irreflexive(n: int) -> Iterator[BinaryStructure]:
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for states in itertools.product((0, 1, 2), repeat=len(slots)):
        pairs = []
        for (i, j), s in zip(slots, states):
            if s in (0, 2):
                pairs.append((i, j))
            if s in (1, 2):
                pairs.append((j, i))
        yield BinaryStructure(n, pairs)


def connected_classes(max_size: int) -> list[BinaryStructure]:
    """Connected irreflexive structures up to isomorphism, by size."""
    reps: list[BinaryStructure] = []
    for n in range(1, max_size + 1):
        for X in all_irreflexive(n):
            if st.is_connected(X) and not any(
                R.size == n and st.isomorphism(X, R) is not None for R in reps
            ):
                reps.append(X)
    return reps


def _shuffle(rng: SplitMix64, items: list) -> list:
    items = list(items)
    for i in range(len(items) - 1, 0, -1):
        j = rng.below(i + 1)
        items[i], items[j] = items[j], items[i]
    return items


def random_disconnected_irreflexive(rng: SplitMix64) -> BinaryStructure:
    """Irreflexive structure on 5-7 points with at least two components.

    A quarter of the draws are disjoint copies of one random complete
    structure, so that ultrahomogeneous cases actually occur.
    """
    n = 5 + rng.below(3)
    if rng.below(4) == 0:
        for size in (1, 2, 3):
            if n % size == 0 and n // size >= 2 and rng.bit():
                break
        else:
            size = 1
        while True:
            base = random_structure(size, rng.next(), "irreflexive")
            base = st.enlarge(hom.orientation(st.enlarge(base))) if size > 1 else base
            if st.is_complete(base):
                break
        X = st.disjoint_union([base] * (n // size))
        perm = _shuffle(rng, range(X.size))
        return X.relabel(perm)
    while True:
        cut = 1 + rng.below(n - 1)
        left = random_structure(cut, rng.next(), "irreflexive")
        right = random_structure(n - cut, rng.next(), "irreflexive")
        X = st.disjoint_union([left, right]).relabel(_shuffle(rng, range(n)))
        if not st.is_connected(X):
            return X


def random_poset(rng: SplitMix64, max_size: int) -> po.FinitePoset:
    n = 1 + rng.below(max_size)
    order = _shuffle(rng, range(n))
    rel = [(order[i], order[j]) for i in range(n) for j in range(i + 1, n) if rng.bit()]
    return po.FinitePoset(range(n), rel)


def random_upset(rng: SplitMix64, infinite: bool = False) -> om.UPSet:
    while True:
        t = rng.below(7)
        p = 1 + rng.below(6)
        prefix = [k for k in range(t) if rng.bit()]
        residues = [r for r in range(p) if rng.bit()]
        A = om.canonicalize(t, prefix, p, residues)
        if not infinite or not A.is_finite:
            return A


# -- suites ------------------------------------------------------------------


def suite_component_criterion(seed: int, samples: int = 500) -> SuiteResult:
    res = SuiteResult("component-criterion", "componentwise test agrees with ultrahomogeneity")
    rng = SplitMix64(seed)

    def check(X):
        res.cases += 1
        got = hom.component_criterion(X).uh
        want = emb.is_ultrahomogeneous(X).holds
        if got != want:
            res.fail(f"{X!r}: criterion {got}, direct {want}")

    for n in range(2, 5):
        for X in all_irreflexive(n):
            if not st.is_connected(X):
                check(X)
    for _ in range(samples):
        check(random_disconnected_irreflexive(rng))
    return res


def suite_orientation_duality(seed: int) -> SuiteResult:
    res = SuiteResult("orientation-duality", "orientation and enlargement are mutually inverse")
    for n in range(0, 5):
        for Y in all_digraphs(n):
            res.cases += 1
            if hom.orientation(st.enlarge(Y)) != Y:
                res.fail(f"orientation(enlarge({Y!r})) differs")
        for X in all_complete_irreflexive(n):
            res.cases += 1
            if st.enlarge(hom.orientation(X)) != X:
                res.fail(f"enlarge(orientation({X!r})) differs")
    return res


def suite_decomposition_roundtrip(seed: int) -> SuiteResult:
    res = SuiteResult(
        "decomposition-roundtrip", "decompose recovers variant, digraph and multiplicity"
    )
    uh_digraphs = [
        Y for n in range(1, 5) for Y in all_digraphs(n) if emb.is_ultrahomogeneous(Y).holds
    ]
    for Y in uh_digraphs:
        for kappa in (2, 3, 4):
            for variant in ("plain", "re", "c", "re_c"):
                res.cases += 1
                X = hom.reconstruct(variant, Y, kappa)
                try:
                    rep = hom.decompose(X)
                except Exception as exc:  # report, do not abort the suite
                    res.fail(f"{variant} {Y!r} x{kappa}: {exc}")
                    continue
                if rep.variant != variant or rep.multiplicity != kappa:
                    res.fail(f"{variant} {Y!r} x{kappa}: got {rep.variant} x{rep.multiplicity}")
                elif st.isomorphism(rep.digraph, Y) is None:
                    res.fail(f"{variant} {Y!r} x{kappa}: digraph {rep.digraph!r}")
                elif not st.is_isomorphism(
                    hom.reconstruct(rep.variant, rep.digraph, rep.multiplicity), X, rep.witness
                ):
                    res.fail(f"{variant} {Y!r} x{kappa}: witness does not verify")
    for m in range(2, 5):
        for n in range(1, 5):
            res.cases += 1
            rep = hom.decompose(fixture("mKn", [m, n]))
            if (rep.variant, rep.digraph, rep.multiplicity) != ("plain", st.empty(n), m):
                res.fail(f"mKn {m},{n}: {rep.to_json()}")
    return res


def suite_transform_invariance(seed: int, samples: int = 500) -> SuiteResult:
    res = SuiteResult(
        "transform-invariance",
        "embeddings survive complement, inverse, (ir)reflexification and enlargement",
    )
    rng = SplitMix64(seed)

    def same(name, X, A, B):
        if set(emb.embeddings(A, A)) != set(emb.embeddings(B, B)):
            res.fail(f"{name} changes Emb for {X!r}")

    for k in range(samples):
        n = rng.below(6)
        kind = ("any", "irreflexive", "any", "irreflexive")[k % 4]
        X = random_structure(n, rng.next(), kind)
        if k % 4 == 2:
            X = st.reflexify(X)
        res.cases += 1
        same("complement", X, X, st.complement(X))
        same("inverse", X, X, st.inverse(X))
        if st.is_irreflexive(X):
            same("reflexify", X, X, st.reflexify(X))
        if st.is_reflexive(X):
            same("irreflexify", X, X, st.irreflexify(X))
        if n <= 4:
            verdicts = {
                emb.is_ultrahomogeneous(S).holds for S in (X, st.complement(X), st.inverse(X))
            }
            if len(verdicts) != 1:
                res.fail(f"ultrahomogeneity not invariant for {X!r}")
    for n in range(0, 5):
        for Y in all_digraphs(n):
            res.cases += 1
            E = st.enlarge(Y)
            if E != st.complement(st.reflexify(st.inverse(Y))):
                res.fail(f"enlargement identity fails for {Y!r}")
            same("enlarge", Y, Y, E)
    return res


def _random_pair(rng: SplitMix64):
    Y = random_structure(1 + rng.below(5), rng.next(), "any")
    if rng.bit():
        keep = [v for v in range(Y.size) if rng.bit()] or [0]
        X = Y.induced(keep).relabel(_shuffle(rng, range(len(keep))))
    else:
        X = random_structure(1 + rng.below(Y.size), rng.next(), "any")
    return X, Y


def suite_component_images(seed: int, samples: int = 300) -> SuiteResult:
    res = SuiteResult("component-images", "embeddings map components into components")
    rng = SplitMix64(seed)
    pairs = [_random_pair(rng) for _ in range(samples)]
    pairs += [(X, X) for X, _ in pairs[: samples // 3]]
    for X, Y in pairs:
        res.cases += 1
        cx, cy = st.components(X), st.components(Y)
        for f in emb.embeddings(X, Y):
            img = f.image
            for x in range(X.size):
                block = cx.blocks[cx.block_of[x]]
                image_block = {img[v] for v in block}
                target = cy.blocks[cy.block_of[img[x]]]
                if not image_block <= target:
                    res.fail(f"{X!r} -> {Y!r} via {img}: component of {x} escapes")
                bl = sorted(block)
                sub_x = X.induced(bl)
                sub_y = Y.induced(sorted(image_block))
                ordered = sorted(image_block)
                restricted = [ordered.index(img[v]) for v in bl]
                if not st.is_isomorphism(sub_x, sub_y, restricted):
                    res.fail(f"{X!r} -> {Y!r} via {img}: restriction to [{x}] not an isomorphism")
                if X.size == Y.size and image_block != target:
                    res.fail(f"{X!r} -> {Y!r} via {img}: bijection does not hit [{img[x]}]")
    return res


def suite_componentwise_copies(seed: int, samples: int = 200) -> SuiteResult:
    res = SuiteResult(
        "componentwise-copies", "copies assembled per component equal copies found directly"
    )
    alphabet = connected_classes(3)
    xs = [[c] for c in alphabet] + [
        list(p) for p in itertools.combinations_with_replacement(alphabet, 2)
    ]
    ys = xs + [list(p) for p in itertools.combinations_with_replacement(alphabet, 3)]
    X_list = [st.disjoint_union(p) for p in xs]
    Y_list = [st.disjoint_union(p) for p in ys]

    def check(X, Y):
        res.cases += 1
        if emb.copies(X, Y) != emb.copies_via_components(X, Y):
            res.fail(f"copies differ for {X!r} in {Y!r}")

    for X in X_list:
        for Y in Y_list:
            check(X, Y)
    rng = SplitMix64(seed)
    for _ in range(samples):
        parts = [
            random_structure(1 + rng.below(4), rng.next(), "any") for _ in range(2 + rng.below(2))
        ]
        extra = [
            random_structure(1 + rng.below(4), rng.next(), "any") for _ in range(rng.below(3))
        ]
        X = st.disjoint_union(parts)
        Y = st.disjoint_union(parts + extra)
        Y = Y.relabel(_shuffle(rng, range(Y.size)))
        check(X, Y)
    return res


def suite_separative_products(seed: int, samples: int = 300) -> SuiteResult:
    res = SuiteResult(
        "separative-products",
        "atoms agree across P, sm P, sq P; sm and sq respect isomorphism and products",
    )
    rng = SplitMix64(seed)
    for _ in range(samples):
        res.cases += 1
        P = random_poset(rng, 6)
        sm, sq = po.separative_modification(P), po.separative_quotient(P)
        flags = {bool(po.atoms(P)), bool(po.atoms(sm)), bool(po.atoms(sq))}
        if len(flags) != 1:
            res.fail(f"atom existence disagrees for {P!r}")
        perm = _shuffle(rng, range(len(P)))
        Q = po.FinitePoset(
            [f"q{perm[i]}" for i in range(len(P))],
            [(f"q{perm[a]}", f"q{perm[b]}") for a, b in P.pairs()],
        )
        f = {i: f"q{perm[i]}" for i in range(len(P))}
        smq = po.separative_modification(Q)
        if any(sm.le(a, b) != smq.le(f[a], f[b]) for a in P.elements for b in P.elements):
            res.fail(f"sm does not transport along an isomorphism for {P!r}")
        if po.poset_isomorphism(sq, po.separative_quotient(Q)) is None:
            res.fail(f"sq of isomorphic posets not isomorphic for {P!r}")

        A, B = random_poset(rng, 5), random_poset(rng, 5)
        prod = po.product([A, B])
        sm_prod = po.separative_modification(prod)
        if sm_prod != po.product(
            [po.separative_modification(A), po.separative_modification(B)]
        ):
            res.fail(f"sm of product differs for {A!r} x {B!r}")
        sq_prod = po.separative_quotient(prod)
        other = po.product([po.separative_quotient(A), po.separative_quotient(B)])
        if po.poset_isomorphism(sq_prod, other) is None:
            res.fail(f"sq of product not isomorphic for {A!r} x {B!r}")
    return res


def suite_separative_quotient(seed: int, samples: int = 300) -> SuiteResult:
    res = SuiteResult(
        "separative-quotient", "sq is separative, idempotent, and collapses chains"
    )
    rng = SplitMix64(seed)
    for _ in range(samples):
        res.cases += 1
        P = random_poset(rng, 7)
        sq = po.separative_quotient(P)
        if not po.is_separative(sq):
            res.fail(f"sq not separative for {P!r}")
        if po.poset_isomorphism(po.separative_quotient(sq), sq) is None:
            res.fail(f"sq not idempotent for {P!r}")
    for n in range(1, 10):
        res.cases += 1
        if len(po.separative_quotient(po.chain(n))) != 1:
            res.fail(f"sq of the {n}-chain is not a point")
    return res


_OPS: dict[str, tuple[Callable, Callable[[bool, bool], bool]]] = {
    "union": (om.union, lambda a, b: a or b),
    "intersect": (om.intersect, lambda a, b: a and b),
    "difference": (om.difference, lambda a, b: a and not b),
}


def suite_fragment_soundness(seed: int, samples: int = 1000) -> SuiteResult:
    res = SuiteResult(
        "fragment-soundness", "set operations and finiteness agree with pointwise evaluation"
    )
    rng = SplitMix64(seed)
    for _ in range(samples):
        res.cases += 1
        A, B = random_upset(rng), random_upset(rng)
        for name, (fn, op) in _OPS.items():
            got = fn(A, B)
            t, L, members = oracles.window_members(A, B, op)
            if got.members(t + 2 * L) != members:
                res.fail(f"{name}({A}, {B}) = {got} disagrees pointwise")
            if got.is_finite != oracles.finite_by_window(A, B, op):
                res.fail(f"{name}({A}, {B}) finiteness disagrees")
        C = om.complement(A)
        stop = A.threshold + 2 * A.period
        if any((k in C) == (k in A) for k in range(stop)):
            res.fail(f"complement({A}) disagrees pointwise")
        if om.almost_subset(A, B) != oracles.finite_by_window(A, B, lambda a, b: a and not b):
            res.fail(f"almost_subset({A}, {B}) disagrees")
        if om.compatible(A, B) == oracles.finite_by_window(A, B, lambda a, b: a and b):
            res.fail(f"compatible({A}, {B}) disagrees")
        if om.parse(om.render(A)) != A:
            res.fail(f"render/parse round trip fails for {A}")
    return res


def suite_almost_inclusion(seed: int, samples: int = 500) -> SuiteResult:
    res = SuiteResult(
        "almost-inclusion",
        "the separative order on infinite sets is inclusion modulo finite sets",
    )
    rng = SplitMix64(seed)
    for k in range(samples):
        res.cases += 1
        A = random_upset(rng, infinite=True)
        if k % 3 == 0:
            # Force some positive instances: B is A up to finitely many points.
            B = om.union(A, om.finite([rng.below(10)]))
            B = om.difference(B, om.finite([rng.below(10)]))
        else:
            B = random_upset(rng, infinite=True)
        verdict = om.sm_leq_witness(A, B)
        want = oracles.finite_by_window(A, B, lambda a, b: a and not b)
        if verdict.leq != want:
            res.fail(f"sm verdict {verdict.leq} for {A} <=* {B}, expected {want}")
        if not verdict.leq:
            W = verdict.witness
            if W is None or W.is_finite:
                res.fail(f"missing or finite witness for {A} <=* {B}")
            elif not om.almost_subset(W, A) or om.compatible(W, B):
                res.fail(f"witness {W} for {A} <=* {B} is not below A and incompatible with B")
    return res


def suite_split_witness(seed: int, samples: int = 200) -> SuiteResult:
    res = SuiteResult("split-witness", "every infinite set splits into two disjoint infinite sets")
    rng = SplitMix64(seed)
    for _ in range(samples):
        res.cases += 1
        A = random_upset(rng, infinite=True)
        C, D = om.split(A)
        stop = A.threshold + 4 * A.period
        if C.is_finite or D.is_finite:
            res.fail(f"split({A}) has a finite half")
        if any((k in C) and (k in D) for k in range(stop)) or not om.intersect(C, D).is_finite:
            res.fail(f"split({A}) halves overlap")
        if om.union(C, D) != A or any(((k in C) or (k in D)) != (k in A) for k in range(stop)):
            res.fail(f"split({A}) halves do not cover")
        if om.compatible(C, D):
            res.fail(f"split({A}) halves are compatible")
    return res


def suite_finiteness_collapse(seed: int, samples: int = 500) -> SuiteResult:
    res = SuiteResult("finiteness-collapse", "a finite structure's only copy is itself")
    rng = SplitMix64(seed)
    for _ in range(samples):
        res.cases += 1
        X = random_structure(rng.below(7), rng.next(), ("any", "irreflexive", "graph", "digraph")[rng.below(4)])
        if emb.copies(X, X) != {frozenset(range(X.size))}:
            res.fail(f"copies({X!r}) is not the full set")
    return res


SUITES: dict[str, Callable[[int], SuiteResult]] = {
    "component-criterion": suite_component_criterion,
    "orientation-duality": suite_orientation_duality,
    "decomposition-roundtrip": suite_decomposition_roundtrip,
    "transform-invariance": suite_transform_invariance,
    "component-images": suite_component_images,
    "componentwise-copies": suite_componentwise_copies,
    "separative-products": suite_separative_products,
    "separative-quotient": suite_separative_quotient,
    "fragment-soundness": suite_fragment_soundness,
    "almost-inclusion": suite_almost_inclusion,
    "split-witness": suite_split_witness,
    "finiteness-collapse": suite_finiteness_collapse,
}


def run_suite(name: str, seed: int | None = None) -> SuiteResult:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; known: {', '.join(SUITES)}") from None
    start = time.perf_counter()
    result = fn(default_seed() if seed is None else seed)
    result.seconds = time.perf_counter() - start
    return result
