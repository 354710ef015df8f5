"""Classification of ultrahomogeneous structures that are not biconnected.

A reflexive or irreflexive ultrahomogeneous structure is either biconnected
or is built from ``kappa >= 2`` disjoint copies of the enlargement of an
ultrahomogeneous digraph ``Y``, followed by one of four transform chains:

===========  =============================================
variant      reconstruction
===========  =============================================
``plain``    ``U = disjoint_union([enlarge(Y)] * kappa)``
``re``       ``reflexify(U)``
``c``        ``complement(U)``
``re_c``     ``complement(reflexify(U))``
===========  =============================================

:func:`decompose` recovers ``(variant, Y, kappa)`` and checks the answer by
rebuilding the structure and finding an explicit isomorphism.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .embeddings import PartialMap, is_ultrahomogeneous
from .structure import (
    BinaryStructure,
    complement,
    components,
    disjoint_union,
    enlarge,
    irreflexify,
    is_complete,
    is_connected,
    is_digraph,
    is_irreflexive,
    is_isomorphism,
    is_reflexive,
    isomorphism,
    reflexify,
)

VARIANTS = ("biconnected", "plain", "re", "c", "re_c")


class NotUltrahomogeneous(ValueError):
    def __init__(self, witness: PartialMap):
        super().__init__(f"structure is not ultrahomogeneous; {witness.as_dict()} does not extend")
        self.witness = witness


class PreconditionError(ValueError):
    pass


def orientation(X: BinaryStructure) -> BinaryStructure:
    """Keep the asymmetric pairs of an irreflexive complete structure.

    ``x -> y`` iff ``(x, y)`` is a pair and ``(y, x)`` is not.  The result is a
    digraph whose enlargement is ``X`` again.
    """
    for v in range(X.size):
        if X.loop(v):
            raise PreconditionError(f"orientation needs an irreflexive structure; loop at ({v}, {v})")
    for x in range(X.size):
        for y in range(x + 1, X.size):
            if not X.has(x, y) and not X.has(y, x):
                raise PreconditionError(
                    f"orientation needs a complete structure; ({x}, {y}) unrelated both ways"
                )
    return BinaryStructure.from_rows([X.out_rows[v] & ~X.in_rows[v] for v in range(X.size)])


@dataclass(frozen=True)
class ComponentReport:
    block: tuple[int, ...]
    isomorphic_to_first: bool
    ultrahomogeneous: bool
    complete: bool


@dataclass(frozen=True)
class CriterionVerdict:
    uh: bool
    details: tuple[ComponentReport, ...]

    def __bool__(self) -> bool:
        return self.uh

    def to_json(self) -> dict:
        return {
            "ultrahomogeneous": self.uh,
            "components": [
                {
                    "block": list(d.block),
                    "isomorphic_to_first": d.isomorphic_to_first,
                    "ultrahomogeneous": d.ultrahomogeneous,
                    "complete": d.complete,
                }
                for d in self.details
            ],
        }


def component_criterion(X: BinaryStructure) -> CriterionVerdict:
    """Decide ultrahomogeneity of an irreflexive disconnected structure componentwise.

    The structure is ultrahomogeneous exactly when its components are
    pairwise isomorphic, each ultrahomogeneous and each complete.
    """
    if not is_irreflexive(X):
        raise PreconditionError("component criterion needs an irreflexive structure")
    parts = components(X)
    if len(parts) < 2:
        raise PreconditionError("component criterion needs a disconnected structure")
    subs = [X.induced(b) for b in parts.blocks]
    details = []
    for block, sub in zip(parts.blocks, subs):
        details.append(
            ComponentReport(
                block=tuple(sorted(block)),
                isomorphic_to_first=isomorphism(subs[0], sub) is not None,
                ultrahomogeneous=is_ultrahomogeneous(sub).holds,
                complete=is_complete(sub),
            )
        )
    uh = all(d.isomorphic_to_first and d.ultrahomogeneous and d.complete for d in details)
    return CriterionVerdict(uh, tuple(details))


def reconstruct(variant: str, Y: BinaryStructure, kappa: int) -> BinaryStructure:
    if not is_digraph(Y):
        raise PreconditionError("reconstruct needs a digraph")
    if kappa < 1:
        raise PreconditionError(f"multiplicity must be positive, got {kappa}")
    union = disjoint_union([enlarge(Y)] * kappa)
    if variant == "plain":
        return union
    if variant == "re":
        return reflexify(union)
    if variant == "c":
        return complement(union)
    if variant == "re_c":
        return complement(reflexify(union))
    raise ValueError(f"unknown variant {variant!r}")


@dataclass(frozen=True)
class DecompositionReport:
    variant: str
    digraph: BinaryStructure | None = None
    multiplicity: int | None = None
    witness: tuple[int, ...] | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        doc = {"variant": self.variant}
        if self.variant != "biconnected":
            doc["digraph"] = self.digraph.to_json()
            doc["kappa"] = self.multiplicity
            doc["witness"] = list(self.witness)
        if self.notes:
            doc["notes"] = list(self.notes)
        return doc


def decompose(X: BinaryStructure) -> DecompositionReport:
    """Split a reflexive or irreflexive ultrahomogeneous structure into ``(variant, Y, kappa)``.

    Cases are tried in a fixed order: X disconnected and irreflexive, X
    disconnected and reflexive, complement disconnected and irreflexive,
    complement disconnected and reflexive.  Otherwise X is biconnected.
    The ``witness`` maps vertices of ``reconstruct(variant, Y, kappa)`` onto X.
    """
    if X.size == 0:
        raise PreconditionError("the empty structure is outside the classification")
    reflexive, irreflexive = is_reflexive(X), is_irreflexive(X)
    if not (reflexive or irreflexive):
        raise PreconditionError("structure has a mixed diagonal (some loops, not all)")
    verdict = is_ultrahomogeneous(X)
    if not verdict.holds:
        raise NotUltrahomogeneous(verdict.witness)

    if not is_connected(X):
        variant, base = ("plain", X) if irreflexive else ("re", irreflexify(X))
    else:
        comp = complement(X)
        if is_connected(comp):
            return DecompositionReport("biconnected")
        # X has loops iff its complement has none.
        variant, base = ("c", comp) if reflexive else ("re_c", irreflexify(comp))

    parts = components(base)
    kappa = len(parts)
    assert kappa >= 2, "a disconnected branch must have at least two components"
    Y = orientation(base.induced(parts.blocks[parts.block_of[0]]))
    rebuilt = reconstruct(variant, Y, kappa)
    witness = isomorphism(rebuilt, X)
    if witness is None or not is_isomorphism(rebuilt, X, witness):
        raise AssertionError(f"round trip failed for variant {variant}")
    return DecompositionReport(variant, Y, kappa, witness)
