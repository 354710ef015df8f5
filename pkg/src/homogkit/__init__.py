"""Finite binary structures, their embeddings and ultrahomogeneity, with
order-theoretic tools for separative quotients and a computable model of
infinite subsets of the naturals modulo finite sets."""
from .structure import (
    BinaryStructure,
    StructureParseError,
    complement,
    components,
    disjoint_union,
    enlarge,
    inverse,
    irreflexify,
    is_connected,
    isomorphism,
    predicates,
    reflexify,
)
from .embeddings import (
    PartialMap,
    automorphisms,
    copies,
    copies_via_components,
    is_ultrahomogeneous,
    partial_isomorphisms,
)
from .homogeneity import (
    DecompositionReport,
    NotUltrahomogeneous,
    component_criterion,
    decompose,
    orientation,
    reconstruct,
)
from .poset import FinitePoset, FinitePreorder, separative_modification, separative_quotient
from .omega import UPSet, parse as parse_upset, render as render_upset
from .catalog import fixture, random_structure

__version__ = "0.1.0"
