"""Exact operator-valued free probability on graph operator algebras."""

from .algebra import (
    DiagonalElement,
    Element,
    Exp,
    Term,
    adjoint,
    expectation,
    letter_element,
    multiply,
    support_decompose,
)
from .cumulants import (
    LetterWord,
    cumulant_general,
    cumulant_letters,
    e_hat,
    generating_operator,
    moment_general,
    moments_from_cumulants,
    mu_coefficient,
)
from .fock import TruncationError, build_space, oracle_expectation, oracle_survey
from .freeness import generators_free, mixed_cumulant_report, supports_free_sufficient
from .gaussq import GaussQ
from .graph import DirectedGraph, GraphError, Word, classify_loop, concat, diagram_distinct, enumerate_paths, load_graph
from .lattice import LatticePath, build_lattice_path, has_star_axis_property
from .noncrossing import NoncrossingPartition, ResourceGuardError, catalan, enumerate_nc, leq, mobius

__all__ = [
    "DiagonalElement",
    "DirectedGraph",
    "Element",
    "Exp",
    "GaussQ",
    "GraphError",
    "LatticePath",
    "LetterWord",
    "NoncrossingPartition",
    "ResourceGuardError",
    "Term",
    "TruncationError",
    "Word",
    "adjoint",
    "build_lattice_path",
    "build_space",
    "catalan",
    "classify_loop",
    "concat",
    "cumulant_general",
    "cumulant_letters",
    "diagram_distinct",
    "e_hat",
    "enumerate_nc",
    "enumerate_paths",
    "expectation",
    "generating_operator",
    "generators_free",
    "has_star_axis_property",
    "leq",
    "letter_element",
    "load_graph",
    "mixed_cumulant_report",
    "mobius",
    "moment_general",
    "moments_from_cumulants",
    "mu_coefficient",
    "multiply",
    "oracle_expectation",
    "oracle_survey",
    "support_decompose",
    "supports_free_sufficient",
]
