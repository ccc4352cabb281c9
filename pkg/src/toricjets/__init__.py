"""Exact computations on smooth lattice polytopes: jet-spannedness orders,
Cayley decompositions, lattice width and Seshadri constants.
"""

from __future__ import annotations

from .cayley import (
    CayleyDecomposition,
    construct_cayley,
    detect_cayley,
    detect_cayley_general,
    find_strict_decomposition,
    is_strict,
    min_edge_length,
)
from .corpus import CorpusSpec, builtin_corpus, generate
from .errors import (
    DegenerateInput,
    EmptyChop,
    InvalidParams,
    NonLatticeChop,
    NotDivisible,
    NotSmooth,
    NotSmoothAtVertex,
    ParseError,
    SliceDimensionMismatch,
    ToricJetsError,
    ValidationError,
)
from .jets import JetReport, generic_jet_order, jet_matrix, jet_report
from .polyfile import emit, parse
from .polytope import LatticePolytope, chop, hexagon, is_smooth, shrink, standard_simplex
from .seshadri import (
    EquivalenceVerdict,
    epsilon_fixpoint,
    epsilon_generic,
    lattice_width,
    s1,
    seshadri_report,
    verify_corollary,
)

__version__ = "0.1.0"

__all__ = [
    "CayleyDecomposition",
    "DegenerateInput",
    "EmptyChop",
    "EquivalenceVerdict",
    "InvalidParams",
    "NonLatticeChop",
    "NotDivisible",
    "NotSmooth",
    "NotSmoothAtVertex",
    "ParseError",
    "SliceDimensionMismatch",
    "ToricJetsError",
    "ValidationError",
    "construct_cayley",
    "detect_cayley",
    "detect_cayley_general",
    "epsilon_fixpoint",
    "epsilon_generic",
    "find_strict_decomposition",
    "is_strict",
    "lattice_width",
    "min_edge_length",
    "s1",
    "seshadri_report",
    "verify_corollary",
]
