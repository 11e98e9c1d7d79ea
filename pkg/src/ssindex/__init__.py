"""Schreier families, ordinal indices of trees, and S_xi-strict singularity
of operators between sequence spaces, computed exactly over the rationals."""

from .ordinal import Ordinal, parse_ordinal, fundamental_sequence
from .schreier import member, min_blocks, is_maximal, enumerate_family
from .trees import FiniteTree, derivative, rank, restricted_schreier_tree
from .spaces import NormDescriptor, RationalVector, norm, parse_norm, parse_vector
from .operators import BasicSequence, Operator, apply
from .witness import build_witness_tree, index_estimate, node_admitted, witness_search

__version__ = "0.1.0"

__all__ = [
    "Ordinal", "parse_ordinal", "fundamental_sequence",
    "member", "min_blocks", "is_maximal", "enumerate_family",
    "FiniteTree", "derivative", "rank", "restricted_schreier_tree",
    "NormDescriptor", "RationalVector", "norm", "parse_norm", "parse_vector",
    "BasicSequence", "Operator", "apply",
    "build_witness_tree", "index_estimate", "node_admitted", "witness_search",
]
