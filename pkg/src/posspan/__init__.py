"""Exact certificates for positive spanning sets, positive bases and digraphs."""

from .exact import EquivWitness, Mat, apply_equiv, parse_matrix, verify_equiv
from .pss import (
    decompose_in_ina,
    find_circuit,
    gordan_alternative,
    is_acyclic,
    is_pss,
    stiemke_alternative,
)
from .posbasis import is_positive_basis, reduce_to_near_extreme_form
from .digraph import Digraph, SpanningTree, is_strongly_connected, network_matrix

__all__ = [
    "Digraph",
    "EquivWitness",
    "Mat",
    "SpanningTree",
    "apply_equiv",
    "decompose_in_ina",
    "find_circuit",
    "gordan_alternative",
    "is_acyclic",
    "is_positive_basis",
    "is_pss",
    "is_strongly_connected",
    "network_matrix",
    "parse_matrix",
    "reduce_to_near_extreme_form",
    "stiemke_alternative",
    "verify_equiv",
]
