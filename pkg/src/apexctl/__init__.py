"""Obstruction-theory toolkit: planarity, apex numbers, graph minors,
triangle/star family closures, and isomorph-free enumeration searches."""

__version__ = "0.1.0"

from .apex import ApexVerdict, apex_number, is_n_apex
from .canon import CanonicalCertificate, are_isomorphic, canonical_form, dedup
from .enumeration import Constraints, ObstructionReport, compose_unions, generate, search_obstructions
from .families import FamilyEntry, heawood_family, identify, ks_graphs, move_closure, petersen_family
from .graphs import (
    Graph,
    SimplificationResult,
    contract_edge,
    degree_sequence,
    delete_edge,
    delete_vertices,
    from_graph6,
    nabla_y,
    simplify,
    to_graph6,
    y_nabla,
)
from .minors import (
    MinorModel,
    MinorProperty,
    NearnessReport,
    branch_vertices,
    has_minor,
    is_minor_minimal,
    is_split_of,
    minor_model,
    na_by_nearness,
    nearness,
)
from .planarity import KuratowskiWitness, PlanarityResult, is_planar

__all__ = [
    "ApexVerdict",
    "CanonicalCertificate",
    "Constraints",
    "FamilyEntry",
    "Graph",
    "KuratowskiWitness",
    "MinorModel",
    "MinorProperty",
    "NearnessReport",
    "ObstructionReport",
    "PlanarityResult",
    "SimplificationResult",
    "apex_number",
    "are_isomorphic",
    "branch_vertices",
    "canonical_form",
    "compose_unions",
    "contract_edge",
    "dedup",
    "degree_sequence",
    "delete_edge",
    "delete_vertices",
    "from_graph6",
    "generate",
    "has_minor",
    "heawood_family",
    "identify",
    "is_minor_minimal",
    "is_n_apex",
    "is_planar",
    "is_split_of",
    "ks_graphs",
    "minor_model",
    "move_closure",
    "na_by_nearness",
    "nabla_y",
    "nearness",
    "petersen_family",
    "search_obstructions",
    "simplify",
    "to_graph6",
    "y_nabla",
]
