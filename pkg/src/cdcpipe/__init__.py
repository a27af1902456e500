"""Constructive cycle double covers with an independent verifier.

Graphs are :class:`MultiGraph` values with integer vertex and edge ids. The
pipeline either returns a cover that has passed verification or a
:class:`FailureCertificate` saying which claimed property failed where.
"""

from .cover import Cover, CoverElement, VerificationReport, verify_cdc, verify_ncdc
from .decompose import bridges, bridgeless_decomposition, is_surrounding
from .errors import BridgeError, CDCError, GraphError, PreconditionError, SpliceError
from .graph import FreeEdge, FreeEdgeSet, MultiGraph, Walk, from_pairs
from .kuratowski import especial_constants, ncdc_kuratowski_major
from .pipeline import (
    FailureCertificate,
    PipelineTrace,
    cdc,
    cdc_with_trace,
    goddyn_cover,
    ncdc_general,
    recheck_certificate,
)
from .planarity import KuratowskiWitness, PlanarEmbedding, planar_cdc, test_planarity

__all__ = [
    "BridgeError",
    "CDCError",
    "Cover",
    "CoverElement",
    "FailureCertificate",
    "FreeEdge",
    "FreeEdgeSet",
    "GraphError",
    "KuratowskiWitness",
    "MultiGraph",
    "PipelineTrace",
    "PlanarEmbedding",
    "PreconditionError",
    "SpliceError",
    "VerificationReport",
    "Walk",
    "bridgeless_decomposition",
    "bridges",
    "cdc",
    "cdc_with_trace",
    "especial_constants",
    "from_pairs",
    "goddyn_cover",
    "is_surrounding",
    "ncdc_general",
    "ncdc_kuratowski_major",
    "planar_cdc",
    "recheck_certificate",
    "test_planarity",
    "verify_cdc",
    "verify_ncdc",
]
