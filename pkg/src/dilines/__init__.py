"""Lines in the quasi-metric spaces of strongly connected digraphs.

The top-level namespace re-exports the everyday entry points; the
submodules hold the rest.
"""

from .canonical import canonical_form, canonical_key
from .core import Digraph, parse_digraph, serialize_digraph
from .quasimetric import distance_matrix, is_thin, line, line_set, segment, structural_profile
from .search import enumerate_digraphs, hunt, verify_claim

__version__ = "0.1.0"

__all__ = [
    "Digraph",
    "canonical_form",
    "canonical_key",
    "distance_matrix",
    "enumerate_digraphs",
    "hunt",
    "is_thin",
    "line",
    "line_set",
    "parse_digraph",
    "segment",
    "serialize_digraph",
    "structural_profile",
    "verify_claim",
]
