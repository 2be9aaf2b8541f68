"""Brauer graph algebras from ribbon graphs, and their derived invariants."""

from brauergraph.fields import GF2, Q, FieldSpec, parse_field
from brauergraph.ribbon import BGError, RibbonGraph, euler_genus, faces, is_bipartite, parse_bg

__version__ = "0.1.0"

__all__ = [
    "BGError",
    "FieldSpec",
    "GF2",
    "Q",
    "RibbonGraph",
    "euler_genus",
    "faces",
    "is_bipartite",
    "parse_bg",
    "parse_field",
]
