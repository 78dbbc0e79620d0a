"""Strong shellability toolkit for complexes, clutters and graphs."""

from .core import (
    Clutter,
    Graph,
    Labeling,
    SimplicialComplex,
    Tree,
    ValidationError,
    build_clutter,
    build_complex,
    build_graph,
    build_tree,
)

__all__ = [
    "Clutter",
    "Graph",
    "Labeling",
    "SimplicialComplex",
    "Tree",
    "ValidationError",
    "build_clutter",
    "build_complex",
    "build_graph",
    "build_tree",
]
