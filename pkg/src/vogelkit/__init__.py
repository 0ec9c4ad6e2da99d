"""vogelkit: exact diagrammatic computations for Vogel universality."""

from .diagram import (
    JacobiDiagram,
    CanonicalForm,
    SELF_ZERO,
    StructuralError,
    canonicalize,
    disjoint_union,
    glue,
    vertex_insert,
)
from .combo import DiagramCombo

__all__ = [
    "JacobiDiagram",
    "CanonicalForm",
    "SELF_ZERO",
    "StructuralError",
    "canonicalize",
    "disjoint_union",
    "glue",
    "vertex_insert",
    "DiagramCombo",
]

__version__ = "0.1.0"
