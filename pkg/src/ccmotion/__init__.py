"""Coherent configurations, distinguishing numbers, spectra and motion
certificates."""

from .core import (
    Configuration,
    IntersectionTensor,
    check_coherence,
    from_adjacency,
    intersection_tensor,
    is_coherent,
    order_by_degree,
    permute_vertices,
    structural_flags,
    validate_configuration,
)
from .distinguish import distinguishing_report
from .errors import CapExceeded, CCMotionError, SoundnessError, ValidationError
from .wl import refine, wl_stabilize

__version__ = "0.1.0"

__all__ = [
    "Configuration",
    "IntersectionTensor",
    "check_coherence",
    "from_adjacency",
    "intersection_tensor",
    "is_coherent",
    "order_by_degree",
    "permute_vertices",
    "structural_flags",
    "validate_configuration",
    "distinguishing_report",
    "refine",
    "wl_stabilize",
    "CCMotionError",
    "CapExceeded",
    "SoundnessError",
    "ValidationError",
]
