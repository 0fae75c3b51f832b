"""Certified interval bounds for the period Gram matrix of a hyperbolic surface
described by Q-pieces in Fenchel-Nielsen coordinates."""

from .annulus import Annulus, BoundInterval, capacity_bounds, collar_capacity
from .errors import (
    ConvergenceError,
    DomainError,
    GeometryError,
    PeriodGramError,
    ValidationError,
)
from .gram import GramIntervalMatrix, SurfaceSpec, assemble
from .qpiece import FenchelNielsenTriple, complete_from_triple

__all__ = [
    "Annulus",
    "BoundInterval",
    "ConvergenceError",
    "DomainError",
    "FenchelNielsenTriple",
    "GeometryError",
    "GramIntervalMatrix",
    "PeriodGramError",
    "SurfaceSpec",
    "ValidationError",
    "assemble",
    "capacity_bounds",
    "collar_capacity",
    "complete_from_triple",
]

__version__ = "0.1.0"
