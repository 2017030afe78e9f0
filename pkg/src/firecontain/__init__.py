"""Firefighter-process toolkit for embedded planar graphs."""

from .embedding import EmbeddedGraph, Face, build, density_report
from .families import FamilySpec, generate

__all__ = [
    "EmbeddedGraph",
    "Face",
    "build",
    "density_report",
    "FamilySpec",
    "generate",
]
