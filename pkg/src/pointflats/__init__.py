"""Exact point-flat incidence toolkit."""

from .projective import (
    Flat,
    MultiPointSet,
    Point,
    PointSet,
    canonicalize_point,
    contains,
    embed_affine,
    join,
    meet,
    project_from,
    span_of_points,
)

__all__ = [
    "Flat",
    "MultiPointSet",
    "Point",
    "PointSet",
    "canonicalize_point",
    "contains",
    "embed_affine",
    "join",
    "meet",
    "project_from",
    "span_of_points",
]
