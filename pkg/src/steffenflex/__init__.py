"""Exact embeddedness verification for triangulated surfaces.

Builds on exact arithmetic in quadratic extension towers to decide, without
tolerances, whether a realized simplicial surface is free of
self-intersections; constructs the Steffen flexible polyhedron in radicals,
certifies its embeddedness and volume, and explores its flex numerically.
"""

from .numfield import (
    QQ,
    AlreadySquare,
    FieldElem,
    FieldTower,
    IncompatibleTowers,
    Rational,
)
from .geom import Point3, PairVerdict, PairTag, orient6, mixed_product, dist2
from .mesh import Realization, SurfaceComplex, realize, validate_complex
from .checker import CheckReport, check_embedded
from .steffen import SteffenModel, build_steffen, volume
from .flex import FlexFrame, max_embedded_t, realize_flex, scan_embeddedness, v9_of_t

__version__ = "0.1.0"

__all__ = [
    "QQ",
    "AlreadySquare",
    "CheckReport",
    "FieldElem",
    "FieldTower",
    "FlexFrame",
    "IncompatibleTowers",
    "PairTag",
    "PairVerdict",
    "Point3",
    "Rational",
    "Realization",
    "SteffenModel",
    "SurfaceComplex",
    "build_steffen",
    "check_embedded",
    "dist2",
    "max_embedded_t",
    "mixed_product",
    "orient6",
    "realize",
    "realize_flex",
    "scan_embeddedness",
    "v9_of_t",
    "validate_complex",
    "volume",
]
