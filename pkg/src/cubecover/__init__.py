"""Exact-arithmetic toolkit for almost k-covers of the hypercube by hyperplanes."""

from cubecover.core import (
    CubePoint,
    Hyperplane,
    InvalidInput,
    InvalidPoint,
    Weight1Verdict,
    classify_weight1,
    covered_points,
    parse_rational,
    plane_weight,
    point_weight,
    stability_gap,
)

__all__ = [
    "CubePoint",
    "Hyperplane",
    "InvalidInput",
    "InvalidPoint",
    "Weight1Verdict",
    "classify_weight1",
    "covered_points",
    "parse_rational",
    "plane_weight",
    "point_weight",
    "stability_gap",
]
