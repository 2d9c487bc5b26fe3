"""Exact SU(2) TQFT spaces of punctured spheres, their operators, and irreducibility tests."""

from .cyclo import CycloNum, cyclo_context
from .repalg import AlgebraReport, analyze, commutant_dim, contains, saturate
from .spine import SurfaceSpec, build_spine, dim, enumerate_colorings
from .tqft_ops import CurveDesc, Operator, basis_norms, curve_operator, dehn_twist, point_push

__all__ = [
    "AlgebraReport",
    "CurveDesc",
    "CycloNum",
    "Operator",
    "SurfaceSpec",
    "analyze",
    "basis_norms",
    "build_spine",
    "commutant_dim",
    "contains",
    "curve_operator",
    "cyclo_context",
    "dehn_twist",
    "dim",
    "enumerate_colorings",
    "point_push",
    "saturate",
]
