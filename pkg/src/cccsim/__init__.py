"""Simulator and analysis toolkit for topological MBQC on color-code-based
cluster states (CCCS) and Raussendorf 3D cluster states (RTCS)."""

from .lattice2d import build_color_code_lattice, Lattice2D
from .cluster import build_cccs, build_rtcs, ClusterGraph
from .pauli import PauliOperator

__all__ = [
    "build_color_code_lattice", "Lattice2D",
    "build_cccs", "build_rtcs", "ClusterGraph",
    "PauliOperator",
]

__version__ = "0.1.0"
