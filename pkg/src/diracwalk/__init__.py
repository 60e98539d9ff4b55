"""Discrete-time quantum walks whose continuum limit is the (2+1)-D Dirac equation.

Three walks are provided: the split-step walk on the square lattice, a
constant-coin walk on the honeycomb lattice, and a rotate-then-coin walk on
the edges of a triangle tiling that runs the honeycomb walk in disguise.
"""
from .analysis import (
    ConvergenceReport,
    DispersionTable,
    PacketSpec,
    convergence_sweep,
    l2_error,
    make_packet,
    walk_dispersion,
)
from .lattice import BravaisField, TriangularField
from .reference import DiracParams, dirac_evolve, dirac_propagator, dispersion
from .spin import WalkParams
from .walks import StepOperator, decode, encode, evolve, step

__version__ = "0.1.0"

__all__ = [
    "BravaisField", "TriangularField", "WalkParams", "DiracParams", "StepOperator",
    "PacketSpec", "ConvergenceReport", "DispersionTable",
    "step", "evolve", "encode", "decode", "dirac_evolve", "dirac_propagator", "dispersion",
    "make_packet", "l2_error", "convergence_sweep", "walk_dispersion",
]
