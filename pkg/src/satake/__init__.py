"""Exact spherical Hecke algebra, Whittaker module, and orbit combinatorics.

The package computes, over a chosen root datum and entirely in exact
arithmetic: tensor decompositions and characters of the dual group, the
Satake base change between the two natural Hecke bases, Casselman–Shalika
values of the unramified Whittaker function, the cohomology bookkeeping of
affine Grassmannian orbit intersections, and a rank-1 finite-field oracle
that verifies the defining character-sum identity by direct enumeration.
"""

from .grassmannian import CohomologyPrediction, Grassmannian, MVBound
from .hecke import A_BASIS, C_BASIS, PHI_BASIS, BasisElement, HeckeAlgebra
from .laurent import LaurentPoly, ONE, Q, V, ZERO, poly_arith
from .rank1_oracle import (
    Cyclotomic,
    Eq2Record,
    Eq2Report,
    HalfPower,
    Rank1Cell,
    Rank1Oracle,
    cell,
)
from .rep_ring import RepRing, gamma_power, torus_point
from .root_datum import (
    DomRep,
    HalfWeight,
    PRESETS,
    RootDatum,
    build_root_datum,
)
from .whittaker import WhitValue, WhittakerModule

__all__ = [
    "A_BASIS",
    "BasisElement",
    "C_BASIS",
    "CohomologyPrediction",
    "Cyclotomic",
    "DomRep",
    "Eq2Record",
    "Eq2Report",
    "Grassmannian",
    "HalfPower",
    "HalfWeight",
    "HeckeAlgebra",
    "LaurentPoly",
    "MVBound",
    "ONE",
    "PHI_BASIS",
    "PRESETS",
    "Q",
    "Rank1Cell",
    "Rank1Oracle",
    "RepRing",
    "RootDatum",
    "V",
    "WhitValue",
    "WhittakerModule",
    "ZERO",
    "build_root_datum",
    "cell",
    "gamma_power",
    "poly_arith",
    "torus_point",
]

__version__ = "0.1.0"
