"""Exact topology of images of curve branches under finite morphisms.

The library computes, in exact arithmetic over towers of algebraic
extensions of the rationals, the semigroup of values and characteristic
exponents of the image branch of a parametrised curve under a finite
morphism to the plane, the pairwise intersection multiplicities of such
images, and the full topology of the discriminant curve of a plane
morphism — all driven by iterated pencils of the morphism components.
"""

from .config import Config, DEFAULT
from .curves import (BranchParam, Morphism, PlaneParam, direct_image,
                     ord_along, plane_intersection, plane_params_equal)
from .discriminant import (CriticalSet, critical_branches,
                           discriminant_topology)
from .errors import (CurvePencilError, DegenerateMorphism, EqualBranches,
                     FibreBranchesRequired, ImagesEqual, InconsistentDegree,
                     InputError, MaxIterationsExceeded, NonFiniteAlongBranch,
                     PrecisionExhausted, ZeroDivisor)
from .fields import Scalar, Tower
from .invariants import (SemigroupData, semigroup_from_pencil,
                         semigroup_from_quotients)
from .multibranch import (SeparationWitness, TopologyReport, pair_intersection,
                          separation_level, topology_report)
from .multipoly import MultiPoly
from .oracle import OracleResult, intersection_brute, semigroup_from_param
from .parsing import (InputDocument, load_document, parse_expression,
                      parse_parametrization)
from .pencil import PencilSequence, PencilStep
from .puiseux import PlaneBranch, puiseux_branches
from .series import INFINITY, PowerSeries

__all__ = [
    "BranchParam", "Config", "CriticalSet", "CurvePencilError", "DEFAULT",
    "DegenerateMorphism", "EqualBranches", "FibreBranchesRequired",
    "INFINITY", "ImagesEqual", "InconsistentDegree", "InputDocument",
    "InputError", "MaxIterationsExceeded", "Morphism", "MultiPoly",
    "NonFiniteAlongBranch", "OracleResult", "PencilSequence", "PencilStep",
    "PlaneBranch", "PlaneParam", "PowerSeries", "PrecisionExhausted",
    "Scalar", "SemigroupData", "SeparationWitness", "TopologyReport",
    "Tower", "ZeroDivisor", "critical_branches", "direct_image",
    "discriminant_topology", "intersection_brute", "load_document",
    "ord_along", "pair_intersection", "parse_expression",
    "parse_parametrization", "plane_intersection", "plane_params_equal",
    "puiseux_branches", "semigroup_from_param", "semigroup_from_pencil",
    "semigroup_from_quotients", "separation_level", "topology_report",
]
