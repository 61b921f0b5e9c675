"""rackforge - finite racks, quandles, rack modules and central extensions.

Build, check and compare finite racks, compute their inner and automorphism
groups, ideals and kernels, work with rack modules and their extensions, and
count quandle colorings of knot diagrams.

Usage:
    from rackforge import takasaki_quandle, parse_pd, coloring_count
    r3 = takasaki_quandle(3)
    coloring_count(parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"), r3)   # 9

    # Command line
    rackforge invariants R3.rack --json
"""

__version__ = "0.1.0"
__author__ = "rackforge contributors"

from .coloring import KnotDiagram, coloring_count, enumerate_colorings, parse_pd
from .constructors import (
    affine_quandle, conjugation_quandle, core_quandle, coset_quandle, linear_rack,
    takasaki_quandle, trivial_quandle,
)
from .errors import BudgetExceededError, ParseError, RackforgeError, ValidationError
from .extensions import (
    CentralExtension, baer_sum, find_equivalence, is_trivial, opposite, trivial_extension,
    validate_extension,
)
from .morphisms import RackMorphism, enumerate_automorphisms, enumerate_morphisms, inner_group
from .racks import FiniteRack, unitarize, units, validate_rack

__all__ = [
    "BudgetExceededError",
    "CentralExtension",
    "FiniteRack",
    "KnotDiagram",
    "ParseError",
    "RackMorphism",
    "RackforgeError",
    "ValidationError",
    "affine_quandle",
    "baer_sum",
    "coloring_count",
    "conjugation_quandle",
    "core_quandle",
    "coset_quandle",
    "enumerate_automorphisms",
    "enumerate_colorings",
    "enumerate_morphisms",
    "find_equivalence",
    "inner_group",
    "is_trivial",
    "linear_rack",
    "opposite",
    "parse_pd",
    "takasaki_quandle",
    "trivial_extension",
    "trivial_quandle",
    "unitarize",
    "units",
    "validate_extension",
    "validate_rack",
    "__version__",
]
