"""Rack group bundles and rack modules, with axiom checking.

A bundle over X assigns an abelian group ``A_x`` to each x and isomorphisms
``eta[x][y]: A_x -> A_(x◁y)``. A module adds ``tau[x][y]: A_y -> A_(x◁y)``.
Axioms are labelled ``"coherence"``, ``"2"``, ``"3"`` and ``"4"``.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional, Tuple

from ..racks import FiniteRack
from .abelian import AbHom, FinAbGroup, hom_add, hom_compose, identity_hom, is_isomorphism

logger = logging.getLogger(__name__)

HomTable = Tuple[Tuple[AbHom, ...], ...]


class CheckMode(Enum):
    """Compare homomorphisms on every element or only on generators."""
    ELEMENTS = "elements"
    GENERATORS = "generators"


@dataclass(frozen=True)
class RackBundle:
    base: FiniteRack = field(repr=False)
    fibers: Tuple[FinAbGroup, ...]
    eta: HomTable = field(repr=False)


@dataclass(frozen=True)
class RackModule:
    bundle: RackBundle
    tau: HomTable = field(repr=False)

    @property
    def base(self) -> FiniteRack:
        return self.bundle.base

    @property
    def fibers(self) -> Tuple[FinAbGroup, ...]:
        return self.bundle.fibers

    @property
    def eta(self) -> HomTable:
        return self.bundle.eta

    def fiber(self, x: int) -> FinAbGroup:
        return self.bundle.fibers[x]


@dataclass(frozen=True)
class AxiomReport:
    """First failed axiom, if any; truthy when every axiom holds.

    The witness is ``(x, y, z, a)`` for three-variable axioms and ``(x, a)``
    for axiom 4, where ``a`` is an element index (or generator index in
    generator mode).
    """

    ok: bool
    axiom: Optional[str] = None
    witness: Optional[Tuple[Any, ...]] = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _difference(f: AbHom, g: AbHom, mode: CheckMode) -> Optional[int]:
    """First element (or generator) index where f and g disagree."""
    if mode is CheckMode.GENERATORS:
        pairs = zip(f.gen_images, g.gen_images)
    else:
        pairs = zip(f.table, g.table)
    return next((i for i, (a, b) in enumerate(pairs) if a != b), None)


def _shape_problem(base: FiniteRack, fibers: Tuple[FinAbGroup, ...], table: HomTable,
                   source_of: str, name: str) -> Optional[AxiomReport]:
    n = base.size
    if len(table) != n or any(len(row) != n for row in table):
        return AxiomReport(False, "shape", None, f"{name} must be an {n} x {n} table")
    for x in range(n):
        for y in range(n):
            hom = table[x][y]
            source = fibers[x] if source_of == "x" else fibers[y]
            if hom.source != source or hom.target != fibers[base.table[x][y]]:
                return AxiomReport(False, "shape", (x, y), f"{name}[{x}][{y}] has the wrong fibers")
    return None


def validate_bundle(bundle: RackBundle, mode: CheckMode = CheckMode.ELEMENTS) -> AxiomReport:
    """Check shapes, that each eta is an isomorphism, and coherence
    ``eta(x◁y, z) eta(x, y) == eta(x◁z, y◁z) eta(x, z)``."""
    base, eta = bundle.base, bundle.eta
    n = base.size
    if len(bundle.fibers) != n:
        return AxiomReport(False, "shape", None, f"need {n} fibers, got {len(bundle.fibers)}")
    problem = _shape_problem(base, bundle.fibers, eta, "x", "eta")
    if problem:
        return problem
    for x in range(n):
        for y in range(n):
            if not is_isomorphism(eta[x][y]):
                return AxiomReport(False, "isomorphism", (x, y), f"eta[{x}][{y}] is not an isomorphism")
    t = base.table
    for x in range(n):
        for y in range(n):
            for z in range(n):
                lhs = hom_compose(eta[t[x][y]][z], eta[x][y])
                rhs = hom_compose(eta[t[x][z]][t[y][z]], eta[x][z])
                a = _difference(lhs, rhs, mode)
                if a is not None:
                    return AxiomReport(False, "coherence", (x, y, z, a),
                                       f"bundle coherence fails at ({x}, {y}, {z})")
    return AxiomReport(True)


def validate_module(module: RackModule, mode: CheckMode = CheckMode.ELEMENTS) -> AxiomReport:
    """Check the bundle and axioms 2, 3 and (on quandles) 4."""
    report = validate_bundle(module.bundle, mode)
    if not report:
        return report
    base, eta, tau = module.base, module.eta, module.tau
    problem = _shape_problem(base, module.fibers, tau, "y", "tau")
    if problem:
        return problem
    n, t = base.size, base.table
    for x in range(n):
        for y in range(n):
            for z in range(n):
                xz, yz = t[x][z], t[y][z]
                lhs = hom_compose(eta[t[x][y]][z], tau[x][y])
                rhs = hom_compose(tau[xz][yz], eta[y][z])
                a = _difference(lhs, rhs, mode)
                if a is not None:
                    return AxiomReport(False, "2", (x, y, z, a), f"axiom 2 fails at ({x}, {y}, {z})")
                lhs = tau[t[x][y]][z]
                rhs = hom_add(hom_compose(eta[xz][yz], tau[x][z]), hom_compose(tau[xz][yz], tau[y][z]))
                a = _difference(lhs, rhs, mode)
                if a is not None:
                    return AxiomReport(False, "3", (x, y, z, a), f"axiom 3 fails at ({x}, {y}, {z})")
    if base.is_quandle:
        for x in range(n):
            a = _difference(hom_add(tau[x][x], eta[x][x]), identity_hom(module.fiber(x)), mode)
            if a is not None:
                return AxiomReport(False, "4", (x, a), f"axiom 4 fails at {x}")
    return AxiomReport(True)


def constant_bundle(base: FiniteRack, fiber: FinAbGroup, eta: AbHom) -> RackBundle:
    """Same fiber everywhere with a single eta."""
    n = base.size
    return RackBundle(base, (fiber,) * n, tuple((eta,) * n for _ in range(n)))


def constant_module(base: FiniteRack, fiber: FinAbGroup, eta: AbHom, tau: AbHom) -> RackModule:
    n = base.size
    return RackModule(constant_bundle(base, fiber, eta), tuple((tau,) * n for _ in range(n)))
