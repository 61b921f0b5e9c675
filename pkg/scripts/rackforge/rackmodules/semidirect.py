"""Semidirect products ``A x| X`` and cocycle racks ``V x|_alpha G``."""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

from ..errors import ValidationError
from ..groups import LinearRepresentation
from ..morphisms import RackMorphism
from ..racks import FiniteRack, find_rack_violation, validate_rack
from .bundles import RackModule

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SemidirectLayout:
    """Numbering of pairs ``(a, x)`` with ``a`` in ``A_x``.

    Fibers are laid out one after another: ``(a, x)`` has index
    ``offsets[x] + A_x.index(a)``.
    """

    module: RackModule = field(repr=False)

    @cached_property
    def offsets(self) -> Tuple[int, ...]:
        offsets, total = [], 0
        for fiber in self.module.fibers:
            offsets.append(total)
            total += fiber.order
        return tuple(offsets)

    @property
    def size(self) -> int:
        return sum(fiber.order for fiber in self.module.fibers)

    @cached_property
    def pairs(self) -> Tuple[Tuple[int, int], ...]:
        """``(element index in A_x, x)`` for each total index."""
        return tuple((a, x) for x, fiber in enumerate(self.module.fibers) for a in range(fiber.order))

    def index(self, a: int, x: int) -> int:
        return self.offsets[x] + a

    def fiber_indices(self, x: int) -> range:
        return range(self.offsets[x], self.offsets[x] + self.module.fibers[x].order)


def semidirect_table(module: RackModule) -> List[List[int]]:
    """``(a, x) ◁ (b, y) == (eta(x, y) a + tau(x, y) b, x ◁ y)``."""
    layout = SemidirectLayout(module)
    base, eta, tau = module.base, module.eta, module.tau
    rows = []
    for a, x in layout.pairs:
        row = []
        for b, y in layout.pairs:
            xy = base.table[x][y]
            target = module.fiber(xy)
            value = target.add(target.element(eta[x][y].table[a]), target.element(tau[x][y].table[b]))
            row.append(layout.index(target.index(value), xy))
        rows.append(row)
    return rows


def semidirect_product(module: RackModule) -> FiniteRack:
    """Semidirect product rack; a quandle when the base is one and axiom 4 holds.

    Raises:
        ValidationError: If the module data do not give a rack.
    """
    rack = validate_rack(semidirect_table(module))
    logger.debug(f"Semidirect product of size {rack.size} over base of size {module.base.size}")
    return rack


def semidirect_projection(module: RackModule, total: Optional[FiniteRack] = None) -> RackMorphism:
    """``(a, x) -> x``."""
    layout = SemidirectLayout(module)
    total = total if total is not None else semidirect_product(module)
    return RackMorphism(total, module.base, tuple(x for _, x in layout.pairs))


# ---------------------------------------------------------------------------
# Cocycle racks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CocycleRackReport:
    """Result of building ``V x|_alpha G`` on pairs ``(u, g)`` indexed ``g*|V| + u``.

    Attributes:
        table: The operation table, always materialised.
        cocycle_witness: First ``(g, h, k)`` breaking the cocycle identity.
        rack_violation: First rack-axiom failure of the table.
        rack: The rack when valid.
    """

    table: Tuple[Tuple[int, ...], ...]
    group_order: int
    cocycle_witness: Optional[Tuple[int, int, int]]
    rack_violation: Optional[ValidationError]
    rack: Optional[FiniteRack] = field(default=None, repr=False)

    @property
    def is_cocycle(self) -> bool:
        return self.cocycle_witness is None

    @property
    def is_rack(self) -> bool:
        return self.rack_violation is None

    def rack_witness_groups(self) -> Optional[Tuple[int, int, int]]:
        """Group components of the distributivity witness, if there is one."""
        if self.rack_violation is None or self.rack_violation.witness is None:
            return None
        nv = len(self.table) // self.group_order
        x, y, z = self.rack_violation.witness
        return x // nv, y // nv, z // nv


def cocycle_violation(rep: LinearRepresentation, alpha: Sequence[Sequence[int]]) -> Optional[Tuple[int, int, int]]:
    """First ``(g, h, k)`` where
    ``k^-1.alpha(g,h) + alpha(h^-1 g h, k) != k^-1 h^-1 k.alpha(g,k) + alpha(k^-1 g k, k^-1 h k)``.

    ``alpha[g][h]`` is a vector index of V.
    """
    group, act = rep.group, rep.action
    vectors, m = rep.vectors, rep.modulus
    index = {v: i for i, v in enumerate(vectors)}
    inv = group.inverse

    def plus(i: int, j: int) -> int:
        return index[tuple((a + b) % m for a, b in zip(vectors[i], vectors[j]))]

    for g in group.elements():
        for h in group.elements():
            for k in group.elements():
                lhs = plus(act[inv[k]][alpha[g][h]], alpha[group.conjugate(g, inv[h])][k])
                twist = group.mult[group.mult[inv[k]][inv[h]]][k]
                rhs = plus(act[twist][alpha[g][k]],
                           alpha[group.conjugate(g, inv[k])][group.conjugate(h, inv[k])])
                if lhs != rhs:
                    return g, h, k
    return None


def cocycle_rack(rep: LinearRepresentation, alpha: Sequence[Sequence[int]]) -> CocycleRackReport:
    """``(u, g) ◁ (v, h) == (h^-1.u + alpha(g, h), h^-1 g h)`` with both checks.

    The table is a rack exactly when alpha satisfies the cocycle identity;
    both outcomes are reported rather than raised.
    """
    group, act = rep.group, rep.action
    vectors, m = rep.vectors, rep.modulus
    nv = len(vectors)
    index = {v: i for i, v in enumerate(vectors)}
    inv = group.inverse
    rows = []
    for left in range(group.size * nv):
        g, u = divmod(left, nv)
        row = []
        for right in range(group.size * nv):
            h = right // nv
            moved = vectors[act[inv[h]][u]]
            shift = vectors[alpha[g][h]]
            value = index[tuple((a + b) % m for a, b in zip(moved, shift))]
            row.append(group.conjugate(g, inv[h]) * nv + value)
        rows.append(tuple(row))
    table = tuple(rows)
    violation = find_rack_violation(table)
    rack = validate_rack(table) if violation is None else None
    return CocycleRackReport(table, group.size, cocycle_violation(rep, alpha), violation, rack)
