"""Standard module families: trivial, Alexander and group-module modules."""

import logging
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

from ..errors import NonUnitScalarError, NotAnActionError, RelationViolatedError
from ..groups import FiniteGroup
from ..racks import FiniteRack
from .abelian import (
    AbHom, FinAbGroup, hom_compose, hom_sub, identity_hom, is_isomorphism, scalar_hom, zero_hom
)
from .bundles import RackBundle, RackModule, constant_module

logger = logging.getLogger(__name__)


def trivial_module(base: FiniteRack, fiber: FinAbGroup) -> RackModule:
    """Constant fiber, ``eta = id``, ``tau = 0``."""
    return constant_module(base, fiber, identity_hom(fiber), zero_hom(fiber, fiber))


def alexander_module(base: FiniteRack, fiber: FinAbGroup, t: int) -> RackModule:
    """Constant fiber with ``eta = t`` and ``tau = 1 - t``.

    Raises:
        NonUnitScalarError: If t is not invertible modulo every factor.
    """
    for n in fiber.factors:
        if math.gcd(t, n) != 1:
            raise NonUnitScalarError(f"{t} is not a unit modulo {n}", (t, n))
    return constant_module(base, fiber, scalar_hom(fiber, t), scalar_hom(fiber, 1 - t))


@dataclass(frozen=True)
class GroupModule:
    """A left action of G on A by automorphisms; ``action[g]`` is ``a -> g.a``."""

    group: FiniteGroup
    module: FinAbGroup
    action: Tuple[AbHom, ...]


def validate_group_module(group: FiniteGroup, module: FinAbGroup,
                          action: Sequence[AbHom]) -> GroupModule:
    """Raises NotAnActionError unless ``g -> action[g]`` is a homomorphism into Aut(A)."""
    if len(action) != group.size:
        raise NotAnActionError(f"need {group.size} automorphisms, got {len(action)}")
    for g, hom in enumerate(action):
        if hom.source != module or hom.target != module or not is_isomorphism(hom):
            raise NotAnActionError(f"action of {g} is not an automorphism of {module}", (g,))
    if action[group.identity] != identity_hom(module):
        raise NotAnActionError("identity does not act trivially", (group.identity,))
    for g in group.elements():
        for h in group.elements():
            if action[group.mult[g][h]] != hom_compose(action[g], action[h]):
                raise NotAnActionError(f"action of {g}*{h} is not the composite", (g, h))
    return GroupModule(group, module, tuple(action))


def from_group_module(base: FiniteRack, group_module: GroupModule, phi: Sequence[int]) -> RackModule:
    """Module from ``phi: X -> G`` with ``phi(x◁y) == phi(y) phi(x) phi(y)^-1``.

    ``eta(x, y) = phi(y).`` and ``tau(x, y) = 1 - phi(x◁y).``.

    Raises:
        RelationViolatedError: First pair where phi breaks the relation.
    """
    group, action = group_module.group, group_module.action
    if len(phi) != base.size:
        raise RelationViolatedError(f"phi needs {base.size} values, got {len(phi)}")
    for x in base.elements():
        for y in base.elements():
            if phi[base.table[x][y]] != group.conjugate(phi[x], phi[y]):
                raise RelationViolatedError(f"phi(x<y) != phi(y) phi(x) phi(y)^-1 at ({x}, {y})", (x, y))
    fiber = group_module.module
    one = identity_hom(fiber)
    n = base.size
    eta = tuple(tuple(action[phi[y]] for y in range(n)) for _ in range(n))
    tau = tuple(tuple(hom_sub(one, action[phi[base.table[x][y]]]) for y in range(n)) for x in range(n))
    logger.debug(f"Built group-module module over {n} points with fiber {fiber}")
    return RackModule(RackBundle(base, (fiber,) * n, eta), tau)
