"""Rack morphisms, automorphism groups and the inner representation.

Permutations are tuples ``p`` with ``p[i]`` the image of ``i``;
``compose(p, q)`` is ``p after q``.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from math import prod
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .constants import DEFAULT_CLOSURE_BUDGET, DEFAULT_MORPHISM_BUDGET
from .errors import (
    ClosureBudgetExceededError, NotAHomomorphismError, SearchBudgetExceededError,
)
from .constructors import conjugation_quandle
from .groups import FiniteGroup, is_group_homomorphism
from .racks import FiniteRack, right_translation, subrack_generated, unitarize, units

logger = logging.getLogger(__name__)

Perm = Tuple[int, ...]


def compose(p: Perm, q: Perm) -> Perm:
    """``p after q``."""
    return tuple(p[i] for i in q)


def invert(p: Perm) -> Perm:
    inverse = [0] * len(p)
    for i, image in enumerate(p):
        inverse[image] = i
    return tuple(inverse)


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


# ---------------------------------------------------------------------------
# Morphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RackMorphism:
    """Element map ``source -> target``; see :func:`validate_morphism`."""

    source: FiniteRack = field(repr=False)
    target: FiniteRack = field(repr=False)
    images: Tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.images[x]

    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.target.size


def morphism_violation(source: FiniteRack, target: FiniteRack,
                       images: Sequence[int]) -> Optional[Tuple[int, int]]:
    """First ``(x, y)`` with ``f(x ◁ y) != f(x) ◁ f(y)``, or None."""
    f = np.asarray(images, dtype=np.int64)
    bad = np.argwhere(f[source.array] != target.array[f[:, None], f[None, :]])
    if bad.size:
        return int(bad[0][0]), int(bad[0][1])
    return None


def validate_morphism(source: FiniteRack, target: FiniteRack, images: Sequence[int]) -> RackMorphism:
    """Raises NotAHomomorphismError with the first violating pair."""
    if len(images) != source.size or any(not 0 <= i < target.size for i in images):
        raise NotAHomomorphismError("image list does not match source and target sizes")
    witness = morphism_violation(source, target, images)
    if witness is not None:
        raise NotAHomomorphismError(f"f(x<y) != f(x)<f(y) at {witness}", witness)
    return RackMorphism(source, target, tuple(int(i) for i in images))


def is_morphism(f: RackMorphism) -> bool:
    return morphism_violation(f.source, f.target, f.images) is None


def is_unital_morphism(f: RackMorphism) -> bool:
    """Target unital and ``f(U_X)`` inside ``U_Y``."""
    target_units = units(f.target)
    if target_units.is_empty() or not is_morphism(f):
        return False
    return all(f.images[u] in target_units for u in units(f.source))


def compose_morphisms(g: RackMorphism, f: RackMorphism) -> RackMorphism:
    """``g after f``."""
    return RackMorphism(f.source, g.target, tuple(g.images[i] for i in f.images))


def identity_morphism(rack: FiniteRack) -> RackMorphism:
    return RackMorphism(rack, rack, identity_perm(rack.size))


def translation_morphism(rack: FiniteRack, x: int) -> RackMorphism:
    """``R_x`` as an automorphism."""
    return RackMorphism(rack, rack, right_translation(rack, x))


def inclusion_morphism(rack: FiniteRack) -> RackMorphism:
    """``X -> X+`` onto the first n indices of the unitarization."""
    return RackMorphism(rack, unitarize(rack), identity_perm(rack.size))


def conjugation_morphism(source: FiniteGroup, target: FiniteGroup, images: Sequence[int]) -> RackMorphism:
    """A group homomorphism viewed as ``Conj(G) -> Conj(H)``."""
    if not is_group_homomorphism(source, target, images):
        raise NotAHomomorphismError(f"map is not a homomorphism {source.name} -> {target.name}")
    return RackMorphism(conjugation_quandle(source), conjugation_quandle(target), tuple(images))


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def generating_set(rack: FiniteRack) -> Tuple[int, ...]:
    """Greedy generating set: add each element not yet generated."""
    generators: List[int] = []
    generated: FrozenSet[int] = frozenset()
    for x in rack.elements():
        if x not in generated:
            generators.append(x)
            generated = frozenset(subrack_generated(rack, generators))
            if len(generated) == rack.size:
                break
    return tuple(generators)


class _MorphismSearch:
    """Backtracking over generator images with propagation through the table."""

    def __init__(self, source: FiniteRack, target: FiniteRack, injective: bool) -> None:
        self.source = source
        self.target = target
        self.injective = injective
        self.generators = generating_set(source)
        self.found: List[Tuple[int, ...]] = []

    def _propagate(self, images: List[int], used: List[bool], start: int, value: int) -> bool:
        s, t = self.source.table, self.target.table
        if not self._assign(images, used, start, value):
            return False
        known = [x for x, image in enumerate(images) if image >= 0]
        queue = deque([start])
        while queue:
            a = queue.popleft()
            for b in list(known):
                for p, q in ((a, b), (b, a)):
                    c = s[p][q]
                    v = t[images[p]][images[q]]
                    if images[c] < 0:
                        if not self._assign(images, used, c, v):
                            return False
                        known.append(c)
                        queue.append(c)
                    elif images[c] != v:
                        return False
        return True

    def _assign(self, images: List[int], used: List[bool], x: int, value: int) -> bool:
        if images[x] >= 0:
            return images[x] == value
        if self.injective and used[value]:
            return False
        images[x] = value
        used[value] = True
        return True

    def run(self) -> List[Tuple[int, ...]]:
        self._descend(0, [-1] * self.source.size, [False] * self.target.size)
        return self.found

    def _descend(self, depth: int, images: List[int], used: List[bool]) -> None:
        if depth == len(self.generators):
            if min(images) >= 0:
                self.found.append(tuple(images))
            return
        g = self.generators[depth]
        if images[g] >= 0:
            self._descend(depth + 1, images, used)
            return
        for value in range(self.target.size):
            trial_images, trial_used = list(images), list(used)
            if self._propagate(trial_images, trial_used, g, value):
                self._descend(depth + 1, trial_images, trial_used)


def _search_size(source_generators: int, target_size: int, injective: bool) -> int:
    if injective:
        return prod(range(target_size - source_generators + 1, target_size + 1))
    return target_size ** source_generators


def enumerate_morphisms(source: FiniteRack, target: FiniteRack,
                        budget: int = DEFAULT_MORPHISM_BUDGET,
                        injective: bool = False) -> List[RackMorphism]:
    """All rack morphisms ``source -> target``, in lexicographic order of images.

    A morphism is fixed by the images of a generating set, so the search
    space is ``|target|^k`` for k generators (falling factorial when only
    injective maps are wanted).

    Raises:
        SearchBudgetExceededError: If the search space exceeds ``budget``.
    """
    search = _MorphismSearch(source, target, injective)
    required = _search_size(len(search.generators), target.size, injective)
    if required > budget:
        raise SearchBudgetExceededError("morphism search", required, budget)
    logger.debug(f"Searching morphisms with {len(search.generators)} generators, space {required}")
    found = sorted(search.run())
    return [RackMorphism(source, target, images) for images in found
            if morphism_violation(source, target, images) is None]


# ---------------------------------------------------------------------------
# Permutation groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PermGroup:
    """A permutation group with its elements materialised in sorted order."""

    degree: int
    generators: Tuple[Perm, ...]
    elements: Tuple[Perm, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def _members(self) -> FrozenSet[Perm]:
        return frozenset(self.elements)

    def __contains__(self, perm: object) -> bool:
        return perm in self._members

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(p in other for p in self.elements)


def generate_group(degree: int, generators: Iterable[Perm],
                   budget: int = DEFAULT_CLOSURE_BUDGET) -> PermGroup:
    """Breadth-first closure of ``generators`` under composition.

    Raises:
        ClosureBudgetExceededError: If the group grows past ``budget`` elements.
    """
    gens = tuple(dict.fromkeys(tuple(g) for g in generators))
    identity = identity_perm(degree)
    seen = {identity}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for g in gens:
            product = compose(current, g)
            if product not in seen:
                seen.add(product)
                if len(seen) > budget:
                    raise ClosureBudgetExceededError("group closure", len(seen), budget)
                queue.append(product)
    logger.debug(f"Closed {len(gens)} generators of degree {degree} to order {len(seen)}")
    return PermGroup(degree, gens, tuple(sorted(seen)))


def enumerate_automorphisms(rack: FiniteRack, budget: int = DEFAULT_MORPHISM_BUDGET) -> PermGroup:
    """``Aut(X)``; every automorphism is listed as a generator.

    Raises:
        SearchBudgetExceededError: If the injective search space exceeds ``budget``.
    """
    automorphisms = [f.images for f in enumerate_morphisms(rack, rack, budget, injective=True)]
    return PermGroup(rack.size, tuple(automorphisms), tuple(sorted(automorphisms)))


def inner_representation(rack: FiniteRack) -> Tuple[Perm, ...]:
    """``x -> R_x`` as a tuple indexed by x."""
    return tuple(right_translation(rack, x) for x in rack.elements())


def inner_group(rack: FiniteRack, budget: int = DEFAULT_CLOSURE_BUDGET) -> PermGroup:
    """``Inn(X)``, the group generated by all right translations."""
    return generate_group(rack.size, inner_representation(rack), budget)


def is_normal_in(subgroup: PermGroup, group: PermGroup) -> bool:
    """Normality of ``subgroup`` in ``group`` by conjugating generators."""
    if not subgroup.is_subgroup_of(group):
        return False
    return all(compose(compose(g, h), invert(g)) in subgroup
               for g in group.generators for h in subgroup.generators)


def quotient_order(group: PermGroup, subgroup: PermGroup) -> int:
    if not subgroup.is_subgroup_of(group):
        raise ValueError("quotient_order needs a subgroup")
    return group.order // subgroup.order


# ---------------------------------------------------------------------------
# Identities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityCheck:
    """Outcome of an exhaustive identity check; truthy when it holds."""

    holds: bool
    witness: Optional[Tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.holds


def check_inner_identity(rack: FiniteRack) -> IdentityCheck:
    """``R_x R_x'(y) == R_x(y) ◁ R_x(x')`` for all ``(x, x', y)``."""
    arr = rack.array
    for x in rack.elements():
        # lhs[x', y] = (y ◁ x') ◁ x, rhs[x', y] = (y ◁ x) ◁ (x' ◁ x)
        lhs = arr[arr.T, x]
        rhs = arr[arr[:, x][None, :], arr[:, x][:, None]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            return IdentityCheck(False, (x, int(bad[0][0]), int(bad[0][1])))
    return IdentityCheck(True)


def check_endo_translation_identity(rack: FiniteRack, f: RackMorphism) -> IdentityCheck:
    """``f R_x == R_f(x) f`` for all x, with witness ``(x, y)``."""
    for x in rack.elements():
        for y in rack.elements():
            if f.images[rack.table[y][x]] != rack.table[f.images[y]][f.images[x]]:
                return IdentityCheck(False, (x, y))
    return IdentityCheck(True)


def check_translation_conjugation_identity(rack: FiniteRack) -> IdentityCheck:
    """``R_(x◁y) == R_y R_x R_y^-1`` for all ``(x, y)``."""
    translations = inner_representation(rack)
    for x in rack.elements():
        for y in rack.elements():
            r_y = translations[y]
            if translations[rack.table[x][y]] != compose(compose(r_y, translations[x]), invert(r_y)):
                return IdentityCheck(False, (x, y))
    return IdentityCheck(True)
