"""Subracks, ideals, the star operation on ``Y ◁ X`` and kernels of morphisms.

Every subset of a finite discrete rack is closed, so ideals here are purely
combinatorial.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from .constants import DEFAULT_IDEAL_BUDGET_BITS
from .constructors import conjugation_quandle
from .errors import NotASubrackError, NotUnitalError, SearchBudgetExceededError, ValidationError
from .groups import FiniteGroup, is_subgroup
from .morphisms import RackMorphism, is_unital_morphism
from .racks import ElementSet, FiniteRack, find_rack_violation, is_unital, units, validate_rack

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


@dataclass(frozen=True)
class IdealReport:
    """Closure properties of a subset Y of X.

    Witnesses are the first pair ``(a, b)`` whose product leaves Y: for the
    subrack test ``a, b`` in Y, for the left ideal ``a`` in Y, for the right
    ideal ``b`` in Y.
    """

    subset: ElementSet
    is_subrack: bool
    is_left_ideal: bool
    is_right_ideal: bool
    is_proper: bool
    subrack_witness: Optional[Pair] = None
    left_witness: Optional[Pair] = None
    right_witness: Optional[Pair] = None


def _first_escape(rack: FiniteRack, lefts: Iterable[int], rights: Iterable[int],
                  subset: ElementSet) -> Optional[Pair]:
    rights = list(rights)
    for a in lefts:
        for b in rights:
            if rack.table[a][b] not in subset:
                return a, b
    return None


def classify_subset(rack: FiniteRack, subset: ElementSet) -> IdealReport:
    subrack_witness = _first_escape(rack, subset, subset, subset)
    left_witness = _first_escape(rack, subset, rack.elements(), subset)
    right_witness = _first_escape(rack, rack.elements(), subset, subset)
    return IdealReport(
        subset=subset,
        is_subrack=subrack_witness is None,
        is_left_ideal=left_witness is None,
        is_right_ideal=right_witness is None,
        is_proper=not subset.is_empty() and not subset.is_whole(),
        subrack_witness=subrack_witness,
        left_witness=left_witness,
        right_witness=right_witness,
    )


def translation_orbits(rack: FiniteRack) -> List[Tuple[int, ...]]:
    """Orbits of ``Inn(X)`` on X, ordered by least element."""
    parent = list(rack.elements())

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for y in rack.elements():
        for x in rack.elements():
            a, b = find(y), find(rack.table[y][x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    orbits: Dict[int, List[int]] = {}
    for y in rack.elements():
        orbits.setdefault(find(y), []).append(y)
    return [tuple(members) for _, members in sorted(orbits.items())]


def _check_bits(count: int, budget_bits: int, what: str) -> None:
    if count > budget_bits:
        raise SearchBudgetExceededError(what, 2 ** count, 2 ** budget_bits)


def enumerate_left_ideals(rack: FiniteRack,
                          budget_bits: int = DEFAULT_IDEAL_BUDGET_BITS) -> List[ElementSet]:
    """All left ideals, i.e. unions of ``Inn(X)``-orbits, sorted by size then members.

    Raises:
        SearchBudgetExceededError: If there are more than ``budget_bits`` orbits.
    """
    orbits = translation_orbits(rack)
    _check_bits(len(orbits), budget_bits, "left ideal enumeration")
    ideals = []
    for mask in range(2 ** len(orbits)):
        members = [x for i, orbit in enumerate(orbits) if mask >> i & 1 for x in orbit]
        candidate = ElementSet.of(rack, members)
        if classify_subset(rack, candidate).is_left_ideal:
            ideals.append(candidate)
    logger.debug(f"{len(orbits)} orbits give {len(ideals)} left ideals")
    return sorted(ideals, key=lambda s: (len(s), s.members))


def right_ideal_generated(rack: FiniteRack, seed: Iterable[int]) -> ElementSet:
    """Smallest Y containing ``seed`` with ``X ◁ Y`` inside Y."""
    members = set(seed)
    frontier = list(members)
    while frontier:
        produced = {rack.table[x][y] for y in frontier for x in rack.elements()}
        frontier = list(produced - members)
        members |= produced
    return ElementSet.of(rack, members)


def enumerate_right_ideals(rack: FiniteRack,
                           budget_bits: int = DEFAULT_IDEAL_BUDGET_BITS) -> List[ElementSet]:
    """All right ideals as unions of principal ones, sorted by size then members."""
    principal = {right_ideal_generated(rack, [x]).members for x in rack.elements()}
    _check_bits(len(principal), budget_bits, "right ideal enumeration")
    found = {()}
    for generator in principal:
        found |= {tuple(sorted(set(existing) | set(generator))) for existing in found}
    ideals = [ElementSet.of(rack, members) for members in found]
    return sorted(ideals, key=lambda s: (len(s), s.members))


def check_no_proper_right_ideal(rack: FiniteRack) -> bool:
    """True iff every nonempty right ideal of the unital rack is the whole rack.

    Raises:
        NotUnitalError: If the rack has no units.
    """
    if not is_unital(rack):
        raise NotUnitalError("rack has no units")
    return all(right_ideal_generated(rack, [x]).is_whole() for x in rack.elements())


# ---------------------------------------------------------------------------
# Star operation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StarRackReport:
    """The set ``Y ◁ X`` with ``(y1◁x1) * (y2◁x2) = (y1◁y2) ◁ (x1◁x2)``.

    Attributes:
        elements: Members of ``Y ◁ X`` as indices of X; local index i is
            ``elements[i]``.
        representatives: Lexicographically least ``(y, x)`` for each element.
        table: Star operation on local indices, computed from representatives.
        well_defined: Whether every choice of representatives agrees.
        well_defined_witness: ``(y1, x1, y2, x2)`` disagreeing with the
            canonical representatives.
        rack: The validated rack, when the table passes the rack axioms.
        rack_violation: The first rack-axiom failure otherwise.
    """

    elements: Tuple[int, ...]
    representatives: Tuple[Pair, ...]
    table: Tuple[Tuple[int, ...], ...]
    well_defined: bool
    well_defined_witness: Optional[Tuple[int, int, int, int]] = None
    rack: Optional[FiniteRack] = field(default=None, repr=False)
    rack_violation: Optional[ValidationError] = None


def star_rack(rack: FiniteRack, subset: ElementSet) -> StarRackReport:
    """Star operation on ``Y ◁ X`` for a subrack Y.

    Raises:
        NotASubrackError: If Y is not closed under the operation.
    """
    report = classify_subset(rack, subset)
    if not report.is_subrack:
        raise NotASubrackError("star operation needs a subrack", report.subrack_witness)
    if subset.is_empty():
        raise NotASubrackError("star operation needs a nonempty subrack")
    t = rack.table

    representations: Dict[int, List[Pair]] = {}
    for y in subset:
        for x in rack.elements():
            representations.setdefault(t[y][x], []).append((y, x))
    elements = tuple(sorted(representations))
    local = {e: i for i, e in enumerate(elements)}
    canonical = tuple(min(representations[e]) for e in elements)

    def star(first: Pair, second: Pair) -> int:
        (y1, x1), (y2, x2) = first, second
        return t[t[y1][y2]][t[x1][x2]]

    table = tuple(tuple(local[star(canonical[i], canonical[j])] for j in range(len(elements)))
                  for i in range(len(elements)))

    disagreements = (
        first + second
        for i, a in enumerate(elements)
        for j, b in enumerate(elements)
        for first in representations[a]
        for second in representations[b]
        if star(first, second) != elements[table[i][j]]
    )
    witness = next(disagreements, None)

    violation = find_rack_violation(table)
    result = validate_rack(table) if violation is None else None
    return StarRackReport(elements, canonical, table, witness is None, witness, result, violation)


# ---------------------------------------------------------------------------
# Kernels
# ---------------------------------------------------------------------------

def kernel(f: RackMorphism) -> ElementSet:
    """Preimage of the units of the target."""
    target_units = units(f.target)
    return ElementSet.of(f.source, (x for x in f.source.elements() if f.images[x] in target_units))


@dataclass(frozen=True)
class KernelReport:
    """Facts about ``ker f``.

    ``propositions_hold`` is the conjunction of: the kernel is a left ideal,
    and injective unital morphisms have kernel equal to the source units.
    """

    kernel: ElementSet
    kernel_is_left_ideal: bool
    is_injective: bool
    is_unital: bool
    kernel_equals_units: bool

    @property
    def propositions_hold(self) -> bool:
        injective_claim = not (self.is_injective and self.is_unital) or self.kernel_equals_units
        return self.kernel_is_left_ideal and injective_claim


def verify_kernel_propositions(f: RackMorphism) -> KernelReport:
    ker = kernel(f)
    return KernelReport(
        kernel=ker,
        kernel_is_left_ideal=classify_subset(f.source, ker).is_left_ideal,
        is_injective=f.is_injective(),
        is_unital=is_unital_morphism(f),
        kernel_equals_units=ker.members == units(f.source).members,
    )


def find_non_subgroup_left_ideals(group: FiniteGroup,
                                  budget_bits: int = DEFAULT_IDEAL_BUDGET_BITS) -> List[ElementSet]:
    """Nonempty left ideals of ``Conj(G)`` that are not subgroups of G."""
    quandle = conjugation_quandle(group)
    return [ideal for ideal in enumerate_left_ideals(quandle, budget_bits)
            if not ideal.is_empty() and not is_subgroup(group, ideal)]
