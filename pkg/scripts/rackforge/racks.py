"""Finite racks and quandles.

A rack is stored as its operation table with ``table[y][x] == y ◁ x``: the row
is the left operand, so column ``x`` is the right translation ``R_x``.
Racks are only built through :func:`validate_rack`, so every other function
here assumes the axioms hold.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    InvalidTableError, NotBijectiveError, NotDistributiveError, ValidationError
)

logger = logging.getLogger(__name__)

Table = Tuple[Tuple[int, ...], ...]
Permutation = Tuple[int, ...]


@dataclass(frozen=True)
class FiniteRack:
    """A validated finite rack.

    Attributes:
        table: ``table[y][x]`` is ``y ◁ x``.
        is_quandle: True iff ``x ◁ x == x`` for every x.
    """

    table: Table
    is_quandle: bool

    @property
    def size(self) -> int:
        return len(self.table)

    def op(self, y: int, x: int) -> int:
        return self.table[y][x]

    def elements(self) -> range:
        return range(len(self.table))

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.table, dtype=np.int64)
        arr.setflags(write=False)
        return arr

    @cached_property
    def left_division(self) -> Table:
        """``left_division[x][y]`` is the unique z with ``z ◁ x == y``."""
        n = self.size
        columns = []
        for x in range(n):
            inverse = [0] * n
            for z in range(n):
                inverse[self.table[z][x]] = z
            columns.append(tuple(inverse))
        return tuple(columns)


@dataclass(frozen=True)
class ElementSet:
    """A sorted, duplicate-free subset of a rack's carrier."""

    carrier: FiniteRack = field(repr=False)
    members: Tuple[int, ...]

    @classmethod
    def of(cls, carrier: FiniteRack, elements: Iterable[int]) -> "ElementSet":
        members = tuple(sorted(set(int(e) for e in elements)))
        if members and (members[0] < 0 or members[-1] >= carrier.size):
            raise ValueError(f"elements {members} outside carrier of size {carrier.size}")
        return cls(carrier, members)

    def __contains__(self, element: object) -> bool:
        return element in self._lookup

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    @cached_property
    def _lookup(self) -> frozenset:
        return frozenset(self.members)

    def is_empty(self) -> bool:
        return not self.members

    def is_whole(self) -> bool:
        return len(self.members) == self.carrier.size


def _as_square_array(table: Sequence[Sequence[int]]) -> np.ndarray:
    n = len(table)
    if n == 0:
        raise InvalidTableError("operation table is empty")
    for y, row in enumerate(table):
        if len(row) != n:
            raise InvalidTableError(f"row {y} has length {len(row)}, expected {n}", (y,))
    arr = np.asarray(table)
    if not np.issubdtype(arr.dtype, np.integer):
        raise InvalidTableError("operation table entries must be integers")
    arr = arr.astype(np.int64)
    if arr.min() < 0 or arr.max() >= n:
        bad = np.argwhere((arr < 0) | (arr >= n))[0]
        raise InvalidTableError(f"entry at {tuple(bad)} outside 0..{n - 1}", tuple(int(v) for v in bad))
    return arr


def find_rack_violation(table: Sequence[Sequence[int]]) -> Optional[ValidationError]:
    """Return the first rack-axiom violation of ``table``, or None.

    Columns are checked before distributivity; distributivity witnesses are
    reported in lexicographic order of ``(x, y, z)``.

    Raises:
        InvalidTableError: If the table is not a square array over 0..n-1.
    """
    arr = _as_square_array(table)
    n = arr.shape[0]
    idx = np.arange(n)

    sorted_columns = np.sort(arr, axis=0)
    bad_columns = np.nonzero((sorted_columns != idx[:, None]).any(axis=0))[0]
    if bad_columns.size:
        return NotBijectiveError(int(bad_columns[0]))

    # One x-slice at a time: lhs[y, z] = (x<y)<z, rhs[y, z] = (x<z)<(y<z)
    for x in range(n):
        lhs = arr[arr[x, :], :]
        rhs = arr[arr[x, :][None, :], arr]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            y, z = (int(v) for v in bad[0])
            return NotDistributiveError(x, y, z)
    return None


def validate_rack(table: Sequence[Sequence[int]]) -> FiniteRack:
    """Check both rack axioms and build the rack.

    Raises:
        InvalidTableError: Bad shape or entries.
        NotBijectiveError: Some column is not a permutation.
        NotDistributiveError: Right distributivity fails.
    """
    violation = find_rack_violation(table)
    if violation is not None:
        logger.debug(f"Rejected table: {violation}")
        raise violation
    frozen = tuple(tuple(int(v) for v in row) for row in table)
    is_quandle = all(frozen[x][x] == x for x in range(len(frozen)))
    return FiniteRack(frozen, is_quandle)


def left_divide(rack: FiniteRack, y: int, x: int) -> int:
    """The unique z with ``z ◁ x == y``."""
    return rack.left_division[x][y]


def right_translation(rack: FiniteRack, x: int) -> Permutation:
    """The permutation ``R_x: y -> y ◁ x``."""
    return tuple(rack.table[y][x] for y in range(rack.size))


def stabilizers(rack: FiniteRack) -> ElementSet:
    """Elements u with ``x ◁ u == x`` for all x."""
    n = rack.size
    return ElementSet.of(rack, (u for u in range(n)
                                if all(rack.table[x][u] == x for x in range(n))))


def fixed_points(rack: FiniteRack) -> ElementSet:
    """Totally fixed elements: ``u ◁ x == u`` for all x."""
    n = rack.size
    return ElementSet.of(rack, (u for u in range(n)
                                if all(rack.table[u][x] == u for x in range(n))))


def units(rack: FiniteRack) -> ElementSet:
    """Elements that are both stabilizers and totally fixed."""
    fixed = fixed_points(rack)
    return ElementSet.of(rack, (u for u in stabilizers(rack) if u in fixed))


def is_unital(rack: FiniteRack) -> bool:
    return not units(rack).is_empty()


def is_involutive(rack: FiniteRack) -> bool:
    """True iff ``(x ◁ y) ◁ y == x`` for all x, y."""
    arr = rack.array
    return bool((arr[arr, np.arange(rack.size)[None, :]] == np.arange(rack.size)[:, None]).all())


def is_left_distributive(rack: FiniteRack) -> bool:
    """True iff ``x ◁ (y ◁ z) == (x ◁ y) ◁ (x ◁ z)`` for all triples."""
    arr = rack.array
    n = rack.size
    idx = np.arange(n)
    lhs = arr[idx[:, None, None], arr[None, :, :]]
    rhs = arr[arr[:, :, None], arr[:, None, :]]
    return bool((lhs == rhs).all())


def unitarize(rack: FiniteRack) -> FiniteRack:
    """Adjoin a unit ``u = n`` with ``x ◁ u == x`` and ``u ◁ x == u``."""
    n = rack.size
    rows: List[Tuple[int, ...]] = [row + (y,) for y, row in enumerate(rack.table)]
    rows.append((n,) * (n + 1))
    return validate_rack(rows)


def subrack_generated(rack: FiniteRack, seed: Iterable[int]) -> ElementSet:
    """Smallest subset containing ``seed`` and closed under the operation."""
    members = set(int(s) for s in seed)
    if not members:
        raise ValueError("seed must be nonempty")
    frontier = set(members)
    while frontier:
        produced = set()
        current = list(members)
        for a in frontier:
            for b in current:
                produced.add(rack.table[a][b])
                produced.add(rack.table[b][a])
        frontier = produced - members
        members |= frontier
    return ElementSet.of(rack, members)


def product_rack(first: FiniteRack, second: FiniteRack) -> FiniteRack:
    """Componentwise rack on pairs ``(a, b)`` indexed ``a * |second| + b``."""
    m = second.size
    size = first.size * m
    rows = []
    for left in range(size):
        a, b = divmod(left, m)
        rows.append(tuple(first.table[a][right // m] * m + second.table[b][right % m]
                          for right in range(size)))
    return validate_rack(rows)
