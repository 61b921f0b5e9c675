"""Finite groups by multiplication table, matrices mod m and linear actions.

Groups are the raw material for the conjugation, core, coset and linear rack
constructors. Everything is index based: element ``a`` of a group of order n
is an int in ``0..n-1`` and ``mult[a][b]`` is ``a * b``.
"""

import itertools
import logging
import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import FrozenSet, Iterable, List, Sequence, Tuple

import numpy as np
import sympy

from .errors import (
    NotAGroupError, NotAnActionError, NotAnAutomorphismError, SingularMatrixError
)

logger = logging.getLogger(__name__)

Table = Tuple[Tuple[int, ...], ...]
Vector = Tuple[int, ...]


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its Cayley table.

    Attributes:
        mult: ``mult[a][b]`` is ``a * b``.
        inverse: ``inverse[a]`` is ``a^-1``.
        identity: Index of the neutral element.
        name: Display name, e.g. ``"S3"``.
    """

    mult: Table
    inverse: Tuple[int, ...]
    identity: int
    name: str = ""

    @property
    def size(self) -> int:
        return len(self.mult)

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conjugate(self, x: int, y: int) -> int:
        """``y x y^-1``."""
        return self.mult[self.mult[y][x]][self.inverse[y]]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        result = self.identity
        for _ in range(k):
            result = self.mult[result][a]
        return result

    def elements(self) -> range:
        return range(len(self.mult))

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.mult, dtype=np.int64)

    def is_abelian(self) -> bool:
        return bool((self.array == self.array.T).all())


def validate_group(mult: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    """Check the group axioms and build the group.

    Raises:
        NotAGroupError: Bad shape, no identity, missing inverse or a
            non-associative triple.
    """
    n = len(mult)
    if n == 0 or any(len(row) != n for row in mult):
        raise NotAGroupError("multiplication table must be square and nonempty")
    arr = np.asarray(mult, dtype=np.int64)
    if arr.min() < 0 or arr.max() >= n:
        raise NotAGroupError("multiplication table entries out of range")

    idx = np.arange(n)
    identities = [e for e in range(n) if (arr[e] == idx).all() and (arr[:, e] == idx).all()]
    if not identities:
        raise NotAGroupError("no identity element")
    identity = identities[0]

    inverse = []
    for a in range(n):
        candidates = np.nonzero(arr[a] == identity)[0]
        if candidates.size != 1 or arr[candidates[0], a] != identity:
            raise NotAGroupError(f"element {a} has no two-sided inverse", (a,))
        inverse.append(int(candidates[0]))

    bad = np.argwhere(arr[arr[:, :, None], idx[None, None, :]] != arr[idx[:, None, None], arr[None, :, :]])
    if bad.size:
        a, b, c = (int(v) for v in bad[0])
        raise NotAGroupError(f"associativity fails at ({a}, {b}, {c})", (a, b, c))

    return FiniteGroup(tuple(tuple(int(v) for v in row) for row in arr), tuple(inverse), identity, name)


# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------

def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError(f"cyclic group order must be positive, got {n}")
    return validate_group([[(a + b) % n for b in range(n)] for a in range(n)], f"Z{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n; ``r^k s^e`` has index ``k + n*e``."""
    if n < 1:
        raise ValueError(f"dihedral group needs n >= 1, got {n}")
    size = 2 * n
    rows = []
    for left in range(size):
        a, e = left % n, left // n
        row = []
        for right in range(size):
            b, f = right % n, right // n
            k = (a + (-1) ** e * b) % n
            row.append(k + n * ((e + f) % 2))
        rows.append(row)
    return validate_group(rows, f"D{n}")


def symmetric_group(n: int) -> FiniteGroup:
    """S_n on ``0..n-1``; elements in ``itertools.permutations`` order."""
    if not 1 <= n <= 5:
        raise ValueError(f"symmetric group supported for 1 <= n <= 5, got {n}")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    rows = [[index[tuple(a[b[i]] for i in range(n))] for b in perms] for a in perms]
    return validate_group(rows, f"S{n}")


def symmetric_group_elements(n: int) -> List[Tuple[int, ...]]:
    """Permutation behind each element index of :func:`symmetric_group`."""
    return list(itertools.permutations(range(n)))


# (sign, unit) products for the units 1, i, j, k
_QUATERNION_UNITS = (
    ((1, 0), (1, 1), (1, 2), (1, 3)),
    ((1, 1), (-1, 0), (1, 3), (-1, 2)),
    ((1, 2), (-1, 3), (-1, 0), (1, 1)),
    ((1, 3), (1, 2), (-1, 1), (-1, 0)),
)


def quaternion_group() -> FiniteGroup:
    """Q8 with ``+u`` at index u and ``-u`` at index ``u + 4``."""
    rows = []
    for left in range(8):
        row = []
        for right in range(8):
            sign, unit = _QUATERNION_UNITS[left % 4][right % 4]
            if (left >= 4) != (right >= 4):
                sign = -sign
            row.append(unit + (4 if sign < 0 else 0))
        rows.append(row)
    return validate_group(rows, "Q8")


def direct_product(first: FiniteGroup, second: FiniteGroup) -> FiniteGroup:
    """Pairs ``(g, h)`` indexed ``g * |second| + h``."""
    m = second.size
    size = first.size * m
    rows = [[first.mult[a // m][b // m] * m + second.mult[a % m][b % m] for b in range(size)]
            for a in range(size)]
    return validate_group(rows, f"{first.name}x{second.name}")


def klein_four_group() -> FiniteGroup:
    group = direct_product(cyclic_group(2), cyclic_group(2))
    return FiniteGroup(group.mult, group.inverse, group.identity, "V4")


_GROUP_NAME = re.compile(r"^(Z|D|S)(\d+)$|^(Q8|V4)$")


def group_by_name(name: str) -> FiniteGroup:
    """Resolve ``Z<n>``, ``D<n>``, ``S<n>``, ``Q8``, ``V4`` and ``x``-products.

    Raises:
        ValueError: If any factor name is unknown.
    """
    factors = []
    for part in name.strip().split("x"):
        match = _GROUP_NAME.match(part)
        if not match:
            raise ValueError(f"unknown group name '{part}'")
        if match.group(3) == "Q8":
            factors.append(quaternion_group())
        elif match.group(3) == "V4":
            factors.append(klein_four_group())
        else:
            family, n = match.group(1), int(match.group(2))
            builder = {"Z": cyclic_group, "D": dihedral_group, "S": symmetric_group}[family]
            factors.append(builder(n))
    group = factors[0]
    for factor in factors[1:]:
        group = direct_product(group, factor)
    return group


def group_catalog(max_order: int = 8) -> List[FiniteGroup]:
    """Small groups used by tests and the rack catalog, up to ``max_order``."""
    groups = [cyclic_group(n) for n in range(1, max_order + 1)]
    groups += [dihedral_group(n) for n in range(3, max_order // 2 + 1)]
    groups += [symmetric_group(n) for n in (3, 4) if math.factorial(n) <= max_order]
    if max_order >= 4:
        groups.append(klein_four_group())
    if max_order >= 8:
        groups.append(quaternion_group())
    return groups


# ---------------------------------------------------------------------------
# Subgroups, cosets, homomorphisms
# ---------------------------------------------------------------------------

def center(group: FiniteGroup) -> Tuple[int, ...]:
    arr = group.array
    return tuple(int(z) for z in range(group.size) if (arr[z, :] == arr[:, z]).all())


def is_subgroup(group: FiniteGroup, subset: Iterable[int]) -> bool:
    members = set(subset)
    if not members:
        return False
    return all(group.mult[a][group.inverse[b]] in members for a in members for b in members)


def subgroup_generated(group: FiniteGroup, generators: Iterable[int]) -> FrozenSet[int]:
    members = {group.identity} | set(generators)
    frontier = set(members)
    while frontier:
        produced = {group.mult[a][b] for a in frontier for b in list(members)}
        frontier = produced - members
        members |= frontier
    return frozenset(members)


def is_normal_subgroup(group: FiniteGroup, subset: Iterable[int]) -> bool:
    members = set(subset)
    if not is_subgroup(group, members):
        return False
    return all(group.conjugate(h, g) in members for h in members for g in group.elements())


@dataclass(frozen=True)
class CosetSpace:
    """Right cosets ``Hx`` ordered by their least element.

    Attributes:
        cosets: Each coset as a sorted tuple; ``cosets[i][0]`` is its canonical
            representative.
        index_of: ``index_of[g]`` is the coset containing g.
    """

    cosets: Tuple[Tuple[int, ...], ...]
    index_of: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.cosets)

    def representative(self, i: int) -> int:
        return self.cosets[i][0]


def right_cosets(group: FiniteGroup, subgroup: Iterable[int]) -> CosetSpace:
    members = sorted(set(subgroup))
    if not is_subgroup(group, members):
        raise NotAGroupError(f"{members} is not a subgroup of {group.name}")
    index_of = [-1] * group.size
    cosets = []
    for x in group.elements():
        if index_of[x] >= 0:
            continue
        coset = tuple(sorted(group.mult[h][x] for h in members))
        for g in coset:
            index_of[g] = len(cosets)
        cosets.append(coset)
    return CosetSpace(tuple(cosets), tuple(index_of))


def quotient_group(group: FiniteGroup, normal: Iterable[int]) -> Tuple[FiniteGroup, Tuple[int, ...]]:
    """``G/N`` together with the projection ``G -> G/N``.

    Raises:
        NotAGroupError: If ``normal`` is not a normal subgroup.
    """
    members = set(normal)
    if not is_normal_subgroup(group, members):
        raise NotAGroupError(f"{sorted(members)} is not normal in {group.name}")
    space = right_cosets(group, members)
    rows = [[space.index_of[group.mult[space.representative(i)][space.representative(j)]]
             for j in range(space.size)] for i in range(space.size)]
    quotient = validate_group(rows, f"{group.name}/N{len(members)}")
    return quotient, space.index_of


def is_group_homomorphism(source: FiniteGroup, target: FiniteGroup, images: Sequence[int]) -> bool:
    if len(images) != source.size:
        return False
    return all(images[source.mult[a][b]] == target.mult[images[a]][images[b]]
               for a in source.elements() for b in source.elements())


def is_automorphism(group: FiniteGroup, images: Sequence[int]) -> bool:
    return sorted(images) == list(group.elements()) and is_group_homomorphism(group, group, images)


def conjugation_automorphism(group: FiniteGroup, g: int) -> Tuple[int, ...]:
    """``x -> g x g^-1``."""
    return tuple(group.conjugate(x, g) for x in group.elements())


def element_order(group: FiniteGroup, g: int) -> int:
    order, current = 1, g
    while current != group.identity:
        current = group.mult[current][g]
        order += 1
    return order


# ---------------------------------------------------------------------------
# Matrices and vectors mod m
# ---------------------------------------------------------------------------

def vector_space(modulus: int, dim: int) -> List[Vector]:
    """All vectors of ``(Z/m)^d``, first coordinate most significant."""
    return list(itertools.product(range(modulus), repeat=dim))


def vector_index(vector: Sequence[int], modulus: int) -> int:
    index = 0
    for coordinate in vector:
        index = index * modulus + int(coordinate) % modulus
    return index


@dataclass(frozen=True)
class ModMatrix:
    """Square integer matrix with entries reduced mod ``modulus``."""

    modulus: int
    entries: Table

    @classmethod
    def of(cls, modulus: int, entries: Sequence[Sequence[int]]) -> "ModMatrix":
        if modulus < 2:
            raise ValueError(f"modulus must be at least 2, got {modulus}")
        d = len(entries)
        if d == 0 or any(len(row) != d for row in entries):
            raise ValueError("matrix must be square and nonempty")
        return cls(modulus, tuple(tuple(int(v) % modulus for v in row) for row in entries))

    @classmethod
    def identity(cls, dim: int, modulus: int) -> "ModMatrix":
        return cls.of(modulus, np.eye(dim, dtype=np.int64).tolist())

    @property
    def dim(self) -> int:
        return len(self.entries)

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def det(self) -> int:
        return int(sympy.Matrix(self.entries).det()) % self.modulus

    def is_invertible(self) -> bool:
        return math.gcd(self.det(), self.modulus) == 1

    def inverse(self) -> "ModMatrix":
        """Raises SingularMatrixError unless det is a unit mod m."""
        if not self.is_invertible():
            raise SingularMatrixError(
                f"det {self.det()} is not a unit mod {self.modulus}", (self.det(),))
        inv = sympy.Matrix(self.entries).inv_mod(self.modulus)
        return ModMatrix.of(self.modulus, inv.tolist())

    def __matmul__(self, other: "ModMatrix") -> "ModMatrix":
        return ModMatrix.of(self.modulus, ((self.array @ other.array) % self.modulus).tolist())

    def apply(self, vector: Sequence[int]) -> Vector:
        return tuple(int(v) for v in (self.array @ np.asarray(vector, dtype=np.int64)) % self.modulus)

    def power(self, k: int) -> "ModMatrix":
        result = ModMatrix.identity(self.dim, self.modulus)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            result = result @ base
        return result


# ---------------------------------------------------------------------------
# Linear representations on (Z/m)^d
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearRepresentation:
    """A verified homomorphism ``rho: G -> GL_d(Z/m)``."""

    group: FiniteGroup
    modulus: int
    matrices: Tuple[ModMatrix, ...]

    @property
    def dim(self) -> int:
        return self.matrices[0].dim

    @cached_property
    def vectors(self) -> List[Vector]:
        return vector_space(self.modulus, self.dim)

    @cached_property
    def action(self) -> Table:
        """``action[g][i]`` is the index of ``rho(g) v_i``."""
        return tuple(
            tuple(vector_index(matrix.apply(v), self.modulus) for v in self.vectors)
            for matrix in self.matrices)

    def kernel(self) -> Tuple[int, ...]:
        identity = ModMatrix.identity(self.dim, self.modulus)
        return tuple(g for g in self.group.elements() if self.matrices[g] == identity)

    def fixed_vectors(self) -> Tuple[int, ...]:
        """Indices of the vectors fixed by every group element."""
        return tuple(i for i in range(len(self.vectors))
                     if all(self.action[g][i] == i for g in self.group.elements()))


def validate_representation(group: FiniteGroup, matrices: Sequence[ModMatrix]) -> LinearRepresentation:
    """Check that ``matrices`` define a linear action of ``group``.

    Raises:
        NotAnActionError: Wrong count, a singular matrix, or
            ``rho(gh) != rho(g) rho(h)``.
    """
    if len(matrices) != group.size:
        raise NotAnActionError(f"need {group.size} matrices, got {len(matrices)}")
    modulus, dim = matrices[0].modulus, matrices[0].dim
    for g, matrix in enumerate(matrices):
        if matrix.modulus != modulus or matrix.dim != dim:
            raise NotAnActionError(f"matrix for {g} has a different shape or modulus", (g,))
        if not matrix.is_invertible():
            raise NotAnActionError(f"matrix for {g} is not invertible", (g,))
    for g in group.elements():
        for h in group.elements():
            if matrices[group.mult[g][h]] != matrices[g] @ matrices[h]:
                raise NotAnActionError(f"rho({g}*{h}) != rho({g}) rho({h})", (g, h))
    return LinearRepresentation(group, modulus, tuple(matrices))


def trivial_representation(group: FiniteGroup, modulus: int, dim: int = 1) -> LinearRepresentation:
    return validate_representation(group, [ModMatrix.identity(dim, modulus)] * group.size)


def cyclic_representation(n: int, modulus: int, generator: Sequence[Sequence[int]]) -> LinearRepresentation:
    """``Z/n`` acting by powers of ``generator``; requires ``generator^n = I``."""
    matrix = ModMatrix.of(modulus, generator)
    return validate_representation(cyclic_group(n), [matrix.power(k) for k in range(n)])


def permutation_representation(n: int, modulus: int) -> LinearRepresentation:
    """S_n permuting the coordinates of ``(Z/m)^n``."""
    matrices = []
    for perm in symmetric_group_elements(n):
        entries = [[0] * n for _ in range(n)]
        for i in range(n):
            entries[perm[i]][i] = 1
        matrices.append(ModMatrix.of(modulus, entries))
    return validate_representation(symmetric_group(n), matrices)


def sign_representation(n: int, modulus: int) -> LinearRepresentation:
    """S_n acting on ``Z/m`` by the sign of the permutation."""
    matrices = []
    for perm in symmetric_group_elements(n):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        matrices.append(ModMatrix.of(modulus, [[(-1) ** inversions]]))
    return validate_representation(symmetric_group(n), matrices)


def automorphism_from_images(group: FiniteGroup, images: Sequence[int]) -> Tuple[int, ...]:
    """Validate a group automorphism given as an image list."""
    if not is_automorphism(group, images):
        raise NotAnAutomorphismError(f"{tuple(images)} is not an automorphism of {group.name}")
    return tuple(int(i) for i in images)
