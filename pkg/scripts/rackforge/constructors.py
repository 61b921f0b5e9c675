"""Rack and quandle families built from groups and modular linear algebra.

Every constructor materialises the full table and passes it through
:func:`racks.validate_rack`, so outputs are always valid racks.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .errors import NotFixingSubgroupError, NotWellDefinedError
from .groups import (
    FiniteGroup, LinearRepresentation, ModMatrix, automorphism_from_images, center,
    conjugation_automorphism, cyclic_group, cyclic_representation, group_catalog,
    right_cosets, sign_representation, symmetric_group, trivial_representation, vector_space,
)
from .racks import FiniteRack, unitarize, validate_rack

logger = logging.getLogger(__name__)


def trivial_quandle(n: int) -> FiniteRack:
    """``x ◁ y == x``; every element is a unit."""
    if n < 1:
        raise ValueError(f"size must be positive, got {n}")
    return validate_rack([[y] * n for y in range(n)])


def conjugation_quandle(group: FiniteGroup) -> FiniteRack:
    """``x ◁ y == y x y^-1``."""
    return validate_rack([[group.conjugate(x, y) for y in group.elements()] for x in group.elements()])


def core_quandle(group: FiniteGroup) -> FiniteRack:
    """``x ◁ y == y x^-1 y``."""
    mult, inv = group.mult, group.inverse
    return validate_rack([[mult[mult[y][inv[x]]][y] for y in group.elements()] for x in group.elements()])


def takasaki_quandle(n: int) -> FiniteRack:
    """Dihedral quandle on ``Z/n`` with ``x ◁ y == 2y - x``."""
    if n < 1:
        raise ValueError(f"size must be positive, got {n}")
    return validate_rack([[(2 * y - x) % n for y in range(n)] for x in range(n)])


def affine_quandle(matrix: ModMatrix) -> FiniteRack:
    """``x ◁ y == Mx + (I - M)y`` on ``(Z/m)^d``.

    Raises:
        SingularMatrixError: If det M is not a unit mod m.
    """
    matrix.inverse()  # raises on singular M
    m, d = matrix.modulus, matrix.dim
    points = np.array(vector_space(m, d), dtype=np.int64).reshape(-1, d)
    complement = (np.eye(d, dtype=np.int64) - matrix.array) % m
    left = points @ matrix.array.T
    right = points @ complement.T
    combined = (left[:, None, :] + right[None, :, :]) % m
    weights = m ** np.arange(d - 1, -1, -1, dtype=np.int64)
    return validate_rack((combined @ weights).tolist())


def coset_quandle(group: FiniteGroup, sigma: Sequence[int], subgroup: Sequence[int]) -> FiniteRack:
    """Quandle on right cosets ``Hx`` with ``[x] ◁ [y] == [sigma(x) sigma(y)^-1 y]``.

    Cosets are numbered by their least element.

    Raises:
        NotAnAutomorphismError: ``sigma`` is not an automorphism.
        NotFixingSubgroupError: ``sigma`` moves an element of the subgroup.
        NotWellDefinedError: The class of the result depends on representatives.
    """
    sigma = automorphism_from_images(group, sigma)
    for h in subgroup:
        if sigma[h] != h:
            raise NotFixingSubgroupError(f"sigma moves subgroup element {h}", (h,))
    space = right_cosets(group, subgroup)
    mult, inv = group.mult, group.inverse

    def raw(x: int, y: int) -> int:
        return space.index_of[mult[mult[sigma[x]][inv[sigma[y]]]][y]]

    rows = []
    for i, left in enumerate(space.cosets):
        row = []
        for j, right in enumerate(space.cosets):
            value = raw(left[0], right[0])
            for x in left:
                for y in right:
                    if raw(x, y) != value:
                        raise NotWellDefinedError(
                            f"cosets {i}, {j}: representatives ({x}, {y}) disagree with "
                            f"({left[0]}, {right[0]})", (x, y, left[0], right[0]))
            row.append(value)
        rows.append(row)
    return validate_rack(rows)


def linear_rack(rep: LinearRepresentation) -> FiniteRack:
    """Rack on ``G x V`` with ``(g, u) ◁ (h, v) == (h^-1 g h, rho(h^-1) u)``.

    Pairs are indexed ``g * |V| + u``; ``(e, 0)`` is always a unit.
    """
    group = rep.group
    nv = len(rep.vectors)
    action, inv = rep.action, group.inverse
    rows = []
    for left in range(group.size * nv):
        g, u = divmod(left, nv)
        row = []
        for right in range(group.size * nv):
            h = right // nv
            row.append(group.conjugate(g, inv[h]) * nv + action[inv[h]][u])
        rows.append(row)
    return validate_rack(rows)


@dataclass(frozen=True)
class LinearRackSets:
    """Stabilisers, fixed points and units of a linear rack read off ``(G, rho)``."""

    stabilizers: Tuple[int, ...]
    fixed_points: Tuple[int, ...]
    units: Tuple[int, ...]


def linear_rack_predicted_sets(rep: LinearRepresentation) -> LinearRackSets:
    """``[Z(G) & ker rho] x V``, ``Z(G) x V^G`` and ``[Z(G) & ker rho] x V^G``."""
    nv = len(rep.vectors)
    central = set(center(rep.group))
    central_kernel = sorted(central & set(rep.kernel()))
    invariant = rep.fixed_vectors()
    return LinearRackSets(
        stabilizers=tuple(g * nv + v for g in central_kernel for v in range(nv)),
        fixed_points=tuple(g * nv + v for g in sorted(central) for v in invariant),
        units=tuple(g * nv + v for g in central_kernel for v in invariant),
    )


# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    rack: FiniteRack


def representation_catalog() -> List[Tuple[str, LinearRepresentation]]:
    """Small linear actions used for linear and cocycle racks."""
    return [
        ("Z2 on Z3 by negation", cyclic_representation(2, 3, [[2]])),
        ("Z2 on Z2 trivially", trivial_representation(cyclic_group(2), 2)),
        ("Z3 on Z2 trivially", trivial_representation(cyclic_group(3), 2)),
        ("Z2 on Z4 by negation", cyclic_representation(2, 4, [[3]])),
        ("Z2 on Z2^2 by swap", cyclic_representation(2, 2, [[0, 1], [1, 0]])),
        ("Z3 on Z2^2", cyclic_representation(3, 2, [[0, 1], [1, 1]])),
        ("S3 on Z3 by sign", sign_representation(3, 3)),
        ("Z4 on Z3 by negation", cyclic_representation(4, 3, [[2]])),
    ]


def _unit_scalars(m: int) -> List[int]:
    return [t for t in range(1, m) if math.gcd(t, m) == 1]


def _invertible_matrices(m: int, d: int) -> List[ModMatrix]:
    matrices = []
    for entries in vector_space(m, d * d):
        matrix = ModMatrix.of(m, [entries[i * d:(i + 1) * d] for i in range(d)])
        if matrix.is_invertible():
            matrices.append(matrix)
    return matrices


def rack_catalog(max_size: int = 8) -> List[CatalogEntry]:
    """Every built-in family over small groups and moduli, up to ``max_size`` elements."""
    entries: List[CatalogEntry] = []

    def add(name: str, rack: FiniteRack) -> None:
        if rack.size <= max_size:
            entries.append(CatalogEntry(name, rack))

    for n in range(1, max_size + 1):
        add(f"trivial({n})", trivial_quandle(n))
        add(f"takasaki({n})", takasaki_quandle(n))
    for group in group_catalog(max_size):
        add(f"conj({group.name})", conjugation_quandle(group))
        add(f"core({group.name})", core_quandle(group))
    for m in range(2, max_size + 1):
        for t in _unit_scalars(m):
            add(f"affine(Z{m}, {t})", affine_quandle(ModMatrix.of(m, [[t]])))
    for m in (2, 3):
        if m * m <= max_size:
            for matrix in _invertible_matrices(m, 2):
                add(f"affine(Z{m}^2, {matrix.entries})", affine_quandle(matrix))

    z4 = cyclic_group(4)
    add("coset(Z4, neg, {0,2})", coset_quandle(z4, [(-a) % 4 for a in range(4)], [0, 2]))
    s3 = symmetric_group(3)
    transposition = 1
    add("coset(S3, conj(t), <t>)",
        coset_quandle(s3, conjugation_automorphism(s3, transposition), [s3.identity, transposition]))
    add("coset(S3, id, {e})", coset_quandle(s3, list(s3.elements()), [s3.identity]))

    for name, rep in representation_catalog():
        if rep.group.size * len(rep.vectors) <= max_size:
            add(f"linear({name})", linear_rack(rep))

    for n in range(1, max_size):
        add(f"unitarize(takasaki({n}))", unitarize(takasaki_quandle(n)))
    logger.debug(f"Built rack catalog with {len(entries)} entries (max size {max_size})")
    return entries
