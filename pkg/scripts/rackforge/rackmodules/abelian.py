"""Finite abelian groups as products of cyclic factors, and their homomorphisms.

An element of ``Z/n1 x ... x Z/nk`` is a k-tuple. Elements are numbered in
``itertools.product`` order (first coordinate most significant), which is the
order fibers are laid out in semidirect products and files.
"""

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from math import prod
from typing import Dict, List, Sequence, Tuple

import numpy as np
import sympy

from ..errors import NotAHomomorphismError

logger = logging.getLogger(__name__)

Element = Tuple[int, ...]


@dataclass(frozen=True)
class FinAbGroup:
    """``Z/n1 x ... x Z/nk``; ``factors == ()`` is the trivial group."""

    factors: Tuple[int, ...]

    @classmethod
    def of(cls, *factors: int) -> "FinAbGroup":
        if any(int(n) < 1 for n in factors):
            raise ValueError(f"cyclic factors must be positive, got {factors}")
        return cls(tuple(int(n) for n in factors))

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def order(self) -> int:
        return prod(self.factors)

    @cached_property
    def elements(self) -> List[Element]:
        return list(itertools.product(*(range(n) for n in self.factors)))

    @cached_property
    def _weights(self) -> np.ndarray:
        weights = [prod(self.factors[i + 1:]) for i in range(self.rank)]
        return np.array(weights, dtype=np.int64)

    @cached_property
    def array(self) -> np.ndarray:
        """Elements as an ``order x rank`` integer array."""
        return np.array(self.elements, dtype=np.int64).reshape(self.order, self.rank)

    def index(self, element: Sequence[int]) -> int:
        return int(np.dot(np.asarray(self.normalize(element), dtype=np.int64), self._weights))

    def indices(self, elements: np.ndarray) -> np.ndarray:
        """Vectorised :meth:`index` for an ``m x rank`` array of reduced rows."""
        return elements @ self._weights if self.rank else np.zeros(len(elements), dtype=np.int64)

    def element(self, index: int) -> Element:
        return self.elements[index]

    def normalize(self, element: Sequence[int]) -> Element:
        if len(element) != self.rank:
            raise ValueError(f"element {tuple(element)} has wrong rank for {self}")
        return tuple(int(a) % n for a, n in zip(element, self.factors))

    def zero(self) -> Element:
        return (0,) * self.rank

    def add(self, a: Sequence[int], b: Sequence[int]) -> Element:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.factors))

    def neg(self, a: Sequence[int]) -> Element:
        return tuple((-x) % n for x, n in zip(a, self.factors))

    def sub(self, a: Sequence[int], b: Sequence[int]) -> Element:
        return self.add(a, self.neg(b))

    def scale(self, k: int, a: Sequence[int]) -> Element:
        return tuple((k * x) % n for x, n in zip(a, self.factors))

    def generators(self) -> List[Element]:
        """Standard generators ``e_i``."""
        return [tuple(1 if j == i else 0 for j in range(self.rank)) for i in range(self.rank)]

    def elementary_divisors(self) -> List[int]:
        """Prime powers of the primary decomposition, ascending."""
        divisors = []
        for n in self.factors:
            divisors.extend(p ** e for p, e in sympy.factorint(n).items())
        return sorted(divisors)

    def invariant_factors(self) -> List[int]:
        """``d1 | d2 | ... | dr`` with ``d1 > 1``; empty for the trivial group."""
        by_prime: Dict[int, List[int]] = defaultdict(list)
        for n in self.factors:
            for p, e in sympy.factorint(n).items():
                by_prime[p].append(e)
        length = max((len(exps) for exps in by_prime.values()), default=0)
        factors = [1] * length
        for p, exps in by_prime.items():
            for i, e in enumerate(sorted(exps, reverse=True)):
                factors[length - 1 - i] *= p ** e
        return factors

    def is_isomorphic_to(self, other: "FinAbGroup") -> bool:
        return self.invariant_factors() == other.invariant_factors()

    def __str__(self) -> str:
        if not self.factors:
            return "0"
        return " x ".join(f"Z{n}" for n in self.factors)


@dataclass(frozen=True)
class AbHom:
    """Homomorphism given by the images of the standard generators.

    Build through :func:`ab_hom`, which reduces images and checks the order
    condition ``n_i * f(e_i) == 0``.
    """

    source: FinAbGroup
    target: FinAbGroup
    gen_images: Tuple[Element, ...]

    @cached_property
    def matrix(self) -> np.ndarray:
        return np.array(self.gen_images, dtype=np.int64).reshape(self.source.rank, self.target.rank)

    @cached_property
    def table(self) -> Tuple[int, ...]:
        """Target index of the image of each source element."""
        if not self.target.rank:
            return (0,) * self.source.order
        images = (self.source.array @ self.matrix) % np.array(self.target.factors, dtype=np.int64)
        return tuple(int(i) for i in self.target.indices(images))

    def __call__(self, a: Sequence[int]) -> Element:
        return self.target.element(self.table[self.source.index(a)])

    def apply_index(self, index: int) -> int:
        return self.table[index]


def ab_hom(source: FinAbGroup, target: FinAbGroup, gen_images: Sequence[Sequence[int]]) -> AbHom:
    """Raises NotAHomomorphismError when an image breaks the order condition."""
    if len(gen_images) != source.rank:
        raise NotAHomomorphismError(
            f"need {source.rank} generator images, got {len(gen_images)}")
    images = tuple(target.normalize(image) for image in gen_images)
    for i, (n, image) in enumerate(zip(source.factors, images)):
        if any(target.scale(n, image)):
            raise NotAHomomorphismError(
                f"generator {i} has order dividing {n} but image {image} does not", (i,))
    return AbHom(source, target, images)


def hom_compose(g: AbHom, f: AbHom) -> AbHom:
    """``g after f``."""
    if f.target != g.source:
        raise ValueError(f"cannot compose {f.target} -> ... with {g.source} -> ...")
    return AbHom(f.source, g.target, tuple(g(image) for image in f.gen_images))


def hom_add(f: AbHom, g: AbHom) -> AbHom:
    if (f.source, f.target) != (g.source, g.target):
        raise ValueError("cannot add homomorphisms with different source or target")
    return AbHom(f.source, f.target,
                 tuple(f.target.add(a, b) for a, b in zip(f.gen_images, g.gen_images)))


def hom_neg(f: AbHom) -> AbHom:
    return AbHom(f.source, f.target, tuple(f.target.neg(a) for a in f.gen_images))


def hom_sub(f: AbHom, g: AbHom) -> AbHom:
    return hom_add(f, hom_neg(g))


def zero_hom(source: FinAbGroup, target: FinAbGroup) -> AbHom:
    return AbHom(source, target, tuple(target.zero() for _ in range(source.rank)))


def identity_hom(group: FinAbGroup) -> AbHom:
    return AbHom(group, group, tuple(group.generators()))


def scalar_hom(group: FinAbGroup, k: int) -> AbHom:
    """Multiplication by the integer k."""
    return AbHom(group, group, tuple(group.scale(k, e) for e in group.generators()))


def is_isomorphism(f: AbHom) -> bool:
    return f.source.order == f.target.order and len(set(f.table)) == f.target.order
