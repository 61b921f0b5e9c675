"""Central extensions of a rack by a module, and their arithmetic.

An extension is a rack E with a surjective morphism ``p: E -> X`` and, for
every e, a table ``action[e][a]`` giving ``e.a`` for ``a`` in ``A_p(e)``
(module elements by index). Canonical section: ``s(x)`` is the least element
of the fiber ``E_x``.

Module elements are written additively; ``a^-1`` reads ``-a``.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from math import prod
from typing import Dict, List, Optional, Sequence, Tuple

from .constants import DEFAULT_EQUIVALENCE_BUDGET
from .errors import (
    Axiom1ViolatedError, Axiom2ViolatedError, InvalidTableError, ModuleMismatchError,
    NotAHomomorphismError, NotAnActionError, NotPrincipalError, NotSurjectiveError,
    ProjectionNotMorphismError, SearchBudgetExceededError,
)
from .morphisms import morphism_violation
from .rackmodules import FinAbGroup, RackModule, SemidirectLayout, semidirect_product
from .racks import FiniteRack, validate_rack

logger = logging.getLogger(__name__)

Table = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class CentralExtension:
    """A validated central extension; build through :func:`validate_extension`."""

    total: FiniteRack = field(repr=False)
    module: RackModule = field(repr=False)
    proj: Tuple[int, ...]
    action: Table

    @property
    def base(self) -> FiniteRack:
        return self.module.base

    @property
    def size(self) -> int:
        return self.total.size

    def fiber_group(self, x: int) -> FinAbGroup:
        return self.module.fiber(x)

    @cached_property
    def fibers(self) -> Tuple[Tuple[int, ...], ...]:
        members: List[List[int]] = [[] for _ in range(self.base.size)]
        for e, x in enumerate(self.proj):
            members[x].append(e)
        return tuple(tuple(m) for m in members)

    @cached_property
    def _transporters(self) -> Tuple[Dict[int, int], ...]:
        return tuple({target: a for a, target in enumerate(row)} for row in self.action)

    def act(self, e: int, a: int) -> int:
        """``e.a`` for a module element index ``a`` of ``A_p(e)``."""
        return self.action[e][a]

    def transporter(self, e: int, other: int) -> int:
        """The unique ``a`` with ``other == e.a``."""
        if self.proj[e] != self.proj[other]:
            raise ValueError(f"elements {e} and {other} lie in different fibers")
        return self._transporters[e][other]

    def section(self) -> Tuple[int, ...]:
        """``s(x)``, the least element of each fiber."""
        return tuple(members[0] for members in self.fibers)

    def trivialize(self) -> Tuple[Tuple[int, int], ...]:
        """``e -> (a, x)`` with ``e == s(x).a``."""
        s = self.section()
        return tuple((self.transporter(s[x], e), x) for e, x in enumerate(self.proj))

    def detrivialize(self, a: int, x: int) -> int:
        return self.action[self.section()[x]][a]


def validate_extension(total: FiniteRack, module: RackModule, proj: Sequence[int],
                       action: Sequence[Sequence[int]]) -> CentralExtension:
    """Check every extension axiom and build the extension.

    Raises:
        InvalidTableError: Projection or action tables of the wrong shape.
        ProjectionNotMorphismError: ``p(e ◁ f) != p(e) ◁ p(f)``.
        NotSurjectiveError: Some fiber is empty.
        NotAnActionError: Action leaves the fiber or is not a group action.
        NotPrincipalError: Some ``a -> e.a`` is not a bijection onto the fiber.
        Axiom1ViolatedError: ``(e.a) ◁ f != (e ◁ f).eta(a)``.
        Axiom2ViolatedError: ``e ◁ (f.b) != (e ◁ f).tau(b)``.
    """
    base = module.base
    n = total.size
    if len(proj) != n or any(not 0 <= x < base.size for x in proj):
        raise InvalidTableError("projection must map every total element into the base")
    if len(action) != n:
        raise InvalidTableError(f"need an action row for each of {n} elements")
    for e in range(n):
        if len(action[e]) != module.fiber(proj[e]).order:
            raise InvalidTableError(f"action row of {e} must have one entry per fiber element", (e,))
    proj = tuple(int(x) for x in proj)
    action = tuple(tuple(int(v) for v in row) for row in action)

    witness = morphism_violation(total, base, proj)
    if witness is not None:
        raise ProjectionNotMorphismError(f"p(e<f) != p(e)<p(f) at {witness}", witness)
    hit = set(proj)
    missing = [x for x in base.elements() if x not in hit]
    if missing:
        raise NotSurjectiveError(f"no element over {missing[0]}", (missing[0],))

    for e in range(n):
        fiber = module.fiber(proj[e])
        if action[e][fiber.index(fiber.zero())] != e:
            raise NotAnActionError(f"{e}.0 != {e}", (e,))
        for a, image in enumerate(action[e]):
            if not 0 <= image < n or proj[image] != proj[e]:
                raise NotAnActionError(f"{e}.{a} leaves the fiber", (e, a))
    for e in range(n):
        fiber = module.fiber(proj[e])
        for a in range(fiber.order):
            for b in range(fiber.order):
                ab = fiber.index(fiber.add(fiber.element(a), fiber.element(b)))
                if action[action[e][a]][b] != action[e][ab]:
                    raise NotAnActionError(f"({e}.{a}).{b} != {e}.({a}+{b})", (e, a, b))

    fibers: Dict[int, List[int]] = {}
    for e, x in enumerate(proj):
        fibers.setdefault(x, []).append(e)
    for e in range(n):
        if sorted(action[e]) != fibers[proj[e]]:
            raise NotPrincipalError(f"action on fiber {proj[e]} is not free and transitive at {e}",
                                    (proj[e], e))

    t, eta, tau = total.table, module.eta, module.tau
    for e in range(n):
        x = proj[e]
        for f in range(n):
            y = proj[f]
            ef = t[e][f]
            for a in range(module.fiber(x).order):
                if t[action[e][a]][f] != action[ef][eta[x][y].table[a]]:
                    raise Axiom1ViolatedError(f"(e.a)<f != (e<f).eta(a) at {(e, a, f)}", (e, a, f))
            for b in range(module.fiber(y).order):
                if t[e][action[f][b]] != action[ef][tau[x][y].table[b]]:
                    raise Axiom2ViolatedError(f"e<(f.b) != (e<f).tau(b) at {(e, f, b)}", (e, f, b))
    return CentralExtension(total, module, proj, action)


def _additive_action(module: RackModule, layout: SemidirectLayout) -> Table:
    rows = []
    for a, x in layout.pairs:
        fiber = module.fiber(x)
        rows.append(tuple(layout.index(fiber.index(fiber.add(fiber.element(a), fiber.element(c))), x)
                          for c in range(fiber.order)))
    return tuple(rows)


def trivial_extension(module: RackModule) -> CentralExtension:
    """``A x| X`` with ``(a, x).c = (a + c, x)``."""
    layout = SemidirectLayout(module)
    proj = tuple(x for _, x in layout.pairs)
    return validate_extension(semidirect_product(module), module, proj, _additive_action(module, layout))


# ---------------------------------------------------------------------------
# Cocycle extensions
# ---------------------------------------------------------------------------

def _theta_value(module: RackModule, theta: Sequence[Sequence[int]], x: int, y: int) -> Tuple[int, ...]:
    return module.fiber(module.base.table[x][y]).element(theta[x][y])


def extension_cocycle_violation(module: RackModule,
                                theta: Sequence[Sequence[int]]) -> Optional[Tuple[int, int, int]]:
    """First ``(x, y, z)`` breaking
    ``eta(x◁y,z) th(x,y) + th(x◁y,z) == eta(x◁z,y◁z) th(x,z) + tau(x◁z,y◁z) th(y,z) + th(x◁z,y◁z)``.

    ``theta[x][y]`` indexes an element of ``A_(x◁y)``.
    """
    base, eta, tau = module.base, module.eta, module.tau
    t = base.table
    for x in base.elements():
        for y in base.elements():
            for z in base.elements():
                target = module.fiber(t[t[x][y]][z])
                xy, xz, yz = t[x][y], t[x][z], t[y][z]
                lhs = target.add(eta[xy][z](_theta_value(module, theta, x, y)),
                                 _theta_value(module, theta, xy, z))
                rhs = target.add(
                    target.add(eta[xz][yz](_theta_value(module, theta, x, z)),
                               tau[xz][yz](_theta_value(module, theta, y, z))),
                    _theta_value(module, theta, xz, yz))
                if lhs != rhs:
                    return x, y, z
    return None


def cocycle_extension(module: RackModule, theta: Sequence[Sequence[int]]) -> CentralExtension:
    """``(a, x) ◁ (b, y) == (eta a + tau b + theta(x, y), x ◁ y)`` with additive action.

    Raises:
        NotDistributiveError: If theta breaks the cocycle condition.
    """
    layout = SemidirectLayout(module)
    base, eta, tau = module.base, module.eta, module.tau
    rows = []
    for a, x in layout.pairs:
        row = []
        for b, y in layout.pairs:
            xy = base.table[x][y]
            fiber = module.fiber(xy)
            value = fiber.add(fiber.add(fiber.element(eta[x][y].table[a]), fiber.element(tau[x][y].table[b])),
                              _theta_value(module, theta, x, y))
            row.append(layout.index(fiber.index(value), xy))
        rows.append(row)
    proj = tuple(x for _, x in layout.pairs)
    return validate_extension(validate_rack(rows), module, proj, _additive_action(module, layout))


def coboundary(module: RackModule, f: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
    """``theta_f(x, y) = f(x◁y) - eta(x, y) f(x) - tau(x, y) f(y)``; ``f[x]`` indexes ``A_x``."""
    base, eta, tau = module.base, module.eta, module.tau
    rows = []
    for x in base.elements():
        row = []
        for y in base.elements():
            xy = base.table[x][y]
            fiber = module.fiber(xy)
            value = fiber.sub(fiber.sub(fiber.element(f[xy]), fiber.element(eta[x][y].table[f[x]])),
                              fiber.element(tau[x][y].table[f[y]]))
            row.append(fiber.index(value))
        rows.append(tuple(row))
    return tuple(rows)


# ---------------------------------------------------------------------------
# Morphisms and equivalence
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtMorphism:
    source: CentralExtension = field(repr=False)
    target: CentralExtension = field(repr=False)
    images: Tuple[int, ...]


def ext_morphism(source: CentralExtension, target: CentralExtension, images: Sequence[int]) -> ExtMorphism:
    """Validate a rack morphism over the base that commutes with the action.

    Raises:
        ModuleMismatchError: Different bases or modules.
        NotAHomomorphismError: First failing condition, with witness.
    """
    _require_same_module(source, target)
    images = tuple(int(i) for i in images)
    if len(images) != source.size or any(not 0 <= i < target.size for i in images):
        raise NotAHomomorphismError("image list does not match the extensions")
    witness = morphism_violation(source.total, target.total, images)
    if witness is not None:
        raise NotAHomomorphismError(f"not a rack morphism at {witness}", witness)
    for e in range(source.size):
        if target.proj[images[e]] != source.proj[e]:
            raise NotAHomomorphismError(f"q(phi({e})) != p({e})", (e,))
        for a, moved in enumerate(source.action[e]):
            if images[moved] != target.action[images[e]][a]:
                raise NotAHomomorphismError(f"phi({e}.{a}) != phi({e}).{a}", (e, a))
    return ExtMorphism(source, target, images)


def _require_same_module(first: CentralExtension, second: CentralExtension) -> None:
    if first.module != second.module:
        raise ModuleMismatchError("extensions have different bases or modules")


def equivalence_search_size(ext: CentralExtension) -> int:
    return prod(ext.fiber_group(x).order for x in ext.base.elements())


def find_equivalence(source: CentralExtension, target: CentralExtension,
                     budget: int = DEFAULT_EQUIVALENCE_BUDGET) -> Optional[ExtMorphism]:
    """An equivalence ``source -> target``, or None when none exists.

    Any equivalence is fixed by where it sends the section ``s(x)``:
    equivariance forces ``phi(s(x).a) = phi(s(x)).a``. The search therefore
    ranges over one target element per fiber, and exhausting it proves the
    extensions inequivalent.

    Raises:
        ModuleMismatchError: Different bases or modules.
        SearchBudgetExceededError: If ``prod |A_x|`` exceeds ``budget``.
    """
    _require_same_module(source, target)
    required = equivalence_search_size(source)
    if required > budget:
        raise SearchBudgetExceededError("equivalence search", required, budget)
    base = source.base
    s_source = source.section()
    t_src, t_tgt = source.total.table, target.total.table
    choice: List[int] = [-1] * base.size

    def image(e: int) -> int:
        x = source.proj[e]
        return target.action[choice[x]][source.transporter(s_source[x], e)]

    def consistent(x: int) -> bool:
        # morphism condition on section pairs that x completes
        for left in base.elements():
            for right in base.elements():
                xy = base.table[left][right]
                if x not in (left, right, xy):
                    continue
                if choice[left] < 0 or choice[right] < 0 or choice[xy] < 0:
                    continue
                product = t_src[s_source[left]][s_source[right]]
                if image(product) != t_tgt[choice[left]][choice[right]]:
                    return False
        return True

    def respects_operation() -> bool:
        images = [image(e) for e in range(source.size)]
        return all(images[t_src[e][f]] == t_tgt[images[e]][images[f]]
                   for e in range(source.size) for f in range(source.size))

    def descend(x: int) -> bool:
        if x == base.size:
            return respects_operation()
        for candidate in target.fibers[x]:
            choice[x] = candidate
            if consistent(x) and descend(x + 1):
                return True
        choice[x] = -1
        return False

    if not descend(0):
        logger.debug(f"No equivalence after exhausting {required} section choices")
        return None
    return ext_morphism(source, target, [image(e) for e in range(source.size)])


def is_trivial(ext: CentralExtension, budget: int = DEFAULT_EQUIVALENCE_BUDGET) -> bool:
    return find_equivalence(ext, trivial_extension(ext.module), budget) is not None


# ---------------------------------------------------------------------------
# Baer sum and opposite
# ---------------------------------------------------------------------------

def baer_sum(first: CentralExtension, second: CentralExtension) -> CentralExtension:
    """Classes ``[e, f]`` of pairs over the same point modulo ``(e.a, f) ~ (e, f.a)``.

    Each class has exactly one representative ``(s(x), f)``, so classes are
    numbered by f; the action is ``[e, f].a = [e, f.a]``.

    Raises:
        ModuleMismatchError: Different bases or modules.
    """
    _require_same_module(first, second)
    s = first.section()
    t_first, t_second = first.total.table, second.total.table
    rows = []
    for f1 in range(second.size):
        x = second.proj[f1]
        row = []
        for f2 in range(second.size):
            y = second.proj[f2]
            xy = first.base.table[x][y]
            shift = first.transporter(s[xy], t_first[s[x]][s[y]])
            row.append(second.action[t_second[f1][f2]][shift])
        rows.append(row)
    logger.debug(f"Baer sum of extensions of sizes {first.size} and {second.size}")
    return validate_extension(validate_rack(rows), first.module, second.proj, second.action)


@dataclass(frozen=True)
class SumCheck:
    """Outcome of a representative-independence or trivialisation check."""

    holds: bool
    stage: Optional[str] = None
    witness: Optional[Tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.holds


def check_baer_sum_representatives(first: CentralExtension, second: CentralExtension) -> SumCheck:
    """Recompute ``[e1 ◁ e2, f1 ◁ f2]`` from every representative pair.

    Representatives of ``[s(x), f]`` are ``(s(x).t, f.(-t))``; the witness is
    ``(f1, t1, f2, t2)``.
    """
    _require_same_module(first, second)
    total = baer_sum(first, second)
    s = first.section()
    t_first, t_second = first.total.table, second.total.table

    def normalize(e: int, f: int) -> int:
        return second.action[f][first.transporter(s[first.proj[e]], e)]

    for f1 in range(second.size):
        x = second.proj[f1]
        fx = first.fiber_group(x)
        for f2 in range(second.size):
            y = second.proj[f2]
            fy = first.fiber_group(y)
            expected = total.total.table[f1][f2]
            for t1 in range(fx.order):
                e1 = first.action[s[x]][t1]
                g1 = second.action[f1][fx.index(fx.neg(fx.element(t1)))]
                for t2 in range(fy.order):
                    e2 = first.action[s[y]][t2]
                    g2 = second.action[f2][fy.index(fy.neg(fy.element(t2)))]
                    if normalize(t_first[e1][e2], t_second[g1][g2]) != expected:
                        return SumCheck(False, "representatives", (f1, t1, f2, t2))
    return SumCheck(True)


def opposite(ext: CentralExtension) -> CentralExtension:
    """Same rack with ``e.a`` replaced by ``e.(-a)``."""
    rows = []
    for e, row in enumerate(ext.action):
        fiber = ext.fiber_group(ext.proj[e])
        rows.append(tuple(row[fiber.index(fiber.neg(fiber.element(a)))] for a in range(fiber.order)))
    return validate_extension(ext.total, ext.module, ext.proj, rows)


@dataclass(frozen=True)
class OppositeTrivialization:
    """The explicit maps between ``E + E^op`` and the trivial extension.

    ``psi[f]`` is the image of the class ``[s(x), f]``; ``phi`` is its inverse.
    """

    check: SumCheck
    psi: Tuple[int, ...] = ()
    phi: Tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return bool(self.check)


def verify_opposite_trivializes(ext: CentralExtension) -> OppositeTrivialization:
    """Build ``psi([e, f]) = (a(f, e), p(e))`` and ``phi(a, x) = [s(x), s(x).(-a)]``.

    Checks that psi does not depend on representatives, that both maps are
    morphisms of extensions and that they are mutually inverse.
    """
    module = ext.module
    trivial = trivial_extension(module)
    layout = SemidirectLayout(module)
    summed = baer_sum(ext, opposite(ext))
    s = ext.section()

    def psi_raw(e: int, f: int) -> int:
        x = ext.proj[e]
        return layout.index(ext.transporter(f, e), x)

    for e in range(ext.size):
        fiber = ext.fiber_group(ext.proj[e])
        for f in ext.fibers[ext.proj[e]]:
            for b in range(fiber.order):
                minus_b = fiber.index(fiber.neg(fiber.element(b)))
                if psi_raw(ext.action[e][b], f) != psi_raw(e, ext.action[f][minus_b]):
                    return OppositeTrivialization(SumCheck(False, "psi well-defined", (e, f, b)))

    psi = tuple(psi_raw(s[ext.proj[f]], f) for f in range(ext.size))
    phi = []
    for a, x in layout.pairs:
        fiber = module.fiber(x)
        phi.append(ext.action[s[x]][fiber.index(fiber.neg(fiber.element(a)))])
    phi = tuple(phi)

    for stage, source, target, images in (("psi", summed, trivial, psi), ("phi", trivial, summed, phi)):
        try:
            ext_morphism(source, target, images)
        except NotAHomomorphismError as exc:
            return OppositeTrivialization(SumCheck(False, stage, exc.witness), psi, phi)
    for c in range(summed.size):
        if phi[psi[c]] != c:
            return OppositeTrivialization(SumCheck(False, "phi after psi", (c,)), psi, phi)
    for c in range(trivial.size):
        if psi[phi[c]] != c:
            return OppositeTrivialization(SumCheck(False, "psi after phi", (c,)), psi, phi)
    return OppositeTrivialization(SumCheck(True), psi, phi)


# ---------------------------------------------------------------------------
# Rack actions
# ---------------------------------------------------------------------------

def is_rack_action(action: Sequence[Sequence[int]], rack: FiniteRack) -> bool:
    """``(m.x).y == (m.y).(x◁y)`` for ``action[m][x] = m.x``."""
    t = rack.table
    for row in action:
        for x in rack.elements():
            for y in rack.elements():
                if action[row[x]][y] != action[row[y]][t[x][y]]:
                    return False
    return True


def self_action(rack: FiniteRack) -> Table:
    """X acting on itself by right translation."""
    return rack.table


def trivial_action(size: int, rack: FiniteRack) -> Table:
    return tuple(tuple(m for _ in rack.elements()) for m in range(size))


def semidirect_action(module: RackModule) -> Table:
    """``(a, x).y = (eta(x, y) a, x ◁ y)`` on the pairs of ``A x| X``."""
    layout = SemidirectLayout(module)
    base, eta = module.base, module.eta
    return tuple(tuple(layout.index(eta[x][y].table[a], base.table[x][y]) for y in base.elements())
                 for a, x in layout.pairs)
