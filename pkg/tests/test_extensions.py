"""Unit tests for central extensions, equivalence and the Baer sum."""

import unittest

from scripts.rackforge.constructors import takasaki_quandle, trivial_quandle
from scripts.rackforge.errors import (
    Axiom1ViolatedError,
    Axiom2ViolatedError,
    ModuleMismatchError,
    NotAHomomorphismError,
    NotAnActionError,
    NotDistributiveError,
    NotPrincipalError,
    NotSurjectiveError,
    ProjectionNotMorphismError,
    SearchBudgetExceededError,
)
from scripts.rackforge.extensions import (
    baer_sum,
    check_baer_sum_representatives,
    coboundary,
    cocycle_extension,
    ext_morphism,
    extension_cocycle_violation,
    find_equivalence,
    is_rack_action,
    is_trivial,
    opposite,
    self_action,
    semidirect_action,
    trivial_action,
    trivial_extension,
    validate_extension,
    verify_opposite_trivializes,
)
from scripts.rackforge.rackmodules import FinAbGroup, alexander_module, constant_module, identity_hom, trivial_module
from tests.oracles import oracle_equivalence

R3 = takasaki_quandle(3)


def _ones(n):
    return [[1] * n for _ in range(n)]


def _oracle(first, second):
    return oracle_equivalence(first.total.table, first.proj, first.action,
                              second.total.table, second.proj, second.action)


class TestExtensionAxioms(unittest.TestCase):
    """Tests for validate_extension."""

    def setUp(self):
        self.module = trivial_module(R3, FinAbGroup.of(3))
        self.ext = trivial_extension(self.module)

    def test_trivial_extension(self):
        """``A x| X`` is an extension with the additive action."""
        self.assertEqual(self.ext.size, 9)
        self.assertEqual(self.ext.section(), (0, 3, 6))
        self.assertEqual(self.ext.proj, (0, 0, 0, 1, 1, 1, 2, 2, 2))

    def test_trivialize_round_trip(self):
        """``detrivialize`` inverts ``trivialize``."""
        for e, (a, x) in enumerate(self.ext.trivialize()):
            self.assertEqual(self.ext.detrivialize(a, x), e)

    def test_transporter(self):
        """``e.transporter(e, f) == f`` inside a fiber."""
        for fiber in self.ext.fibers:
            for e in fiber:
                for f in fiber:
                    self.assertEqual(self.ext.act(e, self.ext.transporter(e, f)), f)
        with self.assertRaises(ValueError):
            self.ext.transporter(0, 3)

    def test_projection_not_morphism(self):
        """Moving one element to another fiber breaks the projection."""
        proj = list(self.ext.proj)
        proj[0] = 1
        with self.assertRaises(ProjectionNotMorphismError):
            validate_extension(self.ext.total, self.module, proj, self.ext.action)

    def test_not_surjective(self):
        """A total rack over a single point misses the rest of the base."""
        module = trivial_module(R3, FinAbGroup.of(2))
        with self.assertRaises(NotSurjectiveError) as ctx:
            validate_extension(trivial_quandle(2), module, [0, 0], [[0, 1], [1, 0]])
        self.assertEqual(ctx.exception.witness, (1,))

    def test_zero_must_act_trivially(self):
        """``e.0 == e``."""
        action = [list(row) for row in self.ext.action]
        action[0] = [1, 0, 2]
        with self.assertRaises(NotAnActionError):
            validate_extension(self.ext.total, self.module, self.ext.proj, action)

    def test_action_must_be_principal(self):
        """A constant action is an action but not free."""
        action = [[e] * 3 for e in range(9)]
        with self.assertRaises(NotPrincipalError):
            validate_extension(self.ext.total, self.module, self.ext.proj, action)

    def test_axiom_1(self):
        """eta = 2 does not match the trivial total rack."""
        module = alexander_module(R3, FinAbGroup.of(3), 2)
        with self.assertRaises(Axiom1ViolatedError) as ctx:
            validate_extension(self.ext.total, module, self.ext.proj, self.ext.action)
        self.assertEqual(ctx.exception.witness, (0, 1, 0))

    def test_axiom_2(self):
        """tau = 1 does not match the trivial total rack."""
        group = FinAbGroup.of(3)
        module = constant_module(R3, group, identity_hom(group), identity_hom(group))
        with self.assertRaises(Axiom2ViolatedError) as ctx:
            validate_extension(self.ext.total, module, self.ext.proj, self.ext.action)
        self.assertEqual(ctx.exception.witness, (0, 0, 1))


class TestCocycles(unittest.TestCase):
    """Tests for cocycle extensions and their classes."""

    def setUp(self):
        self.z2 = trivial_module(R3, FinAbGroup.of(2))
        self.twisted = cocycle_extension(self.z2, _ones(3))
        self.alexander = alexander_module(R3, FinAbGroup.of(5), 2)

    def test_constant_cocycle_is_non_trivial(self):
        """theta = 1 over trivial Z2 gives an extension that does not split."""
        self.assertIsNone(extension_cocycle_violation(self.z2, _ones(3)))
        self.assertFalse(is_trivial(self.twisted))
        self.assertFalse(_oracle(self.twisted, trivial_extension(self.z2)))

    def test_non_cocycle_rejected(self):
        """A single nonzero value breaks the cocycle condition and distributivity."""
        theta = [[0] * 3 for _ in range(3)]
        theta[0][1] = 1
        self.assertIsNotNone(extension_cocycle_violation(self.alexander, theta))
        with self.assertRaises(NotDistributiveError):
            cocycle_extension(self.alexander, theta)

    def test_coboundaries_are_trivial(self):
        """Every coboundary extension is equivalent to the trivial one."""
        for f in ([1, 0, 0], [0, 2, 4], [3, 3, 1]):
            with self.subTest(f=f):
                theta = coboundary(self.alexander, f)
                self.assertIsNone(extension_cocycle_violation(self.alexander, theta))
                ext = cocycle_extension(self.alexander, theta)
                equivalence = find_equivalence(ext, trivial_extension(self.alexander))
                self.assertIsNotNone(equivalence)
                self.assertEqual(sorted(equivalence.images), list(range(15)))

    def test_equivalence_matches_oracle(self):
        """Equivalence over Z2 agrees with the brute-force search."""
        trivial = trivial_extension(self.z2)
        for first in (trivial, self.twisted):
            for second in (trivial, self.twisted):
                self.assertEqual(find_equivalence(first, second) is not None, _oracle(first, second))

    def test_constant_classes_over_z3_match_oracle(self):
        """Search over every pair of constant cocycles mod 3 agrees with brute force.

        For R3 the pair ``(0, 1)`` has product 2, the last fiber chosen, so
        it is checked only once the whole section is fixed.
        """
        z3 = trivial_module(R3, FinAbGroup.of(3))
        exts = [cocycle_extension(z3, [[c] * 3 for _ in range(3)]) for c in range(3)]
        for i, first in enumerate(exts):
            for j, second in enumerate(exts):
                with self.subTest(first=i, second=j):
                    found = find_equivalence(first, second)
                    self.assertEqual(found is not None, _oracle(first, second))
                    self.assertEqual(found is not None, i == j)
                    if found is not None:
                        ext_morphism(first, second, found.images)

    def test_module_mismatch(self):
        """Extensions by different modules cannot be compared."""
        other = trivial_extension(trivial_module(R3, FinAbGroup.of(3)))
        with self.assertRaises(ModuleMismatchError):
            find_equivalence(self.twisted, other)
        with self.assertRaises(ModuleMismatchError):
            baer_sum(self.twisted, other)

    def test_equivalence_budget(self):
        """Eight section choices exceed a budget of one."""
        with self.assertRaises(SearchBudgetExceededError):
            find_equivalence(self.twisted, self.twisted, budget=1)

    def test_identity_is_not_a_morphism_between_classes(self):
        """The identity map does not carry the trivial extension onto the twisted one."""
        with self.assertRaises(NotAHomomorphismError):
            ext_morphism(trivial_extension(self.z2), self.twisted, list(range(6)))


class TestBaerSum(unittest.TestCase):
    """Tests for the Baer sum and opposite extensions."""

    def setUp(self):
        self.z2 = trivial_module(R3, FinAbGroup.of(2))
        self.trivial = trivial_extension(self.z2)
        self.twisted = cocycle_extension(self.z2, _ones(3))
        self.alexander = alexander_module(R3, FinAbGroup.of(5), 2)

    def test_trivial_is_identity(self):
        """Adding the trivial extension keeps the class."""
        for ext in (self.trivial, self.twisted):
            self.assertTrue(_oracle(baer_sum(ext, self.trivial), ext))
            self.assertTrue(_oracle(baer_sum(self.trivial, ext), ext))

    def test_twisted_has_order_two(self):
        """theta + theta = 0 over Z2."""
        summed = baer_sum(self.twisted, self.twisted)
        self.assertTrue(_oracle(summed, self.trivial))
        self.assertTrue(is_trivial(summed))

    def test_sum_is_commutative(self):
        """Swapping summands gives an equivalent extension."""
        self.assertTrue(_oracle(baer_sum(self.trivial, self.twisted), baer_sum(self.twisted, self.trivial)))

    def test_representatives(self):
        """The sum does not depend on representatives."""
        for first in (self.trivial, self.twisted):
            for second in (self.trivial, self.twisted):
                self.assertTrue(check_baer_sum_representatives(first, second))
        ext = cocycle_extension(self.alexander, coboundary(self.alexander, [1, 0, 0]))
        self.assertTrue(check_baer_sum_representatives(ext, trivial_extension(self.alexander)))

    def test_opposite_trivializes(self):
        """``E + E^op`` is trivial through the explicit maps."""
        for ext in (self.trivial, self.twisted,
                    cocycle_extension(self.alexander, coboundary(self.alexander, [0, 2, 4]))):
            with self.subTest(size=ext.size):
                result = verify_opposite_trivializes(ext)
                self.assertTrue(result, result.check)
                self.assertEqual(len(result.psi), ext.size)
                self.assertEqual(len(result.phi), ext.size)

    def test_opposite_negates_action(self):
        """``e.a`` in the opposite is ``e.(-a)`` in the original."""
        ext = trivial_extension(self.alexander)
        op = opposite(ext)
        self.assertEqual(op.act(0, 1), ext.act(0, 4))
        self.assertIs(op.total, ext.total)


class TestRackActions(unittest.TestCase):
    """Tests for rack actions on sets."""

    def test_standard_actions(self):
        """Self, trivial and semidirect actions satisfy the action identity."""
        self.assertTrue(is_rack_action(self_action(R3), R3))
        self.assertTrue(is_rack_action(trivial_action(4, R3), R3))
        self.assertTrue(is_rack_action(semidirect_action(alexander_module(R3, FinAbGroup.of(5), 2)), R3))

    def test_broken_action(self):
        """Swapping one entry breaks the identity."""
        self.assertFalse(is_rack_action([[0, 1, 0], [1, 0, 1]], R3))


if __name__ == "__main__":
    unittest.main()
