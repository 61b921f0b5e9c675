"""Unit tests for the floating-point sphere quandles."""

import unittest

import numpy as np

from scripts.rackforge.constants import COMPOSED_TOLERANCE
from scripts.rackforge.errors import NotUnitError
from scripts.rackforge.numeric import (
    UnitVector,
    broken_sphere_op,
    canonical_sign,
    check_axioms_numeric,
    exponential_homomorphism_residual,
    projective_op,
    projective_sign_residual,
    reflect,
    scaled_identity_residual,
    scaled_op,
    sphere_op,
    sphere_sampler,
    trivial_op,
)

TRIALS = 2000


class TestUnitVector(unittest.TestCase):
    """Tests for UnitVector and sphere_op."""

    def test_norm_checked(self):
        """Vectors off the sphere are refused."""
        with self.assertRaises(NotUnitError):
            UnitVector.of([3.0, 4.0])
        with self.assertRaises(NotUnitError):
            UnitVector.of([[1.0, 0.0]])
        self.assertEqual(UnitVector.of([0.6, 0.8]).dim, 2)

    def test_reflection(self):
        """``x ◁ x == x`` and ``(x ◁ y) ◁ y == x``."""
        x = UnitVector.of([0.6, 0.8, 0.0])
        y = UnitVector.of([0.0, 0.0, 1.0])
        self.assertTrue(sphere_op(x, x).isclose(x))
        self.assertTrue(sphere_op(sphere_op(x, y), y).isclose(x))
        self.assertTrue(sphere_op(x, y).isclose(UnitVector.of([-0.6, -0.8, 0.0])))

    def test_dimension_mismatch(self):
        """Points must live in the same space."""
        with self.assertRaises(ValueError):
            sphere_op(UnitVector.of([1.0, 0.0]), UnitVector.of([1.0, 0.0, 0.0]))


class TestAxiomHarness(unittest.TestCase):
    """Tests for the randomised axiom checks."""

    def test_sphere_quandle_all_dimensions(self):
        """The reflection passes every axiom on S^1 through S^7."""
        for dim in range(2, 9):
            with self.subTest(dim=dim):
                report = check_axioms_numeric(reflect, sphere_sampler(dim, seed=dim), TRIALS)
                self.assertTrue(report.passed, report.as_dict())

    def test_broken_operation_fails(self):
        """Dropping the factor 2 breaks distributivity by a wide margin."""
        report = check_axioms_numeric(broken_sphere_op, sphere_sampler(3), TRIALS)
        self.assertFalse(report.passed)
        self.assertGreater(report.distributivity, 1e-3)

    def test_trivial_operation(self):
        """``x ◁ y == x`` passes as well."""
        self.assertTrue(check_axioms_numeric(trivial_op, sphere_sampler(4), TRIALS).passed)

    def test_sampler_is_seeded(self):
        """Equal seeds give equal samples on the unit sphere."""
        first, second = sphere_sampler(5, seed=7)(10), sphere_sampler(5, seed=7)(10)
        np.testing.assert_array_equal(first, second)
        np.testing.assert_allclose(np.linalg.norm(first, axis=1), 1.0)

    def test_report_dict(self):
        """The report serialises every residual and the verdict."""
        report = check_axioms_numeric(reflect, sphere_sampler(2), 10)
        self.assertEqual(set(report.as_dict()),
                         {"trials", "distributivity", "idempotence", "involutivity",
                          "bijectivity", "tolerance", "passed"})
        self.assertEqual(report.tolerance, COMPOSED_TOLERANCE)


class TestVariants(unittest.TestCase):
    """Tests for projective, scaled and exponential variants."""

    def test_canonical_sign(self):
        """The largest coordinate becomes positive."""
        np.testing.assert_allclose(canonical_sign(np.array([-0.2, -0.9])), [0.2, 0.9])
        np.testing.assert_allclose(canonical_sign(np.array([0.5, -0.1])), [0.5, -0.1])

    def test_projective_quandle(self):
        """The operation on ``+-x`` classes is independent of signs and passes the axioms."""
        sampler = sphere_sampler(4, seed=3)
        x, y = sampler(TRIALS), sampler(TRIALS)
        self.assertLess(projective_sign_residual(x, y), COMPOSED_TOLERANCE)
        report = check_axioms_numeric(projective_op, lambda n: canonical_sign(sampler(n)), TRIALS)
        self.assertTrue(report.passed, report.as_dict())

    def test_scaled_formula(self):
        """``lam x ◁ mu y`` matches the reflection formula on scaled vectors."""
        rng = np.random.default_rng(11)
        sampler = sphere_sampler(3, seed=11)
        lam, mu = rng.uniform(0.5, 2.0, TRIALS), rng.uniform(0.5, 2.0, TRIALS)
        self.assertLess(scaled_identity_residual(lam, sampler(TRIALS), mu, sampler(TRIALS)), COMPOSED_TOLERANCE)
        self.assertLess(scaled_identity_residual(1.5, sampler(5), -0.5, sampler(5)), COMPOSED_TOLERANCE)

    def test_unit_scaling_is_reflection(self):
        """With both scales 1 the scaled operation is the sphere operation."""
        sampler = sphere_sampler(3, seed=5)
        x, y = sampler(50), sampler(50)
        np.testing.assert_allclose(scaled_op(1.0, x, 1.0, y), reflect(x, y), atol=1e-12)

    def test_exponential_homomorphism(self):
        """``t -> exp(2 pi i t)`` carries the Takasaki operation on R/Z to the circle."""
        self.assertLess(exponential_homomorphism_residual(TRIALS), COMPOSED_TOLERANCE)


if __name__ == "__main__":
    unittest.main()
