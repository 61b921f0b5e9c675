"""Unit tests for the racks module."""

import itertools
import unittest

from hypothesis import given, settings, strategies as st

from scripts.rackforge.constructors import conjugation_quandle, rack_catalog, takasaki_quandle, trivial_quandle
from scripts.rackforge.errors import InvalidTableError, NotBijectiveError, NotDistributiveError
from scripts.rackforge.groups import center, cyclic_group, group_by_name
from scripts.rackforge.racks import (
    ElementSet,
    find_rack_violation,
    fixed_points,
    is_involutive,
    is_left_distributive,
    is_unital,
    left_divide,
    product_rack,
    right_translation,
    stabilizers,
    subrack_generated,
    units,
    unitarize,
    validate_rack,
)
from tests.oracles import oracle_axioms

R3_TABLE = [[0, 2, 1], [2, 1, 0], [1, 0, 2]]


SMALL_CATALOG_TABLES = [entry.rack.table for entry in rack_catalog(5) if entry.rack.size >= 2]


def random_tables(max_size=5):
    return st.integers(min_value=1, max_value=max_size).flatmap(
        lambda n: st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n), min_size=n, max_size=n))


def _swap_in_column(table, x, y1, y2):
    rows = [list(row) for row in table]
    rows[y1][x], rows[y2][x] = rows[y2][x], rows[y1][x]
    return rows


def swapped_catalog_tables():
    """Catalog racks with two entries of one column exchanged; columns stay bijective."""
    return st.sampled_from(SMALL_CATALOG_TABLES).flatmap(
        lambda t: st.tuples(st.integers(0, len(t) - 1), st.integers(0, len(t) - 1),
                            st.integers(0, len(t) - 1)).map(lambda c: _swap_in_column(t, *c)))


def first_distributivity_failure(table):
    n = len(table)
    for x, y, z in itertools.product(range(n), repeat=3):
        if table[table[x][y]][z] != table[table[x][z]][table[y][z]]:
            return x, y, z
    return None


def bijective_column_tables(n):
    """Every n x n table whose columns are permutations."""
    for columns in itertools.product(itertools.permutations(range(n)), repeat=n):
        yield [[columns[x][y] for x in range(n)] for y in range(n)]


class TestValidateRack(unittest.TestCase):
    """Tests for validate_rack and find_rack_violation."""

    def test_takasaki_three(self):
        """R3 is an involutive quandle with no units."""
        rack = validate_rack(R3_TABLE)
        self.assertTrue(rack.is_quandle)
        self.assertEqual(rack.size, 3)
        self.assertTrue(is_involutive(rack))
        self.assertFalse(is_unital(rack))

    def test_empty_table_rejected(self):
        """An empty table is not a rack."""
        with self.assertRaises(InvalidTableError):
            validate_rack([])

    def test_ragged_table_rejected(self):
        """Rows must all have length n."""
        with self.assertRaises(InvalidTableError):
            validate_rack([[0, 1], [1]])

    def test_out_of_range_entry(self):
        """Entries outside 0..n-1 are reported with their position."""
        with self.assertRaises(InvalidTableError) as ctx:
            validate_rack([[0, 2], [1, 1]])
        self.assertEqual(ctx.exception.witness, (0, 1))

    def test_non_bijective_column(self):
        """A column that is not a permutation names that column."""
        with self.assertRaises(NotBijectiveError) as ctx:
            validate_rack([[0, 0], [0, 1]])
        self.assertEqual(ctx.exception.witness, (0,))

    def test_non_distributive_witness(self):
        """A bijective but non-distributive table reports a failing triple."""
        table = [[1, 0, 0], [2, 1, 1], [0, 2, 2]]
        violation = find_rack_violation(table)
        self.assertIsInstance(violation, NotDistributiveError)
        x, y, z = violation.witness
        self.assertNotEqual(table[table[x][y]][z], table[table[x][z]][table[y][z]])

    def test_rack_that_is_not_a_quandle(self):
        """A cyclic shift ``x ◁ y = x + 1`` is a rack but not a quandle."""
        rack = validate_rack([[(x + 1) % 3] * 3 for x in range(3)])
        self.assertFalse(rack.is_quandle)

    def test_catalog_agrees_with_oracle(self):
        """Every catalog table passes both the library check and the oracle."""
        for entry in rack_catalog(8):
            with self.subTest(entry.name):
                self.assertEqual(oracle_axioms(entry.rack.table), (True, entry.rack.is_quandle))

    @settings(max_examples=1000, deadline=None)
    @given(random_tables())
    def test_random_tables_agree_with_oracle(self, table):
        """The vectorised check and the triple loop agree on random tables."""
        is_rack, _ = oracle_axioms(table)
        self.assertEqual(find_rack_violation(table) is None, is_rack)

    @settings(max_examples=1000, deadline=None)
    @given(swapped_catalog_tables())
    def test_swapped_catalog_tables_agree_with_oracle(self, table):
        """Near-racks reach the distributivity check and report its first failing triple."""
        is_rack, _ = oracle_axioms(table)
        violation = find_rack_violation(table)
        self.assertEqual(violation is None, is_rack)
        if violation is not None:
            self.assertIsInstance(violation, NotDistributiveError)
            self.assertEqual(violation.witness, first_distributivity_failure(table))


class TestSpecialElements(unittest.TestCase):
    """Tests for stabilizers, fixed points, units and unitarization."""

    def test_trivial_quandle_all_units(self):
        """Every element of a trivial quandle is a unit."""
        rack = trivial_quandle(4)
        self.assertEqual(units(rack).members, (0, 1, 2, 3))

    def test_units_of_conjugation_quandle_are_center(self):
        """Units of Conj(G) are exactly the center of G."""
        groups = [cyclic_group(n) for n in range(1, 9)]
        groups += [group_by_name(name) for name in ("S3", "S4", "D4", "Q8")]
        for group in groups:
            with self.subTest(group.name):
                self.assertEqual(units(conjugation_quandle(group)).members, center(group))

    def test_cyclic_conjugation_quandles_are_all_units(self):
        """Conj(Z/n) is trivial, so every element is a unit."""
        for n in range(1, 9):
            with self.subTest(n=n):
                self.assertEqual(units(conjugation_quandle(cyclic_group(n))).members, tuple(range(n)))

    def test_units_fix_each_other(self):
        """Any two units satisfy ``u ◁ v == u``."""
        for entry in rack_catalog(8):
            with self.subTest(entry.name):
                table = entry.rack.table
                members = units(entry.rack).members
                for u in members:
                    for v in members:
                        self.assertEqual(table[u][v], u)
                        self.assertEqual(table[v][u], v)

    def test_units_of_unitarized_catalog_fix_each_other(self):
        """The adjoined unit and any old units still fix each other."""
        for entry in rack_catalog(5):
            with self.subTest(entry.name):
                plus = unitarize(entry.rack)
                members = units(plus).members
                self.assertIn(entry.rack.size, members)
                for u in members:
                    for v in members:
                        self.assertEqual(plus.table[u][v], u)

    def test_unitarize_adds_one_unit(self):
        """X+ has a single unit, the new last element, for a unit-free X."""
        plus = unitarize(takasaki_quandle(3))
        self.assertEqual(plus.size, 4)
        self.assertEqual(units(plus).members, (3,))
        self.assertEqual(stabilizers(plus).members, (3,))
        self.assertEqual(fixed_points(plus).members, (3,))

    def test_unitarize_keeps_original_table(self):
        """The original operation is unchanged on the old elements."""
        plus = unitarize(takasaki_quandle(5))
        for x in range(5):
            self.assertEqual(plus.table[x][:5], takasaki_quandle(5).table[x])

    def test_left_divide(self):
        """``left_divide(y, x) ◁ x == y``."""
        rack = takasaki_quandle(5)
        for x in rack.elements():
            for y in rack.elements():
                self.assertEqual(rack.table[left_divide(rack, y, x)][x], y)

    def test_right_translation_is_column(self):
        """R_x lists the column of x."""
        rack = validate_rack(R3_TABLE)
        self.assertEqual(right_translation(rack, 1), (2, 1, 0))


class TestStructure(unittest.TestCase):
    """Tests for subracks, products and distributivity variants."""

    def test_subrack_generated(self):
        """Two elements of R3 generate everything; one generates itself."""
        rack = takasaki_quandle(3)
        self.assertEqual(subrack_generated(rack, [0]).members, (0,))
        self.assertTrue(subrack_generated(rack, [0, 1]).is_whole())

    def test_product_rack(self):
        """The product of two quandles is a quandle of the product size."""
        product = product_rack(takasaki_quandle(3), trivial_quandle(2))
        self.assertEqual(product.size, 6)
        self.assertTrue(product.is_quandle)
        self.assertEqual(product.table[1][2], takasaki_quandle(3).table[0][1] * 2 + 1)

    def test_trivial_quandle_left_distributive(self):
        """Trivial quandles are distributive on both sides."""
        self.assertTrue(is_left_distributive(trivial_quandle(3)))

    def test_takasaki_left_distributive(self):
        """``2y - x`` is distributive on both sides."""
        self.assertTrue(is_left_distributive(takasaki_quandle(5)))

    def test_shift_rack_not_left_distributive(self):
        """``x ◁ y = x + 1`` is right but not left distributive."""
        self.assertFalse(is_left_distributive(validate_rack([[(x + 1) % 3] * 3 for x in range(3)])))

    def test_two_sided_distributive_racks_are_quandles(self):
        """Every table of order at most 3 that is distributive on both sides has ``x ◁ x == x``."""
        found = 0
        for n in (1, 2, 3):
            for table in bijective_column_tables(n):
                if find_rack_violation(table) is not None:
                    continue
                rack = validate_rack(table)
                if is_left_distributive(rack):
                    found += 1
                    self.assertTrue(rack.is_quandle, table)
        self.assertGreaterEqual(found, 4)

    def test_two_sided_distributive_catalog_racks_are_quandles(self):
        """Catalog racks that also distribute on the left are idempotent."""
        for entry in rack_catalog(8):
            if is_left_distributive(entry.rack):
                with self.subTest(entry.name):
                    self.assertTrue(entry.rack.is_quandle)

    @settings(max_examples=300, deadline=None)
    @given(swapped_catalog_tables())
    def test_two_sided_distributive_swaps_are_quandles(self, table):
        """Racks near the catalog that distribute on the left are idempotent."""
        if find_rack_violation(table) is None:
            rack = validate_rack(table)
            if is_left_distributive(rack):
                self.assertTrue(rack.is_quandle)

    def test_element_set(self):
        """ElementSet sorts, deduplicates and bounds its members."""
        rack = takasaki_quandle(3)
        subset = ElementSet.of(rack, [2, 0, 2])
        self.assertEqual(subset.members, (0, 2))
        self.assertIn(2, subset)
        self.assertNotIn(1, subset)
        with self.assertRaises(ValueError):
            ElementSet.of(rack, [3])


if __name__ == "__main__":
    unittest.main()
