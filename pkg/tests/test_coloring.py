"""Unit tests for PD parsing and quandle colorings."""

import unittest

from scripts.rackforge.cli import catalog_dir
from scripts.rackforge.coloring import (
    Crossing,
    KnotDiagram,
    coloring_count,
    enumerate_colorings,
    parse_pd,
    torus_link_pd,
    validate_diagram,
)
from scripts.rackforge.constructors import takasaki_quandle, trivial_quandle
from scripts.rackforge.errors import InconsistentDiagramError, NotAQuandleError, ParseError
from scripts.rackforge.racks import validate_rack
from tests.oracles import oracle_colorings

R3 = takasaki_quandle(3)
R5 = takasaki_quandle(5)


def _load(name):
    return parse_pd((catalog_dir() / name).read_text(encoding="utf-8"))


def _oracle_count(diagram, quandle):
    crossings = [(c.over, c.under_in, c.under_out, c.positive) for c in diagram.crossings]
    return oracle_colorings(diagram.arcs, crossings, quandle.table)


class TestParsing(unittest.TestCase):
    """Tests for parse_pd."""

    def test_trefoil(self):
        """The trefoil has three arcs and three crossings of one sign."""
        diagram = _load("trefoil.pd")
        self.assertEqual(diagram.arcs, 3)
        self.assertEqual(len(diagram.crossings), 3)
        self.assertEqual(abs(diagram.writhe()), 3)

    def test_mirror_flips_writhe(self):
        """Mirroring negates every crossing sign."""
        self.assertEqual(_load("trefoil_mirror.pd").writhe(), -_load("trefoil.pd").writhe())

    def test_free_loop(self):
        """``O`` is a crossingless component."""
        self.assertEqual(parse_pd("O"), KnotDiagram.unknot())
        self.assertEqual(parse_pd("# two loops\nO O").arcs, 2)

    def test_wrapper_and_brackets(self):
        """A ``PD[...]`` wrapper with square brackets parses like the bare form."""
        wrapped = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]")
        self.assertEqual(wrapped, _load("trefoil.pd"))

    def test_kink(self):
        """A single kink has one arc crossing itself."""
        diagram = _load("unknot_kink.pd")
        self.assertEqual(diagram.arcs, 1)
        self.assertEqual(diagram.crossings, (Crossing(0, 0, 0, True),))

    def test_parse_errors(self):
        """Malformed text reports a character offset."""
        with self.assertRaises(ParseError) as ctx:
            parse_pd("Y(1,2,3,4)")
        self.assertEqual(ctx.exception.position, 0)
        with self.assertRaises(ParseError) as ctx:
            parse_pd("X(1,2,3)")
        self.assertEqual(ctx.exception.position, 2)
        with self.assertRaises(ParseError):
            parse_pd("# nothing here\n")

    def test_unmatched_labels(self):
        """Each edge label must appear exactly twice."""
        with self.assertRaises(InconsistentDiagramError):
            parse_pd("X(1,2,3,4)")

    def test_validate_diagram(self):
        """Arcs must exist and each arc starts at one crossing at most."""
        with self.assertRaises(InconsistentDiagramError):
            validate_diagram(0, [])
        with self.assertRaises(InconsistentDiagramError):
            validate_diagram(2, [Crossing(0, 1, 2, True)])
        with self.assertRaises(InconsistentDiagramError):
            validate_diagram(2, [Crossing(0, 0, 1, True), Crossing(0, 0, 1, False)])

    def test_torus_codes_match_catalog(self):
        """Generated torus codes equal the bundled files."""
        for n in range(2, 7):
            with self.subTest(n=n):
                text = (catalog_dir() / f"torus_2_{n}.pd").read_text(encoding="utf-8")
                body = " ".join(line for line in text.splitlines() if not line.startswith("#"))
                self.assertEqual(torus_link_pd(n), body.strip())
        with self.assertRaises(ValueError):
            torus_link_pd(0)


class TestColorings(unittest.TestCase):
    """Tests for coloring enumeration."""

    def test_unknot(self):
        """The unknot is colored by any single element."""
        self.assertEqual(enumerate_colorings(KnotDiagram.unknot(), R3), [(0,), (1,), (2,)])

    def test_trefoil_variants(self):
        """Mirror, relabelled and kinked trefoils all have nine R3-colorings."""
        for name in ("trefoil.pd", "trefoil_mirror.pd", "trefoil_shifted.pd", "trefoil_kink.pd"):
            with self.subTest(name):
                self.assertEqual(coloring_count(_load(name), R3), 9)

    def test_trefoil_by_r5(self):
        """Only the constant colorings survive mod 5."""
        self.assertEqual(coloring_count(_load("trefoil.pd"), R5), 5)

    def test_figure_eight(self):
        """The figure-eight knot is colored nontrivially by R5 but not by R3."""
        diagram = _load("figure_eight.pd")
        self.assertEqual(coloring_count(diagram, R5), 25)
        self.assertEqual(coloring_count(diagram, R3), 3)

    def test_unknot_kink(self):
        """A kink does not change the count."""
        self.assertEqual(coloring_count(_load("unknot_kink.pd"), R5), 5)

    def test_colorings_satisfy_crossings(self):
        """Every listed coloring satisfies the crossing relations."""
        diagram = _load("figure_eight.pd")
        for colors in enumerate_colorings(diagram, R5):
            for c in diagram.crossings:
                over, cin, cout = colors[c.over], colors[c.under_in], colors[c.under_out]
                if c.positive:
                    self.assertEqual(R5.table[cin][over], cout)
                else:
                    self.assertEqual(R5.table[cout][over], cin)

    def test_torus_links(self):
        """T(2, n) has nine R3-colorings when 3 divides n and three otherwise."""
        for n in range(1, 10):
            with self.subTest(n=n):
                expected = 9 if n % 3 == 0 else 3
                self.assertEqual(coloring_count(parse_pd(torus_link_pd(n)), R3), expected)

    def test_components_by_trivial_quandle(self):
        """Trivial quandles count components."""
        trivial = trivial_quandle(2)
        self.assertEqual(coloring_count(parse_pd(torus_link_pd(5)), trivial), 2)
        self.assertEqual(coloring_count(parse_pd(torus_link_pd(4)), trivial), 4)

    def test_against_oracle(self):
        """Propagation agrees with brute force on every catalog diagram."""
        names = ["trefoil.pd", "trefoil_mirror.pd", "trefoil_kink.pd", "figure_eight.pd",
                 "unknot_kink.pd"] + [f"torus_2_{n}.pd" for n in range(2, 7)]
        for name in names:
            diagram = _load(name)
            for quandle in (R3, R5, trivial_quandle(3)):
                with self.subTest(name=name, size=quandle.size):
                    self.assertEqual(coloring_count(diagram, quandle), _oracle_count(diagram, quandle))

    def test_rack_refused(self):
        """Colorings need a quandle."""
        shift = validate_rack([[(x + 1) % 3] * 3 for x in range(3)])
        with self.assertRaises(NotAQuandleError):
            enumerate_colorings(_load("trefoil.pd"), shift)


if __name__ == "__main__":
    unittest.main()
