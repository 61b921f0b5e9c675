"""Unit tests for the rack, module and extension file formats."""

import tempfile
import unittest
from pathlib import Path

from scripts.rackforge.cli import catalog_dir
from scripts.rackforge.constructors import takasaki_quandle
from scripts.rackforge.errors import FileFormatError, ModuleAxiomError, NotBijectiveError, ValidationError
from scripts.rackforge.extensions import cocycle_extension, trivial_extension
from scripts.rackforge.fileio import (
    load_extension,
    load_rack,
    read_extension,
    read_module,
    read_rack,
    save_text,
    write_extension,
    write_module,
    write_rack,
)
from scripts.rackforge.rackmodules import FinAbGroup, alexander_module, trivial_module

R3 = takasaki_quandle(3)


def _catalog_text(name):
    return (catalog_dir() / name).read_text(encoding="utf-8")


class TestCanonicalWriters(unittest.TestCase):
    """Reading then writing a catalog file reproduces it byte for byte."""

    def test_rack_files(self):
        """Rack files round-trip."""
        for name in ("R3.rack", "R5.rack", "trivial2.rack"):
            with self.subTest(name):
                text = _catalog_text(name)
                self.assertEqual(write_rack(read_rack(text).rack), text)

    def test_module_files(self):
        """Module files round-trip."""
        for name in ("R3_trivial_Z2.mod", "R3_alexander_Z5.mod"):
            with self.subTest(name):
                text = _catalog_text(name)
                self.assertEqual(write_module(read_module(text)), text)

    def test_extension_files(self):
        """Extension files round-trip."""
        for name in ("R3_Z2_trivial.ext", "R3_Z2_twisted.ext"):
            with self.subTest(name):
                text = _catalog_text(name)
                self.assertEqual(write_extension(read_extension(text)), text)

    def test_catalog_matches_constructions(self):
        """Bundled files hold what the library builds."""
        z2 = trivial_module(R3, FinAbGroup.of(2))
        self.assertEqual(write_rack(R3), _catalog_text("R3.rack"))
        self.assertEqual(write_module(alexander_module(R3, FinAbGroup.of(5), 2)),
                         _catalog_text("R3_alexander_Z5.mod"))
        self.assertEqual(write_extension(trivial_extension(z2)), _catalog_text("R3_Z2_trivial.ext"))
        self.assertEqual(write_extension(cocycle_extension(z2, [[1] * 3 for _ in range(3)])),
                         _catalog_text("R3_Z2_twisted.ext"))

    def test_labels(self):
        """Labels survive a round trip."""
        text = write_rack(R3, ["a", "b", "c"])
        loaded = read_rack(text)
        self.assertEqual(loaded.labels, ("a", "b", "c"))
        self.assertEqual(write_rack(loaded.rack, loaded.labels), text)

    def test_comments_and_blank_lines(self):
        """Comments and blank lines are ignored."""
        text = "# a comment\nrackforge-rack 1\n\nsize 2  # two points\ntable\n0 0\n1 1\n"
        self.assertEqual(read_rack(text).rack.table, ((0, 0), (1, 1)))


class TestMalformedFiles(unittest.TestCase):
    """Malformed files raise FileFormatError with a line number."""

    def test_header(self):
        """The magic word and version are checked."""
        with self.assertRaises(FileFormatError):
            read_rack("")
        with self.assertRaises(FileFormatError):
            read_rack("rackforge-module 1\nsize 1\ntable\n0\n")
        with self.assertRaises(FileFormatError) as ctx:
            read_rack("rackforge-rack 2\nsize 1\ntable\n0\n")
        self.assertEqual(ctx.exception.position, 1)

    def test_rack_block(self):
        """Sizes, rows and labels must agree."""
        cases = [
            "rackforge-rack 1\nsize x\ntable\n0\n",
            "rackforge-rack 1\nsize 2\ntable\n0 0\n",
            "rackforge-rack 1\nsize 2\ntable\n0 0\n1\n",
            "rackforge-rack 1\nsize 2\ntable\n0 a\n1 1\n",
            "rackforge-rack 1\nsize 2\nlabels a\ntable\n0 0\n1 1\n",
            "rackforge-rack 1\nsize 2\n0 0\n1 1\n",
        ]
        for text in cases:
            with self.subTest(text=text):
                with self.assertRaises(FileFormatError):
                    read_rack(text)

    def test_bad_row_line_number(self):
        """The short row is named by its line."""
        with self.assertRaises(FileFormatError) as ctx:
            read_rack("rackforge-rack 1\nsize 2\ntable\n0 0\n1\n")
        self.assertEqual(ctx.exception.position, 5)

    def test_non_rack_table(self):
        """A well-formed file whose table is not a rack raises a validation error."""
        with self.assertRaises(NotBijectiveError):
            read_rack("rackforge-rack 1\nsize 2\ntable\n0 0\n0 1\n")

    def test_sections(self):
        """Unknown, duplicate and missing sections are refused."""
        text = _catalog_text("R3_trivial_Z2.mod")
        with self.assertRaises(FileFormatError):
            read_module(text.replace("[tau]", "[sigma]"))
        with self.assertRaises(FileFormatError):
            read_module(text + "[tau]\n")
        with self.assertRaises(FileFormatError):
            read_module(text.split("[tau]")[0])

    def test_module_axioms_checked(self):
        """A broken tau is caught on read unless checking is off."""
        text = _catalog_text("R3_alexander_Z5.mod").replace("2 2: 4", "2 2: 3")
        with self.assertRaises(ModuleAxiomError):
            read_module(text)
        self.assertEqual(read_module(text, check=False).tau[2][2].gen_images, ((3,),))

    def test_extension_checked(self):
        """Extension files are validated after parsing."""
        text = _catalog_text("R3_Z2_trivial.ext").replace("[proj]\n0 0 1 1 2 2", "[proj]\n0 0 1 1 2 1")
        with self.assertRaises(ValidationError):
            read_extension(text)


class TestPaths(unittest.TestCase):
    """Tests for loading and saving through the filesystem."""

    def test_save_and_load(self):
        """Saved files load back to the same object."""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "twisted.ext"
            save_text(path, _catalog_text("R3_Z2_twisted.ext"))
            loaded = load_extension(path)
            self.assertEqual(loaded.size, 6)
            rack_path = Path(tmp) / "r3.rack"
            save_text(rack_path, write_rack(R3))
            self.assertEqual(load_rack(rack_path).rack, R3)

    def test_missing_file(self):
        """Missing paths raise OSError."""
        with self.assertRaises(OSError):
            load_rack(Path("/nonexistent/rack.rack"))


if __name__ == "__main__":
    unittest.main()
