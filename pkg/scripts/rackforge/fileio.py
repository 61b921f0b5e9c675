"""Line-oriented text files for racks, modules and extensions.

Every file opens with ``<magic> <version>``. Blank lines and ``#`` comments
are ignored. A rack block is::

    size 3
    labels a b c        (optional)
    table
    0 2 1
    2 1 0
    1 0 2

Module and extension files are split into ``[section]`` blocks: ``[base]``
(a rack block), ``[fibers]`` (``x: n1 n2 ...``), ``[eta]`` and ``[tau]``
(``x y: img; img; ...``, one image per source generator) and, for
extensions, ``[total]``, ``[proj]`` and ``[action]`` (``e: e.0 e.1 ...``).
Writers are canonical: loading a written file and writing it again gives the
same bytes.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .constants import EXTENSION_MAGIC, FORMAT_VERSION, MODULE_MAGIC, RACK_MAGIC
from .errors import FileFormatError, ModuleAxiomError
from .extensions import CentralExtension, validate_extension
from .rackmodules import (
    AbHom, CheckMode, FinAbGroup, RackBundle, RackModule, ab_hom, validate_module
)
from .racks import FiniteRack, validate_rack

logger = logging.getLogger(__name__)

Line = Tuple[int, str]


@dataclass(frozen=True)
class RackFile:
    rack: FiniteRack
    labels: Optional[Tuple[str, ...]] = None


# ---------------------------------------------------------------------------
# Reading helpers
# ---------------------------------------------------------------------------

def _content_lines(text: str) -> List[Line]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append((number, stripped))
    return lines


def _check_header(lines: List[Line], magic: str) -> List[Line]:
    if not lines:
        raise FileFormatError("file is empty", 1)
    number, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != magic:
        raise FileFormatError(f"expected header '{magic} {FORMAT_VERSION}'", number)
    if parts[1] != str(FORMAT_VERSION):
        raise FileFormatError(f"unsupported format version {parts[1]}", number)
    return lines[1:]


def _ints(line: Line, text: str) -> List[int]:
    try:
        return [int(v) for v in text.split()]
    except ValueError:
        raise FileFormatError(f"expected integers, got {text!r}", line[0]) from None


def _sections(lines: List[Line], expected: Sequence[str]) -> Dict[str, List[Line]]:
    sections: Dict[str, List[Line]] = {}
    current: Optional[str] = None
    for number, text in lines:
        if text.startswith("[") and text.endswith("]"):
            current = text[1:-1].strip()
            if current not in expected:
                raise FileFormatError(f"unknown section [{current}]", number)
            if current in sections:
                raise FileFormatError(f"duplicate section [{current}]", number)
            sections[current] = []
        elif current is None:
            raise FileFormatError("content before the first section", number)
        else:
            sections[current].append((number, text))
    for name in expected:
        if name not in sections:
            raise FileFormatError(f"missing section [{name}]", lines[-1][0] if lines else 1)
    return sections


def _keyword(line: Line, word: str) -> str:
    number, text = line
    head, _, rest = text.partition(" ")
    if head != word:
        raise FileFormatError(f"expected '{word}'", number)
    return rest.strip()


def _parse_rack_block(lines: List[Line], end_line: int) -> RackFile:
    if not lines:
        raise FileFormatError("missing rack block", end_line)
    size_text = _keyword(lines[0], "size")
    if not size_text.isdigit() or int(size_text) < 1:
        raise FileFormatError(f"bad size {size_text!r}", lines[0][0])
    n = int(size_text)
    cursor = 1
    labels = None
    if cursor < len(lines) and lines[cursor][1].split()[0] == "labels":
        labels = tuple(_keyword(lines[cursor], "labels").split())
        if len(labels) != n or len(set(labels)) != n:
            raise FileFormatError(f"need {n} distinct labels", lines[cursor][0])
        cursor += 1
    if cursor >= len(lines) or lines[cursor][1] != "table":
        raise FileFormatError("expected 'table'", lines[cursor][0] if cursor < len(lines) else end_line)
    rows = lines[cursor + 1:]
    if len(rows) != n:
        raise FileFormatError(f"table needs {n} rows, got {len(rows)}",
                              rows[-1][0] if rows else lines[cursor][0])
    table = []
    for row in rows:
        values = _ints(row, row[1])
        if len(values) != n:
            raise FileFormatError(f"row has {len(values)} entries, expected {n}", row[0])
        table.append(values)
    return RackFile(validate_rack(table), labels)


def _parse_fibers(lines: List[Line], n: int) -> Tuple[FinAbGroup, ...]:
    fibers: Dict[int, FinAbGroup] = {}
    for line in lines:
        head, colon, rest = line[1].partition(":")
        if not colon or not head.strip().isdigit():
            raise FileFormatError("expected 'x: factors'", line[0])
        x = int(head)
        if not 0 <= x < n or x in fibers:
            raise FileFormatError(f"bad or repeated fiber index {x}", line[0])
        factors = _ints(line, rest)
        if any(f < 1 for f in factors):
            raise FileFormatError("cyclic factors must be positive", line[0])
        fibers[x] = FinAbGroup.of(*factors)
    if len(fibers) != n:
        raise FileFormatError(f"need fibers for all {n} base elements", lines[-1][0] if lines else 1)
    return tuple(fibers[x] for x in range(n))


def _parse_homs(lines: List[Line], base: FiniteRack, fibers: Tuple[FinAbGroup, ...],
                source_of_x: bool) -> Tuple[Tuple[AbHom, ...], ...]:
    n = base.size
    homs: Dict[Tuple[int, int], AbHom] = {}
    for line in lines:
        head, colon, rest = line[1].partition(":")
        key = _ints(line, head)
        if not colon or len(key) != 2 or not all(0 <= v < n for v in key):
            raise FileFormatError("expected 'x y: images'", line[0])
        x, y = key
        if (x, y) in homs:
            raise FileFormatError(f"repeated entry {x} {y}", line[0])
        source = fibers[x] if source_of_x else fibers[y]
        target = fibers[base.table[x][y]]
        rest = rest.strip()
        if source.rank == 0:
            if rest:
                raise FileFormatError("trivial source takes no images", line[0])
            parts: List[str] = []
        else:
            parts = rest.split(";")
            if len(parts) != source.rank:
                raise FileFormatError(f"need {source.rank} generator images", line[0])
        images = [_ints(line, part) for part in parts]
        if any(len(image) != target.rank for image in images):
            raise FileFormatError(f"images must have {target.rank} coordinates", line[0])
        homs[(x, y)] = ab_hom(source, target, images)
    if len(homs) != n * n:
        raise FileFormatError(f"need all {n * n} entries", lines[-1][0] if lines else 1)
    return tuple(tuple(homs[(x, y)] for y in range(n)) for x in range(n))


def _parse_module(sections: Dict[str, List[Line]], end_line: int) -> Tuple[RackFile, RackModule]:
    base = _parse_rack_block(sections["base"], end_line)
    fibers = _parse_fibers(sections["fibers"], base.rack.size)
    eta = _parse_homs(sections["eta"], base.rack, fibers, source_of_x=True)
    tau = _parse_homs(sections["tau"], base.rack, fibers, source_of_x=False)
    return base, RackModule(RackBundle(base.rack, fibers, eta), tau)


# ---------------------------------------------------------------------------
# Public readers
# ---------------------------------------------------------------------------

def read_rack(text: str) -> RackFile:
    """Raises FileFormatError on malformed text, ValidationError on a non-rack."""
    lines = _check_header(_content_lines(text), RACK_MAGIC)
    return _parse_rack_block(lines, len(text.splitlines()))


def read_module(text: str, check: bool = True) -> RackModule:
    """Parse a module file; with ``check`` the module axioms must hold.

    Raises:
        FileFormatError: Malformed text.
        ModuleAxiomError: ``check`` is set and an axiom fails.
    """
    lines = _check_header(_content_lines(text), MODULE_MAGIC)
    sections = _sections(lines, ("base", "fibers", "eta", "tau"))
    _, module = _parse_module(sections, len(text.splitlines()))
    if check:
        report = validate_module(module, CheckMode.GENERATORS)
        if not report:
            raise ModuleAxiomError(report.message, report.witness)
    return module


def read_extension(text: str) -> CentralExtension:
    """Parse and validate an extension file."""
    end_line = len(text.splitlines())
    lines = _check_header(_content_lines(text), EXTENSION_MAGIC)
    sections = _sections(lines, ("base", "fibers", "eta", "tau", "total", "proj", "action"))
    _, module = _parse_module(sections, end_line)
    report = validate_module(module, CheckMode.GENERATORS)
    if not report:
        raise ModuleAxiomError(report.message, report.witness)
    total = _parse_rack_block(sections["total"], end_line).rack
    proj_lines = sections["proj"]
    proj = [v for line in proj_lines for v in _ints(line, line[1])]
    action: Dict[int, List[int]] = {}
    for line in sections["action"]:
        head, colon, rest = line[1].partition(":")
        if not colon or not head.strip().isdigit():
            raise FileFormatError("expected 'e: images'", line[0])
        e = int(head)
        if e in action:
            raise FileFormatError(f"repeated action row {e}", line[0])
        action[e] = _ints(line, rest)
    if sorted(action) != list(range(total.size)):
        raise FileFormatError(f"need action rows 0..{total.size - 1}", end_line)
    return validate_extension(total, module, proj, [action[e] for e in range(total.size)])


# ---------------------------------------------------------------------------
# Writers
# ---------------------------------------------------------------------------

def _rack_block(rack: FiniteRack, labels: Optional[Sequence[str]] = None) -> List[str]:
    lines = [f"size {rack.size}"]
    if labels:
        lines.append("labels " + " ".join(labels))
    lines.append("table")
    lines.extend(" ".join(str(v) for v in row) for row in rack.table)
    return lines


def _hom_lines(table: Tuple[Tuple[AbHom, ...], ...]) -> List[str]:
    lines = []
    for x, row in enumerate(table):
        for y, hom in enumerate(row):
            images = "; ".join(" ".join(str(v) for v in image) for image in hom.gen_images)
            lines.append(f"{x} {y}: {images}".rstrip())
    return lines


def _module_lines(module: RackModule) -> List[str]:
    lines = ["[base]", *_rack_block(module.base), "[fibers]"]
    lines.extend(f"{x}: {' '.join(str(n) for n in fiber.factors)}".rstrip()
                 for x, fiber in enumerate(module.fibers))
    lines += ["[eta]", *_hom_lines(module.eta), "[tau]", *_hom_lines(module.tau)]
    return lines


def write_rack(rack: FiniteRack, labels: Optional[Sequence[str]] = None) -> str:
    return "\n".join([f"{RACK_MAGIC} {FORMAT_VERSION}", *_rack_block(rack, labels)]) + "\n"


def write_module(module: RackModule) -> str:
    return "\n".join([f"{MODULE_MAGIC} {FORMAT_VERSION}", *_module_lines(module)]) + "\n"


def write_extension(ext: CentralExtension) -> str:
    lines = [f"{EXTENSION_MAGIC} {FORMAT_VERSION}", *_module_lines(ext.module),
             "[total]", *_rack_block(ext.total), "[proj]", " ".join(str(x) for x in ext.proj), "[action]"]
    lines.extend(f"{e}: {' '.join(str(v) for v in row)}" for e, row in enumerate(ext.action))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Paths
# ---------------------------------------------------------------------------

def _read_text(path: Path) -> str:
    logger.debug(f"Reading {path}")
    return Path(path).read_text(encoding="utf-8")


def load_rack(path: Path) -> RackFile:
    return read_rack(_read_text(path))


def load_module(path: Path, check: bool = True) -> RackModule:
    return read_module(_read_text(path), check)


def load_extension(path: Path) -> CentralExtension:
    return read_extension(_read_text(path))


def save_text(path: Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")
    logger.info(f"Wrote {path}")
