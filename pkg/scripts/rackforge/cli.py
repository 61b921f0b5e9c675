"""Command-line interface for rackforge.

Usage:
    rackforge construct takasaki 3 -o R3.rack
    rackforge invariants R3.rack --json
    rackforge color trefoil.pd R3.rack
    rackforge ext is-trivial sum.ext

File arguments that are not existing paths are looked up in the catalog
directory (``$RACKFORGE_CATALOG``, else the bundled catalog).
"""

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from .coloring import enumerate_colorings, parse_pd
from .constants import (
    CATALOG_DIRNAME, CATALOG_ENV_VAR, COMPOSED_TOLERANCE, DEFAULT_CLOSURE_BUDGET, DEFAULT_EQUIVALENCE_BUDGET,
    DEFAULT_IDEAL_BUDGET_BITS, DEFAULT_MORPHISM_BUDGET, DEFAULT_SEED, DEFAULT_TRIALS, ExitCode,
)
from .constructors import (
    affine_quandle, conjugation_quandle, core_quandle, takasaki_quandle, trivial_quandle
)
from .errors import BudgetExceededError, ParseError, ValidationError
from .extensions import (
    baer_sum, check_baer_sum_representatives, find_equivalence, is_trivial, opposite,
    verify_opposite_trivializes,
)
from .fileio import (
    load_extension, load_module, load_rack, save_text, write_extension, write_rack
)
from .groups import ModMatrix, group_by_name
from .ideals import enumerate_left_ideals
from .morphisms import enumerate_automorphisms, inner_group, is_normal_in
from .numeric import check_axioms_numeric, reflect, sphere_sampler
from .rackmodules import CheckMode, semidirect_product, validate_module
from .racks import FiniteRack, fixed_points, is_involutive, is_unital, stabilizers, units, unitarize

logger = logging.getLogger(__name__)

Handler = Callable[[argparse.Namespace], int]


# ---------------------------------------------------------------------------
# Plumbing
# ---------------------------------------------------------------------------

def catalog_dir() -> Path:
    override = os.environ.get(CATALOG_ENV_VAR)
    return Path(override) if override else Path(__file__).parent / CATALOG_DIRNAME


def resolve_input(name: str) -> Path:
    """An existing path, or a file of that name in the catalog."""
    path = Path(name)
    if path.exists():
        return path
    candidate = catalog_dir() / name
    if candidate.exists():
        return candidate
    raise FileNotFoundError(f"no such file or catalog entry: {name}")


def _emit(args: argparse.Namespace, payload: Dict[str, Any], text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _emit_file(args: argparse.Namespace, content: str, summary: Dict[str, Any]) -> None:
    """Write produced file content to ``-o`` or stdout."""
    if args.output:
        save_text(Path(args.output), content)
        _emit(args, {**summary, "output": str(args.output)}, f"wrote {args.output}")
    elif args.json:
        print(json.dumps({**summary, "content": content}, sort_keys=True))
    else:
        sys.stdout.write(content)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _construct_rack(family: str, params: Sequence[str]) -> FiniteRack:
    if family in ("trivial", "takasaki"):
        if len(params) != 1:
            raise ValueError(f"{family} takes one size parameter")
        builder = trivial_quandle if family == "trivial" else takasaki_quandle
        return builder(int(params[0]))
    if family in ("conj", "core"):
        if len(params) != 1:
            raise ValueError(f"{family} takes one group name")
        group = group_by_name(params[0])
        return conjugation_quandle(group) if family == "conj" else core_quandle(group)
    if family == "affine":
        if len(params) < 2:
            raise ValueError("affine takes a modulus and the matrix entries")
        modulus, entries = int(params[0]), [int(v) for v in params[1:]]
        dim = int(round(len(entries) ** 0.5))
        if dim * dim != len(entries):
            raise ValueError(f"{len(entries)} entries do not form a square matrix")
        rows = [entries[i * dim:(i + 1) * dim] for i in range(dim)]
        return affine_quandle(ModMatrix.of(modulus, rows))
    raise ValueError(f"unknown family '{family}'")


def cmd_construct(args: argparse.Namespace) -> int:
    rack = _construct_rack(args.family, args.params)
    logger.info(f"Constructed {args.family} rack of size {rack.size}")
    _emit_file(args, write_rack(rack), {"size": rack.size, "quandle": rack.is_quandle})
    return ExitCode.OK


def cmd_check(args: argparse.Namespace) -> int:
    rack = load_rack(resolve_input(args.rack)).rack
    report = {
        "rack": True,
        "quandle": rack.is_quandle,
        "unital": is_unital(rack),
        "involutive": is_involutive(rack),
        "size": rack.size,
    }
    text = "\n".join(f"{key}: {_yes(value) if isinstance(value, bool) else value}"
                     for key, value in report.items())
    _emit(args, report, text)
    return ExitCode.OK


def cmd_invariants(args: argparse.Namespace) -> int:
    rack = load_rack(resolve_input(args.rack)).rack
    inn = inner_group(rack, args.budget_closure)
    aut = enumerate_automorphisms(rack, args.budget_aut)
    report: Dict[str, Any] = {
        "size": rack.size,
        "units": list(units(rack)),
        "stabilizers": list(stabilizers(rack)),
        "fixed_points": list(fixed_points(rack)),
        "inn_order": inn.order,
        "aut_order": aut.order,
        "aut_over_inn": aut.order // inn.order,
        "inn_normal_in_aut": is_normal_in(inn, aut),
    }
    try:
        report["left_ideals"] = [list(s) for s in enumerate_left_ideals(rack, args.budget_ideals)]
    except BudgetExceededError as exc:
        logger.warning(f"Skipping left ideals: {exc}")
        report["left_ideals"] = None
    lines = [f"{key}: {value}" for key, value in report.items() if key != "left_ideals"]
    ideals = report["left_ideals"]
    lines.append("left_ideals: skipped" if ideals is None
                 else f"left_ideals ({len(ideals)}): " + " ".join("{" + ",".join(map(str, s)) + "}" for s in ideals))
    _emit(args, report, "\n".join(lines))
    return ExitCode.OK


def cmd_unitarize(args: argparse.Namespace) -> int:
    rack = unitarize(load_rack(resolve_input(args.rack)).rack)
    _emit_file(args, write_rack(rack), {"size": rack.size, "unit": rack.size - 1})
    return ExitCode.OK


def cmd_module_check(args: argparse.Namespace) -> int:
    module = load_module(resolve_input(args.module), check=False)
    report = validate_module(module, CheckMode.ELEMENTS)
    payload = {"ok": report.ok, "axiom": report.axiom,
               "witness": list(report.witness) if report.witness else None, "message": report.message}
    _emit(args, payload, "module axioms hold" if report else f"axiom {report.axiom} fails: {report.message}")
    return ExitCode.OK if report else ExitCode.VALIDATION_FAILURE


def cmd_semidirect(args: argparse.Namespace) -> int:
    module = load_module(resolve_input(args.module))
    rack = semidirect_product(module)
    _emit_file(args, write_rack(rack), {"size": rack.size, "quandle": rack.is_quandle})
    return ExitCode.OK


def cmd_ext(args: argparse.Namespace) -> int:
    expected = 2 if args.ext_command in ("baer-sum", "equivalent") else 1
    if len(args.files) != expected:
        raise ValueError(f"ext {args.ext_command} takes {expected} extension file(s), got {len(args.files)}")
    first = load_extension(resolve_input(args.files[0]))
    second = load_extension(resolve_input(args.files[1])) if expected == 2 else None

    if args.ext_command == "validate":
        _emit(args, {"valid": True, "size": first.size}, f"valid extension of size {first.size}")
        return ExitCode.OK
    if args.ext_command == "baer-sum":
        check = check_baer_sum_representatives(first, second)
        if not check:
            raise ValidationError("Baer sum depends on representatives", check.witness)
        summed = baer_sum(first, second)
        _emit_file(args, write_extension(summed), {"size": summed.size})
        return ExitCode.OK
    if args.ext_command == "opposite":
        flipped = opposite(first)
        _emit_file(args, write_extension(flipped), {"size": flipped.size})
        return ExitCode.OK
    if args.ext_command == "is-trivial":
        trivial = is_trivial(first, args.budget_equiv)
        payload: Dict[str, Any] = {"trivial": trivial}
        if args.check_opposite:
            payload["opposite_sum_trivial"] = bool(verify_opposite_trivializes(first))
        _emit(args, payload, "\n".join(f"{k}: {_yes(v)}" for k, v in payload.items()))
        return ExitCode.OK
    morphism = find_equivalence(first, second, args.budget_equiv)
    payload = {"equivalent": morphism is not None,
               "images": list(morphism.images) if morphism else None}
    _emit(args, payload, f"equivalent: {_yes(morphism is not None)}"
          + (f"\nimages: {' '.join(map(str, morphism.images))}" if morphism else ""))
    return ExitCode.OK


def cmd_color(args: argparse.Namespace) -> int:
    diagram = parse_pd(resolve_input(args.diagram).read_text(encoding="utf-8"))
    rack = load_rack(resolve_input(args.rack)).rack
    colorings = enumerate_colorings(diagram, rack)
    payload: Dict[str, Any] = {"arcs": diagram.arcs, "crossings": len(diagram.crossings),
                               "count": len(colorings)}
    lines = [str(len(colorings))]
    if args.list:
        payload["colorings"] = [list(c) for c in colorings]
        lines += [" ".join(map(str, c)) for c in colorings]
    _emit(args, payload, "\n".join(lines))
    return ExitCode.OK


def cmd_numeric(args: argparse.Namespace) -> int:
    report = check_axioms_numeric(reflect, sphere_sampler(args.dim, args.seed), args.trials, args.tol)
    payload = {**report.as_dict(), "dim": args.dim, "seed": args.seed}
    text = "\n".join(f"{key}: {value}" for key, value in payload.items())
    _emit(args, payload, text)
    return ExitCode.OK if report.passed else ExitCode.VALIDATION_FAILURE


def cmd_catalog(args: argparse.Namespace) -> int:
    directory = catalog_dir()
    if not directory.is_dir():
        raise FileNotFoundError(f"catalog directory {directory} does not exist")
    names = sorted(p.name for p in directory.iterdir() if p.is_file())
    _emit(args, {"directory": str(directory), "files": names}, "\n".join(names))
    return ExitCode.OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Emit one JSON document")
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    common.add_argument("--budget-aut", type=int, default=DEFAULT_MORPHISM_BUDGET,
                        help="Automorphism search budget")
    common.add_argument("--budget-equiv", type=int, default=DEFAULT_EQUIVALENCE_BUDGET,
                        help="Extension equivalence search budget")
    common.add_argument("--budget-ideals", type=int, default=DEFAULT_IDEAL_BUDGET_BITS,
                        help="Left-ideal enumeration budget, in orbits")
    common.add_argument("--budget-closure", type=int, default=DEFAULT_CLOSURE_BUDGET,
                        help="Group closure order cap")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(prog="rackforge", description="Finite racks, quandles and their extensions")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, handler: Handler, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = command("construct", cmd_construct, "Build a rack from a standard family")
    p.add_argument("family", choices=["trivial", "takasaki", "conj", "core", "affine"])
    p.add_argument("params", nargs="+", help="Size, group name, or modulus and matrix entries")
    p.add_argument("-o", "--output", help="Write the rack file here")

    p = command("check", cmd_check, "Validate a rack file and report its type")
    p.add_argument("rack")

    p = command("invariants", cmd_invariants, "Units, Inn, Aut and left ideals")
    p.add_argument("rack")

    p = command("unitarize", cmd_unitarize, "Adjoin a unit element")
    p.add_argument("rack")
    p.add_argument("-o", "--output")

    p = command("module-check", cmd_module_check, "Check the module axioms")
    p.add_argument("module")

    p = command("semidirect", cmd_semidirect, "Semidirect product of a module")
    p.add_argument("module")
    p.add_argument("-o", "--output")

    p = command("ext", cmd_ext, "Extension arithmetic")
    p.add_argument("ext_command", choices=["validate", "baer-sum", "opposite", "is-trivial", "equivalent"])
    p.add_argument("files", nargs="+")
    p.add_argument("--check-opposite", action="store_true",
                   help="With is-trivial, also verify the explicit trivialisation of E + E^op")
    p.add_argument("-o", "--output")

    p = command("color", cmd_color, "Count quandle colorings of a PD diagram")
    p.add_argument("diagram")
    p.add_argument("rack")
    p.add_argument("--list", action="store_true", help="List every coloring")

    p = command("numeric", cmd_numeric, "Randomised sphere-quandle axiom check")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--tol", type=float, default=COMPOSED_TOLERANCE)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    command("catalog", cmd_catalog, "List bundled example files")
    return parser


def _error_payload(exc: Exception) -> Dict[str, Any]:
    payload: Dict[str, Any] = {"error": type(exc).__name__, "message": str(exc)}
    witness = getattr(exc, "witness", None)
    if witness is not None:
        payload["witness"] = list(witness)
    return payload


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    failures = (
        (ValidationError, ExitCode.VALIDATION_FAILURE),
        (BudgetExceededError, ExitCode.BUDGET_EXCEEDED),
        (ParseError, ExitCode.PARSE_ERROR),
        (ValueError, ExitCode.USAGE_ERROR),
        (OSError, ExitCode.IO_ERROR),
    )
    try:
        return int(args.handler(args))
    except tuple(kind for kind, _ in failures) as exc:
        code = next(code for kind, code in failures if isinstance(exc, kind))
        logger.error(f"{args.command}: {exc}")
        if args.json:
            print(json.dumps({**_error_payload(exc), "exit_code": int(code)}, sort_keys=True))
        return int(code)


if __name__ == "__main__":
    sys.exit(main())
