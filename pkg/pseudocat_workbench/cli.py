"""Command-line driver: validate and compose structures declared in ``.pdc`` files."""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any

from pseudocat_workbench import config, settings_store
from pseudocat_workbench.ambient import (
    BoundaryMismatch,
    FinCategory,
    LawViolation,
    category_violations,
)
from pseudocat_workbench.dsl import DslError, Workspace, load
from pseudocat_workbench.homclose import (
    HomPseudoCategory,
    build_hom_pseudocategory,
    check_in_hom,
    curry,
    find_invertible_modification,
    hcomp_pseudonatural_w1,
    hcomp_pseudonatural_w2,
    round_trip_report,
    terminal_pseudocategory,
    uncurry,
)
from pseudocat_workbench.logging_config import setup_logging
from pseudocat_workbench.models import (
    Precategory,
    codiscrete_pseudocategory,
    cyclic_group_model,
    discrete_pseudocategory,
    group_pseudocategory,
    identity_crossed_module,
    morab_preset,
    morab_pseudocategory,
    negation_group_model,
    span_pseudocategory,
    walking_arrow,
)
from pseudocat_workbench.pfunctor import (
    CompositionTypeMismatch,
    PseudoFunctor,
    compose_pseudofunctors,
    validate_pseudofunctor,
)
from pseudocat_workbench.pseudocat import PseudoCategory, validate_pseudocategory
from pseudocat_workbench.ptransform import (
    NaturalTransformation,
    PseudoModification,
    PseudoNaturalTransformation,
    SearchSpaceTooLarge,
    compose_modifications,
    enumerate_pseudofunctors,
    pcomp_modifications,
    validate_natural,
    validate_pseudomodification,
    validate_pseudonatural,
    vcomp_natural,
    vcomp_pseudonatural,
)
from pseudocat_workbench.report import (
    ValidationReport,
    dump_json,
    emit_json,
    emit_json_many,
    jsonable,
)

logger = logging.getLogger(__name__)

CATEGORY_LAWS = (
    "category.unit",
    "category.typed-composite",
    "category.total-composition",
    "category.associativity",
)

# failed laws that mean the input itself is ill-typed
INPUT_ERROR_LAWS = ("boundary", CompositionTypeMismatch.law_id)


class CommandError(Exception):
    """Raised when a command is applied to structures of the wrong kind."""


# ----------------------------------------------------------------------
# Validation dispatch
# ----------------------------------------------------------------------


def validate_category_report(cat: FinCategory) -> ValidationReport:
    violations = list(category_violations(cat))
    report = ValidationReport(cat.name)
    for law_id in CATEGORY_LAWS:
        report.check(law_id, (v for v in violations if v.law_id == law_id))
    return report


def validate_any(value: Any) -> ValidationReport:
    """Run the validator matching the kind of ``value``.

    A BoundaryMismatch is recorded as a failed ``boundary`` entry.
    """
    validators: list[tuple[type, Callable[[Any], ValidationReport]]] = [
        (FinCategory, validate_category_report),
        (PseudoCategory, validate_pseudocategory),
        (PseudoFunctor, validate_pseudofunctor),
        (NaturalTransformation, validate_natural),
        (PseudoNaturalTransformation, validate_pseudonatural),
        (PseudoModification, validate_pseudomodification),
    ]
    for kind, validator in validators:
        if isinstance(value, kind):
            try:
                return validator(value)
            except BoundaryMismatch as e:
                report = ValidationReport(value.name)
                report.record_violation(e)
                return report
    raise CommandError(f"cannot validate {type(value).__name__}")


def exit_code(reports: Sequence[ValidationReport]) -> int:
    failed = [r for report in reports for r in report.failures]
    if any(r.law_id in INPUT_ERROR_LAWS for r in failed):
        return config.EXIT_INPUT_ERROR
    return config.EXIT_LAW_FAILURE if failed else config.EXIT_OK


def functor_tables(F: PseudoFunctor) -> dict[str, Any]:
    """The component tables of a pseudo-functor, without its name."""
    return {
        "source": F.source.name,
        "target": F.target.name,
        "objects": jsonable(dict(F.f0.object_map)),
        "vertical": jsonable(dict(F.f0.morphism_map)),
        "horizontal": jsonable(dict(F.f1.object_map)),
        "cells": jsonable(dict(F.f1.morphism_map)),
        "mu": jsonable(dict(F.mu)),
        "eps": jsonable(dict(F.eps)),
    }


def strict_functors(
    source: PseudoCategory, target: PseudoCategory, bound: int
) -> list[PseudoFunctor]:
    """Pseudo-functors whose comparison cells are all identities."""
    return [
        F
        for F in enumerate_pseudofunctors(source, target, bound)
        if all(target.c1.is_identity(cell) for cell in (*F.mu.values(), *F.eps.values()))
    ]


def hom_report(
    source: PseudoCategory, target: PseudoCategory, bound: int, strict_only: bool
) -> tuple[HomPseudoCategory, ValidationReport]:
    functors = strict_functors(source, target, bound) if strict_only else None
    hom = build_hom_pseudocategory(source, target, functors, bound)
    return hom, check_in_hom(hom)


# ----------------------------------------------------------------------
# Commands
# ----------------------------------------------------------------------


def _get(ws: Workspace, name: str, kind: type, what: str) -> Any:
    value = ws.lookup(name)
    if not isinstance(value, kind):
        raise CommandError(f"{name} is not a {what}")
    return value


def cmd_check(ws: Workspace, args: argparse.Namespace) -> list[ValidationReport]:
    if args.name:
        return [validate_any(ws.lookup(args.name))]
    reports: list[ValidationReport] = []
    for directive in ws.directives:
        if directive.command == "check":
            reports.append(validate_any(ws.lookup(directive.arguments[0])))
        elif directive.command == "compose":
            G = _get(ws, directive.arguments[0], PseudoFunctor, "pseudo-functor")
            F = _get(ws, directive.arguments[1], PseudoFunctor, "pseudo-functor")
            reports.append(validate_any(compose_pseudofunctors(G, F)))
        else:
            source = _get(ws, directive.arguments[0], PseudoCategory, "pseudo-category")
            target = _get(ws, directive.arguments[1], PseudoCategory, "pseudo-category")
            reports.append(hom_report(source, target, args.bound, args.strict_only)[1])
    if not ws.directives:
        reports = [validate_any(p) for p in ws.pseudocategories.values()]
    return reports


def cmd_compose(ws: Workspace, args: argparse.Namespace) -> list[ValidationReport]:
    G = _get(ws, args.second, PseudoFunctor, "pseudo-functor")
    F = _get(ws, args.first, PseudoFunctor, "pseudo-functor")
    composite = compose_pseudofunctors(G, F)
    if args.show:
        sys.stdout.buffer.write(dump_json(functor_tables(composite)))
    return [validate_any(composite)]


def cmd_vcomp(ws: Workspace, args: argparse.Namespace) -> list[ValidationReport]:
    second, first = ws.lookup(args.second), ws.lookup(args.first)
    composers: list[tuple[type, Callable[[Any, Any], Any]]] = [
        (NaturalTransformation, vcomp_natural),
        (PseudoNaturalTransformation, vcomp_pseudonatural),
        (PseudoModification, compose_modifications),
    ]
    for kind, composer in composers:
        if isinstance(second, kind) and isinstance(first, kind):
            return [validate_any(composer(second, first))]
    raise CommandError(f"{args.second} and {args.first} cannot be composed vertically")


def cmd_pcomp(ws: Workspace, args: argparse.Namespace) -> list[ValidationReport]:
    second = _get(ws, args.second, PseudoModification, "pseudo-modification")
    first = _get(ws, args.first, PseudoModification, "pseudo-modification")
    return [validate_any(pcomp_modifications(second, first))]


def cmd_hom(ws: Workspace, args: argparse.Namespace) -> list[ValidationReport]:
    source = _get(ws, args.source, PseudoCategory, "pseudo-category")
    target = _get(ws, args.target, PseudoCategory, "pseudo-category")
    return [hom_report(source, target, args.bound, args.strict_only)[1]]


def cmd_curry(ws: Workspace, args: argparse.Namespace) -> list[ValidationReport]:
    h = _get(ws, args.name, PseudoFunctor, "pseudo-functor")
    factors = [pair for name, pair in ws.factors.items() if ws.pseudocategories[name] is h.source]
    if not factors:
        raise CommandError(f"the source of {h.name} is not a declared product")
    left, right = factors[0]
    curried = curry(h, left, right, args.bound)
    uncurried = uncurry(curried, args.convention)
    return [validate_any(curried.functor), round_trip_report(curried, uncurried)]


def cmd_hcomp(ws: Workspace, args: argparse.Namespace) -> list[ValidationReport]:
    S = _get(ws, args.second, PseudoNaturalTransformation, "pseudo-natural transformation")
    T = _get(ws, args.first, PseudoNaturalTransformation, "pseudo-natural transformation")
    composer = hcomp_pseudonatural_w1 if args.variant == "w1" else hcomp_pseudonatural_w2
    return [validate_any(composer(S, T))]


def cmd_iso_search(ws: Workspace, args: argparse.Namespace) -> list[ValidationReport]:
    kind, what = PseudoNaturalTransformation, "pseudo-natural transformation"
    first, second = _get(ws, args.first, kind, what), _get(ws, args.second, kind, what)
    phi = find_invertible_modification(first, second, args.bound)
    report = ValidationReport(f"iso({first.name},{second.name})")
    report.check("search.invertible-modification", [] if phi else [(first.name, second.name)])
    if phi is not None:
        report.extend(validate_pseudomodification(phi))
    return [report]


def build_model(args: argparse.Namespace) -> PseudoCategory:
    """Construct the built-in model named on the command line."""
    kind, params = args.kind, args.params

    def ints(count: int) -> list[int]:
        if len(params) != count:
            raise CommandError(f"model {kind} takes {count} argument(s)")
        try:
            return [int(p) for p in params]
        except ValueError as e:
            raise CommandError(f"model {kind}: {e}") from e

    if kind == "span":
        if params:
            (size,) = ints(1)
        else:
            size = args.bound if args.bound is not None else args.span_size
        try:
            return span_pseudocategory(config.resolve_span_size(size))
        except ValueError as e:
            raise CommandError(str(e)) from e
    if kind == "grp":
        order, delta = ints(2)
        return group_pseudocategory(cyclic_group_model(order, delta))
    if kind == "negation":
        (delta,) = ints(1)
        return group_pseudocategory(negation_group_model(delta))
    if kind == "crossed":
        (order,) = ints(1)
        return group_pseudocategory(identity_crossed_module(order))
    if kind == "morab":
        if len(params) != 1:
            raise CommandError("model morab takes a preset name")
        try:
            return morab_pseudocategory(morab_preset(params[0]))
        except ValueError as e:
            raise CommandError(str(e)) from e
    if kind == "discrete":
        return discrete_pseudocategory(walking_arrow())
    if kind == "codiscrete":
        return codiscrete_pseudocategory(Precategory.from_category(walking_arrow()))
    return terminal_pseudocategory()


def cmd_model(args: argparse.Namespace) -> list[ValidationReport]:
    return [validate_any(build_model(args))]


COMMANDS: dict[str, Callable[[Workspace, argparse.Namespace], list[ValidationReport]]] = {
    "check": cmd_check,
    "compose": cmd_compose,
    "vcomp": cmd_vcomp,
    "pcomp": cmd_pcomp,
    "hom": cmd_hom,
    "curry": cmd_curry,
    "hcomp": cmd_hcomp,
    "iso-search": cmd_iso_search,
}


# ----------------------------------------------------------------------
# Argument parsing
# ----------------------------------------------------------------------


def build_parser(defaults: dict[str, Any]) -> argparse.ArgumentParser:
    output = argparse.ArgumentParser(add_help=False)
    output.add_argument(
        "--json",
        action="store_true",
        default=defaults["json"],
        help="Write reports as canonical JSON instead of text.",
    )
    output.add_argument("--verbose", action="store_true", help="Log debug output to stderr.")

    common = argparse.ArgumentParser(add_help=False, parents=[output])
    common.add_argument(
        "--bound",
        type=int,
        default=defaults["search_bound"],
        help="Maximum number of candidates per enumeration (default: %(default)s).",
    )
    common.add_argument(
        "--strict-only",
        dest="strict_only",
        action="store_true",
        help="Restrict enumerated pseudo-functors to those with identity comparison cells.",
    )
    parser = argparse.ArgumentParser(
        prog="pseudocat", description="Check finite pseudo double categories law by law."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(name: str, help_text: str) -> argparse.ArgumentParser:
        command = sub.add_parser(name, parents=[common], help=help_text)
        command.add_argument("file", type=Path, help=f"Document ({config.DSL_EXTENSION} file)")
        return command

    check = with_file("check", "Validate a declared structure, or run the file's directives.")
    check.add_argument("name", nargs="?", help="Structure to validate")

    compose = with_file("compose", "Compose two pseudo-functors (second after first).")
    compose.add_argument("second")
    compose.add_argument("first")
    compose.add_argument("--show", action="store_true", help="Also print the composite's tables.")

    for name, help_text in (
        ("vcomp", "Vertically compose transformations or modifications."),
        ("pcomp", "Pseudo-compose two pseudo-modifications."),
        ("hcomp", "Horizontally compose two pseudo-natural transformations."),
    ):
        command = with_file(name, help_text)
        command.add_argument("second")
        command.add_argument("first")
        if name == "hcomp":
            command.add_argument(
                "--variant",
                choices=config.HCOMP_VARIANTS,
                default=defaults["hcomp_variant"],
                help="Which of the two horizontal composites (default: %(default)s).",
            )

    hom = with_file("hom", "Build and validate Hom(source, target).")
    hom.add_argument("source")
    hom.add_argument("target")

    curry_cmd = with_file("curry", "Curry a pseudo-functor on a product and check the round trip.")
    curry_cmd.add_argument("name")
    curry_cmd.add_argument(
        "--convention",
        choices=config.CURRY_CONVENTIONS,
        default=config.DEFAULT_CURRY_CONVENTION,
        help="Which factor the uncurried arrows split off first (default: %(default)s).",
    )

    iso = with_file("iso-search", "Search for an invertible pseudo-modification.")
    iso.add_argument("first")
    iso.add_argument("second")

    model = sub.add_parser("model", parents=[output], help="Validate a built-in model.")
    model.add_argument(
        "kind",
        choices=("span", "grp", "negation", "crossed", "morab", "discrete", "codiscrete", "terminal"),
    )
    model.add_argument("params", nargs="*", help="Model parameters")
    model.add_argument(
        "--bound",
        type=int,
        default=None,
        help="Base-set size bound of the span model (same as its positional size).",
    )
    model.set_defaults(span_size=defaults["span_size"])
    return parser


# ----------------------------------------------------------------------
# Entry point
# ----------------------------------------------------------------------


def _write(payload: bytes) -> None:
    sys.stdout.buffer.write(payload)
    sys.stdout.flush()


def _emit_error(args: argparse.Namespace, payload: dict[str, Any], message: str) -> None:
    if args.json:
        _write(dump_json({"error": payload}))
    print(f"error: {message}", file=sys.stderr)


def _emit_reports(args: argparse.Namespace, reports: list[ValidationReport]) -> None:
    if args.json:
        _write(emit_json(reports[0]) if len(reports) == 1 else emit_json_many(reports))
    else:
        print("\n".join(report.render() for report in reports))


def run(args: argparse.Namespace) -> int:
    """Execute a parsed command line and return the exit code."""
    try:
        if args.bound is not None and args.bound <= 0:
            raise CommandError(f"--bound must be positive, got {args.bound}")
        if args.command == "model":
            reports = cmd_model(args)
        else:
            text = args.file.read_text(encoding="utf-8")
            workspace = load(text)
            reports = COMMANDS[args.command](workspace, args)
    except DslError as e:
        location = e.location
        _emit_error(
            args,
            {
                "kind": type(e).__name__,
                "message": e.message,
                "line": location.line if location else None,
                "column": location.column if location else None,
            },
            str(e),
        )
        return config.EXIT_INPUT_ERROR
    except (OSError, UnicodeDecodeError, CommandError) as e:
        _emit_error(args, {"kind": type(e).__name__, "message": str(e)}, str(e))
        return config.EXIT_INPUT_ERROR
    except SearchSpaceTooLarge as e:
        _emit_error(
            args, {"kind": "SearchSpaceTooLarge", "bound": e.bound, "count": e.count}, str(e)
        )
        return config.EXIT_SEARCH_BOUND
    except LawViolation as e:
        # structures that could not even be assembled
        report = ValidationReport(getattr(args, "file", Path(args.command)).stem)
        report.record_violation(e)
        reports = [report]

    _emit_reports(args, reports)
    code = exit_code(reports)
    logger.info(f"{args.command} finished with exit code {code}")
    return code


def main(argv: Sequence[str] | None = None) -> int:
    defaults = settings_store.effective_defaults(settings_store.load_settings())
    args = build_parser(defaults).parse_args(argv)
    setup_logging(logging.DEBUG if args.verbose else logging.WARNING)
    return run(args)


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
