"""Command-line surface: argument parsing, dispatch and error-to-exit-status mapping."""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from pydantic import BaseModel, ValidationError

from isoforms.config.settings import Settings, get_settings
from isoforms.errors import (
    AmbiguousMatch,
    DegenerateSpan,
    DegreeRangeError,
    InputError,
    InternalInconsistency,
    InvariantViolation,
    NoMatch,
    NotInGroup,
    SymbolSyntaxError,
    UnsupportedDimension,
)
from isoforms.geometry.segre import Space
from isoforms.repository.file_repository import FileTableRepository
from isoforms.schema.report import ClassificationReport, ClassifyRequest
from isoforms.service.report_service import ReportService

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2
EXIT_NOT_IN_GROUP = 3
EXIT_AMBIGUOUS = 4


def get_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isoforms",
        description="Classify isometries of the sphere, Euclidean and hyperbolic space",
    )
    parser.add_argument("--json", action="store_true", help="Print machine-readable JSON")
    parser.add_argument("--tol", type=float, default=None, help="Rank tolerance override")
    parser.add_argument("--angle-tol", type=float, default=None, help="Angle tolerance override")
    commands = parser.add_subparsers(dest="command", required=True)

    def space_arguments(sub: argparse.ArgumentParser, required: bool = True) -> None:
        sub.add_argument(
            "--space", "-s", required=required, choices=[s.value for s in Space], help="Space form"
        )
        sub.add_argument("--n", "-n", type=int, required=required, help="Dimension of the space")

    for name, text in (
        ("classify", "Segre symbol and full report of one isometry"),
        ("normal-form", "Normal form and conjugator; accepts time-reversing Lorentz matrices"),
    ):
        sub = commands.add_parser(name, help=text)
        space_arguments(sub, required=False)
        source = sub.add_mutually_exclusive_group(required=True)
        source.add_argument("--input", "-i", help="JSON file with {space, n, matrix}, or - for stdin")
        source.add_argument("--payload", "-p", help="Inline JSON document or bare matrix")

    space_arguments(commands.add_parser("count", help="Number of Segre classes"))
    space_arguments(commands.add_parser("enumerate", help="All Segre symbols in table order"))

    sub = commands.add_parser("varieties", help="Invariant submanifold varieties of a symbol")
    space_arguments(sub)
    sub.add_argument("--symbol", required=True, help="Segre symbol, e.g. [e;1;2]")
    sub.add_argument("--k", type=int, default=None, help="Degree; all degrees below n when omitted")

    sub = commands.add_parser("reconstruct", help="Segre symbol from dimension vectors")
    space_arguments(sub)
    sub.add_argument("--d", required=True, help="Dimension vectors, e.g. 1;0,0 or [1;(0,0)]")

    sub = commands.add_parser("tables", help="Regenerate the classification tables as golden files")
    sub.add_argument("--output-dir", "-o", default=None, help="Directory for the golden files")
    sub.add_argument("--check", action="store_true", help="Compare against stored files instead")
    sub.epilog = "With --json the tables are printed, components included, and nothing is written."
    return parser


# --- exception handlers -------------------------------------------------------


def _report(exc: Exception, status: int) -> int:
    logger.error(f"{type(exc).__name__}: {exc}")
    print(f"error: {exc}", file=sys.stderr)
    return status


def input_error_handler(exc: Exception) -> int:
    return _report(exc, EXIT_INPUT)


def not_in_group_handler(exc: NotInGroup) -> int:
    return _report(exc, EXIT_NOT_IN_GROUP)


def ambiguity_handler(exc: AmbiguousMatch) -> int:
    return _report(exc, EXIT_AMBIGUOUS)


def tolerance_handler(exc: InternalInconsistency | DegenerateSpan) -> int:
    return _report(exc, EXIT_AMBIGUOUS)


EXCEPTION_HANDLERS: dict[type[BaseException], Callable[[Any], int]] = {
    NotInGroup: not_in_group_handler,
    AmbiguousMatch: ambiguity_handler,
    InternalInconsistency: tolerance_handler,
    DegenerateSpan: tolerance_handler,
    InputError: input_error_handler,
    ValidationError: input_error_handler,
    SymbolSyntaxError: input_error_handler,
    DegreeRangeError: input_error_handler,
    UnsupportedDimension: input_error_handler,
    InvariantViolation: input_error_handler,
    NoMatch: input_error_handler,
    json.JSONDecodeError: input_error_handler,
    OSError: input_error_handler,
}


def handle_exception(exc: Exception) -> int:
    """Most specific handler along the exception's MRO; 1 when none applies."""
    for cls in type(exc).__mro__:
        handler = EXCEPTION_HANDLERS.get(cls)
        if handler is not None:
            return handler(exc)
    logger.exception("Unexpected failure")
    print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    return EXIT_FAILURE


# --- output -------------------------------------------------------------------


def _round(value: Any, digits: int) -> Any:
    if isinstance(value, float):
        return float(f"{value:.{digits}g}")
    if isinstance(value, list):
        return [_round(v, digits) for v in value]
    if isinstance(value, dict):
        return {k: _round(v, digits) for k, v in value.items()}
    return value


def _emit_json(data: BaseModel | list[BaseModel], digits: int) -> None:
    if isinstance(data, list):
        payload = [item.model_dump(mode="json") for item in data]
    else:
        payload = data.model_dump(mode="json")
    print(json.dumps(_round(payload, digits), indent=2))


def _format_matrix(rows: list[list[float]], digits: int) -> str:
    return "\n".join("  " + "  ".join(f"{x: .{digits}g}" for x in row) for row in rows)


def _print_classification(report: ClassificationReport, digits: int) -> None:
    print(f"segre: {report.segre}")
    if report.type:
        print(f"type: {report.type}")
    print(f"isotropy_dim: {report.isotropy_dim}")
    print(f"orbit_dim: {report.orbit_dim}")
    print(f"normal form: {report.normal_form}")
    params = report.parameters
    if params.angles:
        print("angles: " + ", ".join(f"{a:.{digits}g}" for a in params.angles))
    if params.translation_length is not None:
        print(f"translation_length: {params.translation_length:.{digits}g}")
    if params.boost is not None:
        print(f"boost: {params.boost:.{digits}g}")
    if report.proper is not None:
        print(f"proper: {str(report.proper).lower()}")
    print(f"residual: {report.residual:.3e}")
    print(f"group_residual: {report.group_residual:.3e}")
    print("normal form matrix:")
    print(_format_matrix(report.normal_form_matrix, digits))
    print("conjugator:")
    print(_format_matrix(report.conjugator, digits))
    for line in report.diagnostics:
        print(f"diagnostic: {line}")


# --- commands -----------------------------------------------------------------


def _load_request(args: argparse.Namespace) -> ClassifyRequest:
    if args.payload is not None:
        text = args.payload
    elif args.input == "-":
        text = sys.stdin.read()
    else:
        text = Path(args.input).read_text(encoding="utf-8")
    payload = json.loads(text)
    if isinstance(payload, list):
        payload = {"matrix": payload}
    if not isinstance(payload, dict):
        raise InputError("payload must be a JSON object or a matrix")
    if args.space is not None:
        payload.setdefault("space", args.space)
    if args.n is not None:
        payload.setdefault("n", args.n)
    if "n" not in payload and isinstance(payload.get("matrix"), list):
        payload["n"] = len(payload["matrix"]) - 1
    return ClassifyRequest.model_validate(payload)


def _classify(service: ReportService, args: argparse.Namespace, settings: Settings) -> int:
    request = _load_request(args)
    tol = service.tolerance(args.tol, args.angle_tol)
    report = service.classify(request, tol, allow_improper=args.command == "normal-form")
    if args.json:
        _emit_json(report, settings.json_digits)
    else:
        _print_classification(report, settings.human_digits)
    return EXIT_AMBIGUOUS if report.diagnostics else EXIT_OK


def _count(service: ReportService, args: argparse.Namespace, settings: Settings) -> int:
    report = service.count(Space(args.space), args.n)
    if args.json:
        _emit_json(report, settings.json_digits)
    else:
        print(f"{report.space.value} n = {report.n}: {report.total} classes")
        for kind, value in report.by_kind.items():
            print(f"  {kind}: {value}")
    return EXIT_OK


def _enumerate(service: ReportService, args: argparse.Namespace, settings: Settings) -> int:
    reports = service.enumerate(Space(args.space), args.n)
    if args.json:
        _emit_json(reports, settings.json_digits)
    else:
        for r in reports:
            print(f"{r.segre}\t{r.normal_form}\tisotropy {r.isotropy_dim}\torbit {r.orbit_dim}")
    return EXIT_OK


def _varieties(service: ReportService, args: argparse.Namespace, settings: Settings) -> int:
    reports = service.varieties(Space(args.space), args.n, args.symbol, args.k)
    if args.json:
        _emit_json(reports, settings.json_digits)
    else:
        for r in reports:
            text = " | ".join(c.text for c in r.components) or "empty"
            dims = ",".join(str(d) for d in r.dims) or "-1"
            print(f"Gamma({r.degree}) = {text}  [{dims}]")
    return EXIT_OK


def _reconstruct(service: ReportService, args: argparse.Namespace, settings: Settings) -> int:
    report = service.reconstruct(Space(args.space), args.n, args.d)
    if args.json:
        _emit_json(report, settings.json_digits)
    else:
        print(report.segre)
    return EXIT_OK


def _tables(service: ReportService, args: argparse.Namespace, settings: Settings) -> int:
    if args.json and not args.check:
        _emit_json(service.tables(), settings.json_digits)
        return EXIT_OK
    if args.check:
        mismatches = service.check_tables()
        for line in mismatches:
            print(line)
        return EXIT_FAILURE if mismatches else EXIT_OK
    for path in service.write_tables():
        print(path)
    return EXIT_OK


COMMANDS = {
    "classify": _classify,
    "normal-form": _classify,
    "count": _count,
    "enumerate": _enumerate,
    "varieties": _varieties,
    "reconstruct": _reconstruct,
    "tables": _tables,
}


def run(argv: Optional[Sequence[str]] = None, settings: Optional[Settings] = None) -> int:
    """Parse ``argv``, run one command and return its exit status."""
    args = get_parser().parse_args(argv)
    try:
        settings = settings or get_settings()
        output_dir = getattr(args, "output_dir", None)
        service = ReportService(settings, FileTableRepository(settings, output_dir))
        return COMMANDS[args.command](service, args, settings)
    except Exception as exc:
        return handle_exception(exc)
