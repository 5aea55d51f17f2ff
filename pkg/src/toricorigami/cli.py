"""Deterministic command-line front end.

Reads a JSON template document (path or ``-`` for stdin), runs one
computation per subcommand and prints a JSON report on stdout.  All numbers
in reports are exact (rationals as ``p/q`` strings).  Exit codes: 0 success,
1 usage or parse failure, 2 semantic failure (invalid template, unmet
precondition, failed identity check).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .cohomology import ht_poincare
from .cones import default_polarization, verify_dh_identity
from .document import format_rational, load_template
from .errors import DocumentError, NonorientableError, OrigamiError, ValidationError
from .invariants import dh_density, quantize, signed_volume
from .render import render_svg
from .template import classify_surface, orient, validate

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SEMANTIC = 2


class _Parser(argparse.ArgumentParser):
    """argparse with the documented usage-error exit code (1, not 2)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rational_point(text: str):
    try:
        return tuple(Fraction(part.strip()) for part in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated rationals, got {text!r}"
        ) from exc


def _int_vector(text: str):
    try:
        return tuple(int(part.strip()) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got {text!r}"
        ) from exc


def _even_int(text: str) -> int:
    value = int(text)
    if value < 0 or value % 2:
        raise argparse.ArgumentTypeError("must be an even nonnegative integer")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="toricorigami",
        description="origami templates of Delzant polytopes: validation, "
        "orientation, quantization, DH densities, weight cones, cohomology",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="template JSON document (or - for stdin)")
        return p

    command("validate", "check the template conditions").set_defaults(
        handler=_cmd_validate
    )
    command("orient", "orientation signs or a nonorientability witness").set_defaults(
        handler=_cmd_orient
    )
    command("classify", "surface family of a 1-dimensional template").set_defaults(
        handler=_cmd_classify
    )
    p = command("quantize", "signed lattice-point count")
    p.add_argument(
        "--points", action="store_true", help="include the per-point table"
    )
    p.set_defaults(handler=_cmd_quantize)

    p = command("dh", "Duistermaat-Heckman density at a point")
    p.add_argument("--point", required=True, type=_rational_point)
    p.set_defaults(handler=_cmd_dh)

    command("volume", "signed volume of the template").set_defaults(
        handler=_cmd_volume
    )

    p = command("cones", "check the weight-cone form of the DH density")
    p.add_argument("--v", type=_int_vector, default=None,
                   help="polarizing vector (default: built-in generic choice)")
    p.add_argument("--samples", type=_positive_int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_cones)

    p = command("cohomology", "equivariant Poincare series coefficients")
    p.add_argument("--max-degree", type=_even_int, default=20)
    p.set_defaults(handler=_cmd_cohomology)

    p = command("render", "draw a 2-dimensional template as SVG")
    p.add_argument("--out", required=True, help="output SVG path")
    p.add_argument(
        "--lattice", action="store_true",
        help="mark signed lattice points (needs an orientable template)",
    )
    p.set_defaults(handler=_cmd_render)

    return parser


# --- handlers ---------------------------------------------------------------

def _load_valid(path):
    """Parse the document and insist on a valid template."""
    T = load_template(path)
    report = validate(T)
    if not report.valid:
        raise ValidationError(report)
    return T


def _cmd_validate(args):
    T = load_template(args.file)
    report = validate(T)
    payload = {
        "valid": report.valid,
        "delzant_failures": [
            {"polytope": i, "message": m} for i, m in report.delzant_failures
        ],
        "agreement_failures": [
            {"fusion": i, "message": m} for i, m in report.agreement_failures
        ],
        "adjacency_failures": list(report.adjacency_failures),
        "connected": report.connected,
        "self_pairs": list(report.self_pairs),
    }
    return payload, EXIT_OK if report.valid else EXIT_SEMANTIC


def _cmd_orient(args):
    T = _load_valid(args.file)
    try:
        signs = orient(T)
    except NonorientableError as exc:
        witness = (
            {"single": exc.single}
            if exc.single is not None
            else {"odd_cycle": list(exc.odd_cycle)}
        )
        return {"orientable": False, "witness": witness}, EXIT_SEMANTIC
    return {"orientable": True, "orientation": list(signs)}, EXIT_OK


def _cmd_classify(args):
    T = _load_valid(args.file)
    result = classify_surface(T)
    return {
        "family": result.family,
        "fixed_points": result.fixed_points,
        "fold_components": result.fold_components,
    }, EXIT_OK


def _cmd_quantize(args):
    T = _load_valid(args.file)
    result = quantize(T)
    payload = {"virtual_dimension": result.virtual_dimension}
    if args.points:
        payload["points"] = [
            {"point": list(p), "multiplicity": m}
            for p, m in result.per_point.items()
        ]
    return payload, EXIT_OK


def _cmd_dh(args):
    T = _load_valid(args.file)
    value = dh_density(T, args.point)
    return {
        "point": [format_rational(c) for c in value.point],
        "density": value.density,
        "generic": value.generic,
    }, EXIT_OK


def _cmd_volume(args):
    T = _load_valid(args.file)
    return {"signed_volume": format_rational(signed_volume(T))}, EXIT_OK


def _cmd_cones(args):
    T = _load_valid(args.file)
    v = args.v if args.v is not None else default_polarization(T)
    report = verify_dh_identity(T, v, args.samples, args.seed)
    payload = {
        "v": list(report.v),
        "requested_samples": report.requested,
        "samples": report.samples,
        "agreements": report.agreements,
        "disagreements": report.disagreements,
        "boundary_discards": report.boundary_discards,
        "seed": args.seed,
        "success": report.success,
        "first_counterexample": None,
    }
    if report.first_counterexample is not None:
        point, cone_side, dh_side = report.first_counterexample
        payload["first_counterexample"] = {
            "point": [format_rational(c) for c in point],
            "cone_density": cone_side,
            "dh_density": dh_side,
        }
    return payload, EXIT_OK if report.success else EXIT_SEMANTIC


def _cmd_cohomology(args):
    T = _load_valid(args.file)
    series = ht_poincare(T, args.max_degree)
    return {
        "max_degree": series.cap,
        "coefficients": list(series.coefficients),
    }, EXIT_OK


def _cmd_render(args):
    T = _load_valid(args.file)
    svg = render_svg(T, lattice=args.lattice)
    Path(args.out).write_text(svg, encoding="utf-8")
    return {"out": args.out, "bytes": len(svg.encode("utf-8"))}, EXIT_OK


# --- entry ------------------------------------------------------------------

def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        payload, code = args.handler(args)
    except DocumentError as exc:
        payload, code = {"error": {"kind": "parse", "message": str(exc)}}, EXIT_USAGE
    except OrigamiError as exc:
        payload, code = (
            {"error": {"kind": type(exc).__name__, "message": str(exc)}},
            EXIT_SEMANTIC,
        )
    report = {"command": args.command, "file": args.file}
    report.update(payload)
    print(json.dumps(report, indent=2, sort_keys=True))
    return code


def entry() -> None:  # console_scripts hook
    sys.exit(main())


if __name__ == "__main__":
    entry()
