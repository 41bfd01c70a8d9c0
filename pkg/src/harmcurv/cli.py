"""Command-line front end.

Commands read polynomial files ({"coeffs": [[re, im], ...]}, ascending
powers) and write CSV, JSON, or SVG reports to stdout or --out.  Output is
byte-deterministic: floats carry 17 significant digits and every traversal
order is fixed.  Exit codes: 0 success, 2 usage or input error, 3 numeric
failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from . import critical as crit
from . import curvature as curv
from . import equivalence as equiv
from . import levelsets as lvl
from . import serialize
from . import svgrender
from .config import DEFAULT, Tolerances
from .errors import (
    AnalysisError,
    BandTooWideError,
    GridSizeError,
    IdenticallyFlatError,
    InsufficientDegreeError,
    NonConvergenceError,
    PolyFormatError,
    ResolutionInstabilityError,
)
from .poly import ComplexPoly, load_poly, poly_to_json_dict

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3

_NUMERIC_FAILURES = (
    NonConvergenceError,
    ResolutionInstabilityError,
    BandTooWideError,
    IdenticallyFlatError,
)

_FORMATS = {
    "roots": ("json", "csv"),
    "curvature": ("csv", "json", "svg"),
    "critical": ("json",),
    "fibers": ("json", "svg"),
    "equiv": ("json",),
    "loop": ("json",),
}


@dataclasses.dataclass
class RunConfig:
    command: str
    inputs: tuple
    domain: curv.Domain2D = None
    grid_n: int = 512
    part: str = "real"
    t_samples: int = 64
    format: str = "json"
    out: str = None
    tolerances: Tolerances = DEFAULT


class UsageError(Exception):
    pass


def _parse_domain(text: str) -> curv.Domain2D:
    parts = text.split(",")
    if len(parts) != 4:
        raise UsageError("--domain needs xmin,xmax,ymin,ymax")
    try:
        vals = [float(p) for p in parts]
    except ValueError as exc:
        raise UsageError(f"--domain: {exc}") from exc
    try:
        return curv.Domain2D(*vals)
    except ValueError as exc:
        raise UsageError(f"--domain: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harmcurv",
        description="Curvature and level-set analysis for graphs of harmonic "
        "parts of complex polynomials.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, n_inputs):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("inputs", nargs=n_inputs, metavar="POLY.json")
        p.add_argument("--domain", default=None, metavar="XMIN,XMAX,YMIN,YMAX")
        p.add_argument("--grid", type=int, default=512, dest="grid_n")
        p.add_argument("--part", choices=("real", "imag"), default="real")
        p.add_argument("--t-samples", type=int, default=64, dest="t_samples")
        p.add_argument("--format", choices=("csv", "json", "svg"), default="json")
        p.add_argument("--out", default=None)
        p.add_argument("--tol-root", type=float, default=None, dest="tol_root")
        p.add_argument("--tol-match", type=float, default=None, dest="tol_match")
        return p

    add("roots", "roots of the polynomial with multiplicities", 1)
    add("curvature", "curvature grid of the graph", 1)
    add("critical", "critical points and hull containment report", 1)
    add("fibers", "level partition and fiber connectivity", 1)
    add("equiv", "decide curvature equivalence of two polynomials", 2)
    add("loop", "sweep the unit-rotation family", 1)
    return parser


def config_from_args(args) -> RunConfig:
    overrides = {}
    if args.tol_root is not None:
        if not args.tol_root > 0:
            raise UsageError("--tol-root must be positive")
        overrides["root_tol"] = args.tol_root
    if args.tol_match is not None:
        if not args.tol_match > 0:
            raise UsageError("--tol-match must be positive")
        overrides["coeff_match"] = args.tol_match
    tolerances = dataclasses.replace(DEFAULT, **overrides) if overrides else DEFAULT
    domain = _parse_domain(args.domain) if args.domain else None
    return RunConfig(
        command=args.command,
        inputs=tuple(args.inputs),
        domain=domain,
        grid_n=args.grid_n,
        part=args.part,
        t_samples=args.t_samples,
        format=args.format,
        out=args.out,
        tolerances=tolerances,
    )


def _validate(config: RunConfig) -> None:
    if not 16 <= config.grid_n <= 4096:
        raise UsageError("--grid must lie in [16, 4096]")
    if config.format not in _FORMATS[config.command]:
        allowed = ", ".join(_FORMATS[config.command])
        raise UsageError(
            f"format {config.format!r} not supported for {config.command} "
            f"(allowed: {allowed})"
        )
    if config.command == "loop" and config.t_samples < 1:
        raise UsageError("--t-samples must be at least 1")


# ---------------------------------------------------------------------------
# command bodies


def _roots_artifact(config: RunConfig, P: ComplexPoly) -> str:
    rs = P.roots(cfg=config.tolerances)
    if config.format == "csv":
        lines = ["re,im,multiplicity,residual"]
        for r in rs.roots:
            lines.append(
                f"{serialize.fmt(r.location.real)},{serialize.fmt(r.location.imag)},"
                f"{r.multiplicity},{serialize.fmt(r.residual)}"
            )
        return "\n".join(lines) + "\n"
    return serialize.dumps(
        {
            "degree": P.degree,
            "roots": [
                {
                    "location": serialize.complex_pair(r.location),
                    "multiplicity": r.multiplicity,
                    "residual": r.residual,
                }
                for r in rs.roots
            ],
        }
    )


def _curvature_artifact(config: RunConfig, P: ComplexPoly) -> str:
    domain = config.domain or curv.default_domain(P, config.tolerances)
    grid = curv.curvature_grid(P, domain, config.grid_n, config.grid_n, config.tolerances)
    if config.format == "csv":
        return curv.grid_to_csv(grid)
    if config.format == "svg":
        points = crit.critical_points(P, config.tolerances) if P.degree >= 2 else ()
        return svgrender.render_heatmap(grid, points)
    return serialize.dumps(curv.grid_to_json_dict(grid))


def _critical_artifact(config: RunConfig, P: ComplexPoly) -> str:
    points = crit.critical_points(P, config.tolerances)
    report = crit.gauss_lucas_report(P, cfg=config.tolerances)
    return serialize.dumps(
        {
            "critical_points": crit.critical_points_to_json(points),
            "gauss_lucas": crit.report_to_json_dict(report),
            "flat_bound_ok": crit.flat_set_bound_check(P, config.tolerances),
        }
    )


def _fibers_artifact(config: RunConfig, P: ComplexPoly) -> str:
    domain = config.domain or curv.default_domain(P, config.tolerances)
    sig = lvl.fiber_signature(P, config.part, domain, config.grid_n, config.tolerances)
    points = crit.critical_points(P, config.tolerances)
    if config.format == "svg":
        levels = list(sig.class_levels)
        return svgrender.render_levels(
            P, config.part, domain, config.grid_n, levels, points
        )
    doc = {"part": config.part}
    doc.update(lvl.signature_to_json_dict(sig, points))
    return serialize.dumps(doc)


def _equiv_artifact(config: RunConfig, P: ComplexPoly, Q: ComplexPoly) -> str:
    verdict = equiv.decide_equal_curvature(P, Q, config.tolerances)
    return serialize.dumps(equiv.verdict_to_json_dict(verdict))


def _loop_artifact(config: RunConfig, P: ComplexPoly) -> str:
    domain = config.domain or curv.default_domain(P, config.tolerances)
    samples = equiv.loop_scan(
        P, config.t_samples, domain, config.grid_n, config.tolerances
    )
    return serialize.dumps(equiv.loop_to_json_dict(samples, domain, config.grid_n))


def run(config: RunConfig) -> int:
    """Execute one command; print its artifact or a one-line error."""
    try:
        _validate(config)
        polys = [load_poly(path) for path in config.inputs]
        if config.command == "roots":
            text = _roots_artifact(config, polys[0])
        elif config.command == "curvature":
            text = _curvature_artifact(config, polys[0])
        elif config.command == "critical":
            text = _critical_artifact(config, polys[0])
        elif config.command == "fibers":
            text = _fibers_artifact(config, polys[0])
        elif config.command == "equiv":
            text = _equiv_artifact(config, polys[0], polys[1])
        elif config.command == "loop":
            text = _loop_artifact(config, polys[0])
        else:
            raise UsageError(f"unknown command {config.command!r}")
    except UsageError as exc:
        print(f"error:usage:{exc}", file=sys.stderr)
        return EXIT_USAGE
    except PolyFormatError as exc:
        print(f"error:parse:{exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GridSizeError, InsufficientDegreeError, ValueError) as exc:
        print(f"error:usage:{exc}", file=sys.stderr)
        return EXIT_USAGE
    except _NUMERIC_FAILURES as exc:
        print(f"error:numeric:{exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except AnalysisError as exc:  # safety net for new subtypes
        print(f"error:numeric:{exc}", file=sys.stderr)
        return EXIT_NUMERIC

    if config.out:
        try:
            with open(config.out, "w", encoding="utf-8", newline="\n") as handle:
                handle.write(text)
        except OSError as exc:
            print(f"error:io:{exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
    except UsageError as exc:
        print(f"error:usage:{exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(config)


def entrypoint() -> None:
    try:
        sys.exit(main())
    except BrokenPipeError:
        # Reader went away (e.g. piped into head); nothing left to say.
        sys.stderr.close()
        sys.exit(EXIT_OK)


if __name__ == "__main__":
    entrypoint()
