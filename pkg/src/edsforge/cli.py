"""Command-line interface: ``edsforge <command> [options]``.

Exit status is 0 when every check passes, 1 when a verification fails and 2
for usage errors or curves outside the derivation's hypotheses.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from edsforge import crosschecks, oeis, pipeline
from edsforge.curve import CubicCurve, CurveError
from edsforge.hankel import (
    HankelData,
    InsufficientTerms,
    NoFit,
    ZeroHankelPivot,
    ZeroScaleBase,
    jacobi_from_hankel,
    modified_hankel,
    hankel_transform,
    rescale_hankel,
    somos4_fit,
)
from edsforge.report import render
from edsforge.series import IntegerSequence, SeriesError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def curve_arg(text: str) -> CubicCurve:
    try:
        return CubicCurve.parse(text)
    except CurveError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def read_sequence(path: str) -> IntegerSequence:
    """A JSON document {"offset": n, "terms": ["p/q", ...]} or a raw b-file."""
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        return IntegerSequence(tuple(doc["terms"]), int(doc.get("offset", 0)))
    offset, terms = oeis.parse_bfile(text)
    return IntegerSequence(terms, offset)


def _sequence_and_scale(args) -> tuple:
    if args.input:
        return read_sequence(args.input), args.scale
    if args.curve is None:
        raise UsageError("give either --input FILE or --curve a,b,c,d")
    trace = pipeline.forward(args.curve, 2 * args.terms + 2, allow_singular=args.allow_singular)
    return trace.a, args.scale if args.scale is not None else args.curve.b


def _jf_report(jf) -> dict:
    return {"alphas": list(jf.alphas), "betas": list(jf.betas), "terminated": jf.terminated}


def _somos_report(fit) -> dict:
    if isinstance(fit, NoFit):
        return {"fit": None, "first_violation": fit.first_violation, "note": fit.reason, "passed": False}
    if fit is None:
        return {"fit": None, "note": "fewer than six terms", "passed": False}
    return {"fit": [fit.s, fit.t], "passed": True}


def cmd_derive(args) -> tuple:
    trace = pipeline.forward(args.curve, args.terms, allow_singular=args.allow_singular)
    hd = trace.hankel
    report = {
        "curve": str(args.curve), "equation": args.curve.equation(),
        "discriminant": args.curve.discriminant(), "terms": args.terms,
        "a": list(trace.a.terms),
        "hankel": {"h": list(hd.h), "hstar": list(hd.hstar), "htilde": list(hd.htilde)},
        "jfrac": _jf_report(trace.jf),
        "somos": _somos_report(trace.somos),
        "degenerate_at": trace.degenerate_at,
        "sign_classes_with_head": len({g for _, g in trace.head_assignments}),
    }
    return report, EXIT_OK


def cmd_verify(args) -> tuple:
    if args.depth < 6:
        raise UsageError("verify needs --depth of at least 6")
    report = pipeline.verify_conjectures(args.curve, args.depth)
    return report, EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_hankel(args) -> tuple:
    seq, scale = _sequence_and_scale(args)
    count = min(args.terms, (len(seq) + 1) // 2)
    h = hankel_transform(seq, count)
    report = {"terms": count, "h": h, "hstar": modified_hankel(seq, min(count, len(seq) // 2))}
    if scale is not None:
        report["scale_base"] = scale
        report["htilde"] = rescale_hankel(h, scale)
    return report, EXIT_OK


def cmd_jfrac(args) -> tuple:
    seq, _ = _sequence_and_scale(args)
    count = min(args.terms, len(seq) // 2)
    h, hs = hankel_transform(seq, count), modified_hankel(seq, count)
    return _jf_report(jacobi_from_hankel(h, hs)), EXIT_OK


def cmd_somos(args) -> tuple:
    seq, scale = _sequence_and_scale(args)
    if args.direct:
        values = list(seq.terms)
    else:
        count = min(args.terms, (len(seq) + 1) // 2)
        values = hankel_transform(seq, count)
        if scale is not None:
            values = rescale_hankel(values, scale)
    report = {"values": values, **_somos_report(somos4_fit(values))}
    return report, EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_points(args) -> tuple:
    E = args.curve
    trace = pipeline.forward(E, 2 * args.count + 4)
    hd = HankelData.of(trace.a, E.b)
    oracle = pipeline.point_multiples(E, args.count)
    recovered = pipeline.coords_from_hankel(E, hd, args.count)
    rows = [{"multiple": n + 1, "group_law": str(oracle[n]), "from_hankel": str(recovered[n]),
             "passed": str(oracle[n]) == str(recovered[n])} for n in range(args.count)]
    report = {"curve": str(E), "rows": rows, "passed": all(r["passed"] for r in rows)}
    return report, EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_oeis_check(args) -> tuple:
    report = crosschecks.run_all(offline=args.offline)
    return report, EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_sweep(args) -> tuple:
    report = pipeline.sweep(args.count, args.bound, args.seed, args.depth, args.jobs)
    return report, EXIT_OK if report["passed"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edsforge",
        description="Integer sequences with Somos-4 Hankel transforms from cubic curves.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, curve_required=False):
        p.add_argument("--curve", type=curve_arg, required=curve_required,
                       help="coefficients a,b,c,d[,e] of y^2+axy+by = x^3+cx^2+dx+e")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--offline", action="store_true", help="never contact oeis.org")
        p.add_argument("--allow-singular", action="store_true", help="admit singular cubics")

    p = sub.add_parser("derive", help="run the curve-to-sequence derivation")
    common(p, True)
    p.add_argument("--terms", type=int, default=12)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("verify", help="check the three conjectures on one curve")
    common(p, True)
    p.add_argument("--depth", type=int, default=6)
    p.set_defaults(func=cmd_verify)

    for name, func, helptext in (("hankel", cmd_hankel, "Hankel and modified Hankel determinants"),
                                 ("jfrac", cmd_jfrac, "J-fraction coefficients"),
                                 ("somos", cmd_somos, "fit Somos-4 parameters")):
        p = sub.add_parser(name, help=helptext)
        common(p)
        p.add_argument("--input", help="sequence file (JSON or b-file); '-' for stdin")
        p.add_argument("--terms", type=int, default=8, help="number of determinants")
        p.add_argument("--scale", type=int, help="rescale h_n by b^(n^2-2n)")
        if name == "somos":
            p.add_argument("--direct", action="store_true",
                           help="fit the input terms themselves instead of their Hankel transform")
        p.set_defaults(func=func)

    p = sub.add_parser("points", help="multiples of (0,0) by group law and from Hankel data")
    common(p, True)
    p.add_argument("--count", type=int, default=6)
    p.set_defaults(func=cmd_points)

    p = sub.add_parser("oeis-check", help="cross-check against the cited OEIS sequences")
    common(p)
    p.set_defaults(func=cmd_oeis_check)

    p = sub.add_parser("sweep", help="conjecture harness over random curves")
    common(p)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--bound", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report, code = args.func(args)
    except (UsageError, pipeline.PipelineError, ZeroScaleBase, CurveError,
            InsufficientTerms, ZeroHankelPivot, SeriesError, oeis.OeisError, ValueError) as exc:
        error = {"error": type(exc).__name__, "message": str(exc), "passed": False}
        sys.stdout.write(render(error, getattr(args, "format", "text")))
        print(f"edsforge: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(render(report, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
