"""Command-line front end: ``skeinrep <command> --genus G --points k1,..,kn --level p``.

Exit codes: 0 success, 1 usage or invalid spec, 2 integrity failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import recoupling
from .repalg import IntegrityError, ZeroSpace, analyze
from .spine import SpecError, SurfaceSpec, build_spine, enumerate_colorings
from .tqft_ops import (
    CurveDesc,
    SpectrumError,
    UnsupportedCurve,
    basis_norms,
    curve_operator,
    dehn_twist,
    point_push,
)

log = logging.getLogger("skeinrep")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _points(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad point colors {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--genus", type=int, default=0)
    common.add_argument("--points", type=_points)
    common.add_argument("--level", type=int, required=True)
    common.add_argument("--output", type=Path, help="write JSON here instead of stdout")
    common.add_argument("--cache-dir", type=Path, help="recoupling table cache (default: $SKEINREP_CACHE_DIR)")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--json", action="store_true", help="JSON output where plain text is the default")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = _Parser(prog="skeinrep", description="Exact SU(2) TQFT operators and irreducibility checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("dim", parents=[common])
    p.add_argument("--shape", default="caterpillar", choices=["caterpillar", "balanced", "right-comb"])
    p = sub.add_parser("basis", parents=[common])
    p.add_argument("--shape", default="caterpillar", choices=["caterpillar", "balanced", "right-comb"])
    p = sub.add_parser("norms", parents=[common])
    p.add_argument("--method", default="network", choices=["network", "closed"])

    for name in ("curve-op", "twist"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--curve", required=True)
        p.add_argument("--norms", action="store_true", help="also emit the basis norms")
        if name == "twist":
            p.add_argument("--inverse", action="store_true")
    p = sub.add_parser("push", parents=[common])
    p.add_argument("--gen", type=int, required=True)
    p.add_argument("--norms", action="store_true")

    p = sub.add_parser("check", parents=[common])
    p.add_argument("--generators", default="point-pushing", choices=["point-pushing", "curves", "both"])
    p.add_argument("--method", default="both", choices=["both", "saturation", "commutant"])
    p.add_argument("--certificate", action="store_true")

    p = sub.add_parser("validate-recoupling", parents=[common])
    p.add_argument("--max-color", type=int, default=4)
    return parser


def _spec(args) -> SurfaceSpec:
    if not args.points:
        raise UsageError("--points is required")
    return SurfaceSpec(args.genus, args.points, args.level)


def _emit(args, obj) -> None:
    text = obj if isinstance(obj, str) else json.dumps(obj, sort_keys=True)
    if args.output:
        args.output.write_text(text + "\n")
    else:
        print(text)


def _with_norms(args, spec, payload: dict) -> dict:
    if getattr(args, "norms", False):
        payload["norms"] = basis_norms(spec).to_json()["norms"]
    return payload


def _run(args) -> int:
    cmd = args.command
    if cmd == "validate-recoupling":
        entries = recoupling.validate(args.level, args.max_color, workers=args.threads)
        failed = [e for e in entries if not e.ok]
        if args.json:
            _emit(args, {"p": args.level, "max_color": args.max_color, "entries": [e.as_dict() for e in entries],
                         "passed": len(entries) - len(failed), "failed": len(failed)})
        else:
            lines = [f"{'PASS' if e.ok else 'FAIL'} {e.kind}{e.labels}" for e in entries]
            lines.append(f"{len(entries) - len(failed)}/{len(entries)} entries pass at p={args.level}")
            _emit(args, "\n".join(lines))
        return 2 if failed else 0

    spec = _spec(args)
    if cmd == "dim":
        n = len(enumerate_colorings(build_spine(spec, args.shape)))
        _emit(args, {"dim": n} if args.json else str(n))
    elif cmd == "basis":
        _emit(args, [c.as_dict() for c in enumerate_colorings(build_spine(spec, args.shape))])
    elif cmd == "norms":
        _emit(args, basis_norms(spec, args.method).to_json())
    elif cmd == "curve-op":
        op = curve_operator(spec, CurveDesc.parse(args.curve))
        _emit(args, _with_norms(args, spec, {"curve": args.curve, "matrix": op.to_json()}))
    elif cmd == "twist":
        op = dehn_twist(spec, CurveDesc.parse(args.curve), inverse=args.inverse)
        _emit(args, _with_norms(args, spec, {"curve": args.curve, "inverse": args.inverse, "matrix": op.to_json()}))
    elif cmd == "push":
        op = point_push(spec, args.gen)
        _emit(args, _with_norms(args, spec, {"gen": args.gen, "matrix": op.to_json()}))
    elif cmd == "check":
        report = analyze(spec, args.generators, args.method, threads=args.threads)
        if args.json or args.certificate:
            _emit(args, report.to_json(certificate=args.certificate))
        else:
            _emit(args, f"{report.verdict} (dim {report.dim}, algebra_dim {report.algebra_dim}, "
                        f"commutant_dim {report.commutant_dim})")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"skeinrep: {exc}", file=sys.stderr)
        return 1
    logging.basicConfig(level=logging.WARNING - 10 * args.verbose, format="%(levelname)s %(message)s")
    if args.threads < 1:
        print("skeinrep: --threads must be >= 1", file=sys.stderr)
        return 1

    table = None
    if not args.no_cache:
        directory = args.cache_dir or recoupling.cache_dir()
        if directory is not None:
            table = recoupling.RecouplingTable.for_level(args.level, directory)
            log.info("recoupling cache %s (%d entries)", table.path, len(table.entries))
    recoupling.use_table(table)
    try:
        status = _run(args)
    except (UsageError, SpecError, UnsupportedCurve, ZeroSpace, ValueError) as exc:
        print(f"skeinrep: {exc}", file=sys.stderr)
        return 1
    except (SpectrumError, IntegrityError) as exc:
        print(f"skeinrep: integrity error: {exc}", file=sys.stderr)
        return 2
    finally:
        recoupling.use_table(None)
    if table is not None:
        table.save()
    return status


if __name__ == "__main__":
    sys.exit(main())
