"""Command-line entry point: classify, solve, simulate, kplumber, tile."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Optional

from . import kplumber as kp
from . import library, tiling
from .classify import AlgorithmId, GammaSpec, Verdict, classify
from .formats import (
    ParseError,
    gadget_to_text,
    instance_to_json,
    orientation_to_lines,
    parse_gadget_json,
    parse_gadget_text,
    parse_instance_json,
    parse_instance_text,
    parse_type,
)
from .gadgets import derived_type
from .relations import Relation, is_symmetric
from .search import EnumerationCapError
from .solve import NONE_KNOWN, SOLVERS, count_brute, dispatch

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_UNKNOWN = 3


@dataclass
class Report:
    command: str
    input_digest: str = ""
    verdict: str = ""
    algorithm: str = ""
    case: str = ""
    detail: dict = field(default_factory=dict)
    seed: Optional[int] = None
    timing_s: Optional[float] = None

    def to_json(self) -> str:
        doc = {k: v for k, v in asdict(self).items() if v not in ("", None)}
        return json.dumps(doc, indent=2, sort_keys=True)


def _digest(data: str) -> str:
    return hashlib.sha256(data.encode()).hexdigest()[:16]


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise SystemExit(f"cannot read {path}: {exc}")


def _load_instance(path: str):
    text = _read(path)
    if text.lstrip().startswith("{"):
        return parse_instance_json(text), text
    return parse_instance_text(text), text


def _load_gadget(path: str):
    text = _read(path)
    if text.lstrip().startswith("{"):
        return parse_gadget_json(text), text
    return parse_gadget_text(text), text


def _emit(report: Report, fmt: str, lines: list[str]) -> None:
    if fmt == "json":
        print(report.to_json())
    else:
        for line in lines:
            print(line)


def _parse_gamma_file(text: str) -> tuple[GammaSpec, list[str]]:
    sym_types = []
    dups = []
    terminators = []
    has_constants = False
    notes = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "constants":
            has_constants = True
            continue
        if line.startswith("terminator"):
            try:
                terminators.append(int(line.split()[1]))
            except (IndexError, ValueError) as exc:
                raise ParseError(line_no, f"bad terminator: {exc}") from exc
            continue
        try:
            rel = parse_type(line)
        except ValueError as exc:
            raise ParseError(line_no, str(exc)) from exc
        spec = is_symmetric(rel)
        if spec is not None:
            sym_types.append(spec)
            notes.append(f"{spec!r}")
        else:
            dups.append(rel)
            notes.append(f"{rel!r}")
    return (
        GammaSpec(
            frozenset(sym_types), frozenset(dups), has_constants, frozenset(terminators)
        ),
        notes,
    )


def cmd_classify(args) -> int:
    text = _read(args.gamma)
    try:
        g, _ = _parse_gamma_file(text)
    except ParseError as exc:
        print(f"{args.gamma}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    g = GammaSpec(
        g.symmetric_types,
        g.duplicators,
        g.has_constants or args.constants,
        g.terminators | frozenset(args.terminator or ()),
    )
    t0 = time.monotonic()
    verdict = classify(g, args.planar)
    dt = time.monotonic() - t0
    report = Report(
        command="classify",
        input_digest=_digest(text),
        verdict=verdict.tag,
        algorithm=verdict.algorithm.value if verdict.algorithm else "",
        case=verdict.case_label or verdict.route or verdict.note,
        detail={"planar": args.planar},
        seed=args.seed,
        timing_s=round(dt, 6) if args.timings else None,
    )
    _emit(report, args.format, [f"{verdict.tag}: {report.case}"])
    return EXIT_UNKNOWN if verdict.tag == "Unknown" else EXIT_OK


def cmd_solve(args) -> int:
    try:
        inst, text = _load_instance(args.instance)
    except (ParseError, ValueError) as exc:
        print(f"{args.instance}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    t0 = time.monotonic()
    algo = args.algorithm
    count = None
    if args.count:
        count = count_brute(inst)
        result = None if count == 0 else "counted"
    if algo == "auto":
        result = dispatch(inst, allow_brute=args.allow_brute)
        if result is NONE_KNOWN:
            report = Report(
                command="solve",
                input_digest=_digest(text),
                verdict="unknown",
                case="no implemented polynomial algorithm matches; re-run with --allow-brute",
                seed=args.seed,
            )
            _emit(report, args.format, [report.case])
            return EXIT_UNKNOWN
    else:
        aid = {a.value: a for a in AlgorithmId}.get(algo)
        if aid is None:
            print(f"unknown algorithm {algo!r}", file=sys.stderr)
            return EXIT_USAGE
        result = SOLVERS[aid](inst)
    dt = time.monotonic() - t0
    status = "sat" if result is not None else "unsat"
    detail: dict = {}
    if result is not None:
        detail["orientation"] = orientation_to_lines(inst, result)
    if count is not None:
        detail["count"] = count
        status = f"count={count}"
    report = Report(
        command="solve",
        input_digest=_digest(text),
        verdict=status,
        algorithm=algo,
        detail=detail,
        seed=args.seed,
        timing_s=round(dt, 6) if args.timings else None,
    )
    lines = [status] + detail.get("orientation", [])
    _emit(report, args.format, lines)
    return EXIT_OK if result is not None or (count or 0) > 0 else EXIT_NEGATIVE


def cmd_simulate(args) -> int:
    try:
        g, text = _load_gadget(args.gadget)
    except (ParseError, ValueError) as exc:
        print(f"{args.gadget}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        derived = derived_type(g, cap=args.cap)
    except (ValueError, EnumerationCapError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    match = None
    if args.target:
        try:
            target = parse_type(args.target)
        except ValueError as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_USAGE
        match = derived == target
    spec = is_symmetric(derived)
    report = Report(
        command="simulate",
        input_digest=_digest(text),
        verdict="match" if match else ("mismatch" if match is not None else "derived"),
        case=repr(spec) if spec else repr(derived),
        detail={"derived_words": derived.to_strings()},
        seed=args.seed,
    )
    _emit(
        report,
        args.format,
        [f"derived: {report.case}"]
        + ([f"target {'matches' if match else 'differs'}"] if match is not None else []),
    )
    if match is False:
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_kplumber(args) -> int:
    text = _read(args.grid)
    try:
        grid = kp.parse_grid(text)
    except ValueError as exc:
        print(f"{args.grid}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        rg = kp.solve_kplumber(grid, allow_brute=args.allow_brute)
    except kp.PolyFragmentViolation as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    status = "sat" if rg is not None else "unsat"
    detail = {}
    lines = [status]
    if rg is not None:
        detail["cells"] = [
            ["".join(sorted(s)) for s in row] for row in rg.cells
        ]
        lines += kp.render(rg).splitlines()
    report = Report(
        command="kplumber",
        input_digest=_digest(text),
        verdict=status,
        detail=detail,
        seed=args.seed,
    )
    _emit(report, args.format, lines)
    return EXIT_OK if rg is not None else EXIT_NEGATIVE


def _parse_tiles(spec: str) -> tiling.TileSet:
    names = [t.strip() for t in spec.split(",") if t.strip()]
    shapes = []
    for name in names:
        if name in tiling.SHAPES:
            shapes.append(tiling.SHAPES[name])
        else:
            cells = []
            for tok in name.split(";"):
                r, c = tok.split(":")
                cells.append((int(r), int(c)))
            shapes.append(frozenset(cells))
    return tiling.TileSet(tuple(shapes))


def cmd_tile(args) -> int:
    if args.tile_cmd == "verify-gadget":
        return cmd_tile_verify(args)
    text = _read(args.region)
    try:
        region = tiling.parse_region(text)
        tiles = _parse_tiles(args.tiles)
    except (ValueError, KeyError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    count = None
    result = None
    if args.count:
        count = tile_count = tiling.tile_exact_cover(region, tiles, count=True)
    if args.algorithm == "greedy":
        names = {s for s in tiles.shapes}
        if names == {tiling.SHAPES["O"]}:
            result = tiling.tile_square_greedy(region)
        elif names == {tiling.SHAPES["S"]}:
            result = tiling.tile_skew_greedy(region)
        elif names == {tiling.SHAPES["Z"]}:
            result = tiling.tile_skew_greedy(region, mirror=True)
        else:
            print("greedy mode covers only the O, S, or Z tetromino", file=sys.stderr)
            return EXIT_USAGE
    else:
        result = tiling.tile_exact_cover(region, tiles)
    status = "sat" if result is not None else "unsat"
    detail: dict = {}
    if count is not None:
        detail["count"] = count
    if result:
        detail["pieces"] = [sorted(map(list, piece)) for piece in result]
    report = Report(
        command="tile",
        input_digest=_digest(text),
        verdict=status,
        algorithm=args.algorithm,
        detail=detail,
        seed=args.seed,
    )
    _emit(report, args.format, [status] + ([f"count {count}"] if count is not None else []))
    return EXIT_OK if result is not None or (count or 0) > 0 else EXIT_NEGATIVE


def cmd_tile_verify(args) -> int:
    text = _read(args.gadget)
    doc = json.loads(text)
    region = tiling.parse_region("\n".join(doc["region"]))
    ports = tuple(
        tuple(tuple(c) for c in group) if isinstance(group[0], list) else (tuple(group),)
        for group in doc["ports"]
    )
    tiles = _parse_tiles(doc["tiles"])
    gadget = tiling.PortGadget(region, ports, tiles)
    derived = tiling.verify_port_gadget(gadget)
    target = parse_type(args.target)
    ok = derived == target
    report = Report(
        command="tile verify-gadget",
        input_digest=_digest(text),
        verdict="match" if ok else "mismatch",
        detail={"derived_words": derived.to_strings()},
        seed=args.seed,
    )
    _emit(report, args.format, [report.verdict])
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_verify_suite(args) -> int:
    t0 = time.monotonic()
    failures = []
    lines = []
    try:
        for name, ok, msg in library.verify_all():
            lines.append(f"{'PASS' if ok else 'FAIL'} {name}")
            if not ok:
                failures.append(msg)
    except (ParseError, ValueError) as exc:
        print(f"gadget library corrupt: {exc}", file=sys.stderr)
        return EXIT_USAGE
    from .acceptance_table import curated_table

    for label, ok in curated_table():
        lines.append(f"{'PASS' if ok else 'FAIL'} classifier: {label}")
        if not ok:
            failures.append(label)
    dt = time.monotonic() - t0
    report = Report(
        command="verify-suite",
        verdict="pass" if not failures else "fail",
        detail={"failures": failures, "checks": len(lines)},
        seed=args.seed,
        timing_s=round(dt, 6) if args.timings else None,
    )
    _emit(report, args.format, lines + [report.verdict])
    return EXIT_OK if not failures else EXIT_NEGATIVE


def main(argv: Optional[list[str]] = None) -> int:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--timings", action="store_true")
    parser = argparse.ArgumentParser(
        prog="gorient", description="graph-orientation toolkit", parents=[common]
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    def add_parser(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add_parser("classify", help="classify a set of vertex types")
    p.add_argument("--gamma", required=True)
    p.add_argument("--planar", action="store_true")
    p.add_argument("--constants", action="store_true")
    p.add_argument("--terminator", type=int, action="append")
    p.set_defaults(func=cmd_classify)

    p = add_parser("solve", help="solve one orientation instance")
    p.add_argument("--instance", required=True)
    p.add_argument(
        "--algorithm",
        default="auto",
        help="auto or one of: " + ", ".join(a.value for a in AlgorithmId),
    )
    p.add_argument("--count", action="store_true")
    p.add_argument("--allow-brute", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = add_parser("simulate", help="derive a gadget's external type")
    p.add_argument("--gadget", required=True)
    p.add_argument("--target")
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_simulate)

    p = add_parser("kplumber", help="solve a pipe-rotation grid")
    p.add_argument("--grid", required=True)
    p.add_argument("--allow-brute", action="store_true")
    p.set_defaults(func=cmd_kplumber)

    p = add_parser("tile", help="tile a region, or verify a port gadget")
    tile_sub = p.add_subparsers(dest="tile_cmd")
    p.add_argument("--region")
    p.add_argument("--tiles")
    p.add_argument("--algorithm", choices=("greedy", "dlx"), default="dlx")
    p.add_argument("--count", action="store_true")
    p.set_defaults(func=cmd_tile, tile_cmd=None)
    pv = tile_sub.add_parser("verify-gadget", parents=[common])
    pv.add_argument("--gadget", required=True)
    pv.add_argument("--target", required=True)
    pv.set_defaults(func=cmd_tile, tile_cmd="verify-gadget")

    p = add_parser("verify-suite", help="re-verify the shipped constructions")
    p.set_defaults(func=cmd_verify_suite)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
