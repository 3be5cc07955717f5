"""Command line front end.

Exit status: 0 on success or a valid check, 1 when a check fails, 2 on
usage or input errors.  Text reports start with a ``format: 1`` line;
``--json`` prints one JSON object instead.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from . import constructions as cx
from . import dsl, serialize
from .core import Computad, ComputadError, Gen, Term, count_cells, validate_computad
from .invertibility import (
    Fragment, WitnessFunction, search_tower, unfold_witness, verify_tower, witness_closure,
)
from .morphisms import ComputadMap, iso_check, validate_map
from .span_model import certify_distinct, certify_noninvertible

FORMAT = 1


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# file handling


def load_computad(path: str, block: Optional[str] = None) -> Computad:
    text = _read(path)
    if path.endswith(".json"):
        try:
            return serialize.computad_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise UsageError(f"{path}: invalid JSON: {exc}") from None
    doc = dsl.parse_dsl(text)
    if block is None:
        return doc.first()
    if block not in doc.blocks:
        raise UsageError(f"{path}: no block named {block!r}")
    return doc.blocks[block]


def save_computad(c: Computad, path: str, name: str = "C") -> None:
    if path.endswith(".json"):
        text = serialize.dumps(serialize.computad_to_json(c))
    else:
        text = dsl.format_computad(c, name)
    Path(path).write_text(text, encoding="utf-8")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def parse_cli_term(text: str, c: Computad) -> Term:
    """A generator name as typed (``u(0)``) or a term in the DSL syntax."""
    if text in c:
        return Gen(text)
    return dsl.parse_term(text)


def load_assignment(path: str) -> dict[str, Term]:
    text = _read(path)
    if path.endswith(".json"):
        return serialize.assignment_from_json(json.loads(text))
    return dsl.parse_assignments(text)


def load_witness(path: str, c: Computad) -> WitnessFunction:
    text = _read(path)
    if path.endswith(".json"):
        raw = json.loads(text)
        entries = {k: tuple(serialize.term_from_json(t) for t in v) for k, v in raw.items()}
        return WitnessFunction(c, entries)
    return WitnessFunction(c, dict(dsl.parse_witnesses(text)))


# ---------------------------------------------------------------------------
# output


class Output:
    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.data: dict[str, Any] = {"format": FORMAT}
        self.lines: list[str] = [f"format: {FORMAT}"]

    def add(self, key: str, value: Any, text: Optional[str] = None) -> None:
        self.data[key] = value
        if text is not None:
            self.lines.append(text)

    def text(self, line: str) -> None:
        self.lines.append(line)

    def emit(self) -> None:
        if self.as_json:
            sys.stdout.write(serialize.dumps(self.data))
        else:
            sys.stdout.write("\n".join(self.lines) + "\n")


def _report(out: Output, report) -> int:
    out.add("valid", report.valid, "valid" if report.valid else "invalid")
    out.add("issues", list(report.issues))
    out.add("notes", list(report.notes))
    for issue in report.issues:
        out.text(f"issue: {issue}")
    for note in report.notes:
        out.text(f"note: {note}")
    return 0 if report.valid else 1


# ---------------------------------------------------------------------------
# subcommands


BUILDERS = {
    "E": lambda a: cx.standard_e(_need(a.dim, "--dim")),
    "I": lambda a: cx.walking_iso(),
    "globe": lambda a: cx.globe(_need(a.dim, "--dim")),
    "bglobe": lambda a: cx.boundary_globe(_need(a.dim, "--dim")),
    "eomega": lambda a: cx.e_omega(_need(a.copies, "--copies"), _need(a.dim, "--dim")),
    "pair": lambda a: cx.composable_pair(_need(a.dim, "--dim")),
    "stage": lambda a: cx.e_stage(_need(a.dim, "--dim")),
}


def _need(value, flag):
    if value is None:
        raise UsageError(f"this construction needs {flag}")
    return value


def cmd_build(a, out: Output) -> int:
    try:
        c = BUILDERS[a.kind](a)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    save_computad(c, a.output, a.kind)
    counts = count_cells(c)
    out.add("output", a.output, f"wrote {a.output}")
    out.add("counts", {str(k): v for k, v in counts.items()}, _counts_line(counts))
    return 0


def _counts_line(counts: dict[int, int]) -> str:
    return " ".join(f"{k}:{v}" for k, v in sorted(counts.items()))


def cmd_check(a, out: Output) -> int:
    return _report(out, validate_computad(load_computad(a.file, a.block)))


def cmd_count(a, out: Output) -> int:
    counts = count_cells(load_computad(a.file, a.block))
    out.add("counts", {str(k): v for k, v in sorted(counts.items())}, _counts_line(counts))
    return 0


def cmd_map_check(a, out: Output) -> int:
    m = ComputadMap(load_computad(a.source), load_computad(a.target), load_assignment(a.assign))
    return _report(out, validate_map(m))


def cmd_iso(a, out: Output) -> int:
    m = iso_check(load_computad(a.a), load_computad(a.b))
    if m is None:
        out.add("isomorphic", False, "none found")
        return 1
    out.add("isomorphic", True, "isomorphic")
    out.add("witness", {n: str(t) for n, t in m.assign.items()})
    for n, t in m.assign.items():
        out.text(f"{dsl.format_name(n)} := {dsl.format_term(t)}")
    return 0


def cmd_tower(a, out: Output) -> int:
    c = load_computad(a.complex, a.block)
    f = parse_cli_term(a.arrow, c)
    fragment = Fragment.parse(a.fragment)
    if a.action == "verify":
        if a.tower:
            tower = serialize.tower_from_json(json.loads(_read(a.tower)))
        elif a.witness:
            try:
                tower = unfold_witness(c, load_witness(a.witness, c), f, a.depth)
            except ComputadError as exc:
                out.add("valid", False, f"invalid\nissue: {exc}")
                out.add("issues", [str(exc)])
                return 1
        else:
            raise UsageError("tower verify needs --tower or --witness")
        out.add("depth", tower.depth, f"depth: {tower.depth}")
        return _report(out, verify_tower(c, tower, a.depth))
    if a.action == "search":
        depth = a.depth if a.depth is not None else c.max_dim
        r = search_tower(c, f, depth, fragment)
        out.add("best_depth", r.best_depth, f"best_depth: {r.best_depth}")
        out.add("fragment", r.fragment, f"fragment: {r.fragment}")
        out.add("frontier", [_cell_json(x) for x in r.frontier])
        for x in r.frontier:
            out.text(f"frontier: {dsl.format_term(x.cell)} level {x.level} dim {x.dim} "
                     f"{x.reason} budget {x.budget}")
        out.add("tower", serialize.tower_to_json(r.tower))
        return 0
    report = witness_closure(c, f, fragment)
    out.add("status", report.status)
    out.add("fragment", report.fragment)
    out.add("branches", [{
        "choice": None if b.choice is None else [str(t) for t in b.choice],
        "depth": b.depth, "status": b.status, "closure_sizes": b.closure_sizes,
        "dying": [_cell_json(x) for x in b.dying],
    } for b in report.branches])
    for line in report.summary().splitlines():
        out.text(line)
    out.text(f"fragment: {report.fragment}")
    return 0


def _cell_json(x) -> dict:
    return {"cell": serialize.term_to_json(x.cell), "level": x.level, "dim": x.dim,
            "reason": x.reason, "budget": x.budget}


def cmd_certify(a, out: Output) -> int:
    c = load_computad(a.complex, a.block)
    if a.kind == "distinct":
        if len(a.cells) != 2:
            raise UsageError("certify distinct needs two generator names")
        cert = certify_distinct(c, a.cells[0], a.cells[1])
    else:
        if len(a.cells) != 1:
            raise UsageError("certify noninv needs one term")
        cert = certify_noninvertible(c, parse_cli_term(a.cells[0], c))
    data = serialize.certificate_to_json(cert)
    out.add("certificate", data, f"{cert.kind}")
    out.text("values: " + " ".join(str(v) for v in cert.values))
    return 0 if cert.certified else 1


def cmd_export(a, out: Output) -> int:
    # DSL -> JSON
    c = load_computad(a.input, a.block)
    Path(a.output).write_text(serialize.dumps(serialize.computad_to_json(c)), encoding="utf-8")
    out.add("output", a.output, f"wrote {a.output}")
    return 0


def cmd_import(a, out: Output) -> int:
    # JSON -> DSL
    c = serialize.computad_from_json(json.loads(_read(a.input)))
    Path(a.output).write_text(dsl.format_computad(c, a.name), encoding="utf-8")
    out.add("output", a.output, f"wrote {a.output}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    # subcommands accept --json too without clobbering a value given earlier
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")

    p = argparse.ArgumentParser(prog="computads", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="build a named complex")
    b.add_argument("kind", choices=sorted(BUILDERS))
    b.add_argument("--dim", type=int)
    b.add_argument("--copies", type=int)
    b.add_argument("-o", "--output", required=True)
    b.set_defaults(func=cmd_build)

    for name, func in (("check", cmd_check), ("count", cmd_count)):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("file")
        s.add_argument("--block")
        s.set_defaults(func=func)

    m = sub.add_parser("map", parents=[common], help="computad maps")
    m.add_argument("action", choices=["check"])
    m.add_argument("--from", dest="source", required=True)
    m.add_argument("--to", dest="target", required=True)
    m.add_argument("--assign", required=True)
    m.set_defaults(func=cmd_map_check)

    t = sub.add_parser("tower", parents=[common], help="inverse towers")
    t.add_argument("action", choices=["verify", "search", "closure"])
    t.add_argument("--complex", required=True)
    t.add_argument("--block")
    t.add_argument("--arrow", required=True)
    t.add_argument("--depth", type=int)
    t.add_argument("--fragment", default="generators")
    t.add_argument("--witness")
    t.add_argument("--tower")
    t.set_defaults(func=cmd_tower)

    c = sub.add_parser("certify", parents=[common], help="span-model certificates")
    c.add_argument("kind", choices=["distinct", "noninv"])
    c.add_argument("--complex", required=True)
    c.add_argument("--block")
    c.add_argument("cells", nargs="+")
    c.set_defaults(func=cmd_certify)

    i = sub.add_parser("iso", parents=[common], help="search for an isomorphism")
    i.add_argument("a")
    i.add_argument("b")
    i.set_defaults(func=cmd_iso)

    e = sub.add_parser("export", parents=[common], help="DSL to JSON")
    e.add_argument("input")
    e.add_argument("-o", "--output", required=True)
    e.add_argument("--block")
    e.set_defaults(func=cmd_export)

    im = sub.add_parser("import", parents=[common], help="JSON to DSL")
    im.add_argument("input")
    im.add_argument("-o", "--output", required=True)
    im.add_argument("--name", default="C")
    im.set_defaults(func=cmd_import)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = Output(args.json)
    try:
        if args.command == "tower" and args.action == "verify" and args.depth is None:
            args.depth = 0
        status = args.func(args, out)
    except (UsageError, dsl.ParseError, serialize.FormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    except ComputadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out.emit()
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
