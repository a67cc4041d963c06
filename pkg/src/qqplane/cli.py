"""Command line interface: ``qqplane <command> ...``.

Exit codes: 0 when every check passes (or output was produced), 1 when a
verification failed, 2 for usage and parse errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass, field

from .abgroup import AbGroup, format_elt, parse_elt
from .classify import (
    ClassRecord,
    list_p3,
    list_p4,
    solve_congruence_A,
    solve_congruence_B,
    verify_record,
)
from .cocycle import TwoCocycle, check_2cocycle, check_3cocycle, parse_cocycle
from .cyclo import parse_zeta
from .hopfquiver import PathVec, format_path, parse_path
from .majid import (
    ArrowType,
    InfiniteOrderError,
    MajidStructure,
    check_bimodule_axioms,
    closed_form_power,
    left_power,
    nilpotency_order,
    shuffle,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
RECORD_HEADER = ["family", "group", "cocycle", "params", "N1", "N2", "dim", "verified"]
CHECK_HEADER = ["check", "ok", "checked", "counterexample", "detail"]
TERM_HEADER = ["path", "coeff"]


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# structure files
# --------------------------------------------------------------------------

@dataclass
class JobSpec:
    """Parsed structure file."""

    group: AbGroup | None = None
    cocycle: object = None
    arrows: list = field(default_factory=list)
    ambient: int | None = None


_ARROW = re.compile(r"arrow\s+(\w+)\s*=\s*(\([^)]*\))\s*(?:#\s*(\d+))?\s*:\s*(.+)")


def parse_structure(text: str) -> JobSpec:
    """Key-value lines: ``group = Z(2)xZ(2)``, ``cocycle = rank2(2,2;1,0,0)``,
    ``arrow X = (1,0) : zeta(4)^1, zeta(1)^0`` and optionally ``ambient = 4``."""
    job = JobSpec()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("arrow"):
            m = _ARROW.fullmatch(line)
            if not m:
                raise UsageError(f"line {lineno}: bad arrow declaration {raw!r}")
            name, cls, copy, sig = m.groups()
            try:
                sigma = tuple(parse_zeta(s) for s in sig.split(","))
                job.arrows.append(ArrowType(name, parse_elt(cls), sigma, int(copy or 0)))
            except ValueError as exc:
                raise UsageError(f"line {lineno}: {exc}") from None
            continue
        if "=" not in line:
            raise UsageError(f"line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        try:
            if key == "group":
                job.group = AbGroup.parse(value)
            elif key == "cocycle":
                job.cocycle = parse_cocycle(value)
            elif key == "ambient":
                job.ambient = int(value)
            else:
                raise UsageError(f"line {lineno}: unknown key {key!r}")
        except ValueError as exc:
            raise UsageError(f"line {lineno}: {exc}") from None
    if job.cocycle is None:
        raise UsageError("structure file needs a cocycle")
    if job.group is None:
        job.group = job.cocycle.group()
    return job


def build_structure(job: JobSpec, cap: int) -> MajidStructure:
    try:
        types = [ArrowType(t.name, job.group.elt(t.class_elt), t.sigma, t.copy) for t in job.arrows]
        return MajidStructure(job.group, job.cocycle, types, job.ambient, cap=cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _names(S: MajidStructure) -> dict:
    return {(t.class_elt, t.copy): t.name for t in S.types}


def _label_map(S: MajidStructure) -> dict:
    return {t.name: (t.class_elt, t.copy) for t in S.types}


def _terms(S: MajidStructure, v) -> list[dict]:
    names = _names(S)
    return [{"path": format_path(p, names, S.group), "coeff": c.serialize()} for p, c in v]


# --------------------------------------------------------------------------
# output
# --------------------------------------------------------------------------

def emit_report(results: list, fmt: str, kind: str = "checks") -> str:
    """Deterministic serialization of a list of plain dicts."""
    if fmt == "json":
        return json.dumps(results, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        header = {"records": RECORD_HEADER, "checks": CHECK_HEADER, "terms": TERM_HEADER}.get(kind)
        if header is None:
            header = sorted({k for r in results for k in r})
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in results:
            w.writerow([_cell(r.get(h)) for h in header])
        return buf.getvalue()
    if fmt == "text":
        lines = []
        for r in results:
            lines.append("; ".join(f"{k}={_cell(r[k])}" for k in sorted(r)))
        return "\n".join(lines) + ("\n" if lines else "")
    raise UsageError(f"unknown format {fmt!r}")


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, dict) and "literal" in v:
        return str(v["literal"])
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    return str(v)


def _record_row(rec: ClassRecord) -> dict:
    return rec.to_json()


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def _cmd_cocycle_check(args) -> tuple[list, str, bool]:
    try:
        phi = parse_cocycle(args.cocycle)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    G = phi.group()
    res = [check_3cocycle(phi, G, cap=args.max_group_order)]
    for g in G.enumerate(args.max_group_order):
        r = check_2cocycle(TwoCocycle(phi, g), G, cap=args.max_group_order)
        r.name = f"2-cocycle phi~_{format_elt(g)}"
        res.append(r)
    out = [dict(r.as_dict(), cocycle=str(phi)) for r in res]
    return out, "checks", all(res)


def _load_structure(args) -> MajidStructure:
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(str(exc)) from None
    return build_structure(parse_structure(text), args.max_group_order)


def _cmd_bimodule_check(args):
    S = _load_structure(args)
    r = check_bimodule_axioms(S)
    return [r.as_dict()], "checks", r.ok


def _cmd_shuffle(args):
    S = _load_structure(args)
    labels = _label_map(S)
    try:
        p = parse_path(args.left, S.group, labels)
        q = parse_path(args.right, S.group, labels)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    v = shuffle(S, PathVec.of(S.order, p), PathVec.of(S.order, q))
    return _terms(S, v), "terms", True


def _cmd_power(args):
    S = _load_structure(args)
    if args.arrow not in _label_map(S):
        raise UsageError(f"no arrow named {args.arrow!r}")
    if args.l < 0:
        raise UsageError("power must be >= 0")
    v = left_power(S, S.gen(args.arrow), args.l)
    ok = True
    if args.l >= 1:
        ok = v == closed_form_power(S, args.arrow, args.l)
    try:
        nil = nilpotency_order(S, args.arrow)
    except InfiniteOrderError:
        nil = None
    rows = _terms(S, v)
    if args.format == "csv":
        return rows, "terms", ok
    report = {"arrow": args.arrow, "l": args.l, "terms": rows, "closed_form_agrees": ok,
              "nilpotency_order": nil, "ok": ok}
    return [report], "power", ok


def _run_list(args, lister):
    try:
        recs = lister(args.p, cap=args.max_prime)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ok = True
    if args.verify:
        for rec in recs:
            rep = verify_record(rec, max_levels=args.max_levels)
            rec.verified = rep.ok
            ok &= rep.ok
    return [_record_row(r) for r in recs], "records", ok


def _cmd_verify(args):
    try:
        with open(args.record_file, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(str(exc)) from None
    if isinstance(data, dict):
        data = [data]
    try:
        recs = [ClassRecord.from_json(d) for d in data]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out, ok = [], True
    for rec in recs:
        rep = verify_record(rec, max_levels=args.max_levels)
        ok &= rep.ok
        for c in rep.checks:
            out.append(dict(c.as_dict(), family=rec.family))
    return out, "checks", ok


def _cmd_congruence(args):
    vals = args.params
    try:
        if args.variant == "A":
            if len(vals) != 3:
                raise UsageError("congruence A takes m n b")
            sol = solve_congruence_A(*vals)
        else:
            if len(vals) != 4:
                raise UsageError("congruence B takes m alpha beta a")
            sol = solve_congruence_B(*vals)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return [{"x": x, "y": y} for x, y in sol], "solutions", True


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default="json")
    common.add_argument("--max-group-order", type=int, default=256)
    common.add_argument("--max-levels", type=int, default=64)
    common.add_argument("--out", default=None, help="write the report to this file")

    ap = argparse.ArgumentParser(prog="qqplane", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    c = sub.add_parser("cocycle-check", parents=[common], help="3-cocycle and induced 2-cocycle checks")
    c.add_argument("cocycle", help="rank2(m,n;a,b,c), rank1(m;a) or rank3(p;a1,...,a7)")
    c.set_defaults(run=_cmd_cocycle_check)
    c = sub.add_parser("bimodule-check", parents=[common], help="check the bimodule axioms of a structure file")
    c.add_argument("file")
    c.set_defaults(run=_cmd_bimodule_check)
    c = sub.add_parser("shuffle", parents=[common], help="shuffle product of two paths")
    c.add_argument("file")
    c.add_argument("left")
    c.add_argument("right")
    c.set_defaults(run=_cmd_shuffle)
    c = sub.add_parser("power", parents=[common], help="left-nested power of an arrow")
    c.add_argument("file")
    c.add_argument("arrow")
    c.add_argument("l", type=int)
    c.set_defaults(run=_cmd_power)
    for name, lister in (("classify-p3", list_p3), ("classify-p4", list_p4)):
        c = sub.add_parser(name, parents=[common], help=f"list the {name[-2:]} classification records")
        c.add_argument("p", type=int)
        c.add_argument("--verify", action="store_true", help="verify every record")
        c.add_argument("--max-prime", type=int, default=5)
        c.set_defaults(run=lambda a, _l=lister: _run_list(a, _l))
    c = sub.add_parser("verify", parents=[common], help="verify records from a JSON file")
    c.add_argument("record_file")
    c.set_defaults(run=_cmd_verify)
    c = sub.add_parser("congruence", parents=[common], help="solve the existence congruences")
    c.add_argument("variant", choices=["A", "B"])
    c.add_argument("params", type=int, nargs="+")
    c.set_defaults(run=_cmd_congruence)
    return ap


def run_command(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        results, kind, ok = args.run(args)
        text = emit_report(results, args.format, kind)
    except (UsageError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if not ok:
        failed = [r.get("check") for r in results if isinstance(r, dict) and r.get("ok") is False]
        bad_recs = sum(1 for r in results if isinstance(r, dict) and r.get("verified") is False)
        if bad_recs:
            failed.append(f"{bad_recs} of {len(results)} records")
        print(f"verification failed: {', '.join(str(f) for f in failed) or 'see report'}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def main() -> None:
    sys.exit(run_command())
