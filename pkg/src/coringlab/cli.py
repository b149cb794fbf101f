"""``coring-lab``: verify instance files and print cohomology, Galois and connection reports.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 for unreadable input or bad usage.
"""

from __future__ import annotations

import argparse
import json
import shutil
import sys
import textwrap
import time
from pathlib import Path

from . import suite
from .io import BUNDLED, InstanceError, bundled_path, load_instance

COMMANDS = ("validate", "cohomology", "galois", "connections", "report")


def _parser():
    p = argparse.ArgumentParser(
        prog="coring-lab",
        description="Exact verification of corings with a grouplike element.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("file", help="instance file (JSON) or the name of a bundled instance")
    p.add_argument("--max-degree", type=int, default=suite.DEFAULT_DEGREE, metavar="N",
                   help="highest cohomological degree (default %(default)s)")
    p.add_argument("--reduced", action="store_true", help="use the reduced complex")
    p.add_argument("--module", metavar="NAME", help="only this module (connections)")
    p.add_argument("--json", action="store_true", help="print JSON instead of text")
    p.add_argument("--timing", action="store_true", help="include wall-clock time in the output")
    return p


def _resolve(name):
    path = Path(name)
    if not path.exists() and name in BUNDLED:
        return bundled_path(name)
    return path


def _width():
    return max(40, shutil.get_terminal_size((80, 24)).columns)


def _emit(lines, out=None):
    out = out or sys.stdout
    width = _width()
    for line in lines:
        indent = len(line) - len(line.lstrip(" "))
        if len(line) <= width:
            out.write(line + "\n")
            continue
        wrapped = textwrap.wrap(line.strip(), width=width, initial_indent=" " * indent,
                                subsequent_indent=" " * (indent + 4), break_on_hyphens=False)
        out.write("\n".join(wrapped) + "\n")


def _mark(v):
    if v is None:
        return "-"
    return "true" if v else "false"


# ---------------------------------------------------------------------------
# text renderers


def _text_validate(res):
    lines = ["validate %s: %s" % (res["instance"], "pass" if res["ok"] else "FAIL")]
    for chk in res["checks"]:
        lines.append("  %-34s %s" % (chk["title"], "pass" if chk["ok"] else "FAIL"))
        for name, status in chk["results"].items():
            if status == "fail":
                wit = chk["witnesses"].get(name, [])
                lines.append("    %s: fail  witnesses=%s" % (name, json.dumps(wit)))
    for title in res.get("skipped_checks", []):
        lines.append("  %-34s %s" % (title, "skip"))
    return lines


def _text_cohomology(res):
    kind = "reduced" if res["reduced"] else "full"
    if res.get("ok") is None and "reason" in res:
        return ["cohomology %s (%s): skipped, %s" % (res["instance"], kind, res["reason"])]
    lines = ["cohomology %s (%s complex, degrees 0..%d)" % (res["instance"], kind, res["max_degree"]),
             "  %3s  %12s  %9s  %8s" % ("n", "dim Omega^n", "rank d^n", "dim H^n")]
    for row in res["table"]:
        lines.append("  %3d  %12d  %9d  %8d" % (row["n"], row["dim"], row["rank_d"], row["H"]))
    lines.append("  H = %s" % json.dumps(res["H"]))
    lines.append("  d^2 = 0: %s" % _mark(res["d_squared_zero"]))
    if "dg_axioms" in res:
        lines.append("  dg axioms: %s" % ("pass" if res["dg_axioms"]["ok"] else "FAIL"))
    return lines


def _text_galois(res):
    lines = ["galois %s" % res["instance"]]
    for key in ("galois", "free_basis_certified", "homotopy_verified"):
        lines.append("  %-22s %s" % (key, _mark(res.get(key))))
    return lines


def _text_connections(res):
    if res.get("ok") is None and "reason" in res:
        return ["connections %s: skipped, %s" % (res["instance"], res["reason"])]
    lines = ["connections %s" % res["instance"],
             "  %-12s %-7s %-22s %-11s %s" % ("module", "exists", "flat_if_from_coaction",
                                             "projective", "cq_agree")]
    for name, row in res["modules"].items():
        lines.append("  %-12s %-7s %-22s %-11s %s" % (
            name, _mark(row["exists"]), _mark(row["flat_if_from_coaction"]),
            _mark(row["projective"]), _mark(row["cq_agree"])))
    return lines


_TEXT = {"validate": _text_validate, "cohomology": _text_cohomology,
         "galois": _text_galois, "connections": _text_connections}


# ---------------------------------------------------------------------------


def run(args) -> int:
    try:
        inst = load_instance(_resolve(args.file))
    except InstanceError as exc:
        print("coring-lab: parse error: %s" % exc, file=sys.stderr)
        return 2
    start = time.perf_counter()
    view = args.command
    if args.command == "report":
        res = suite.full_report(inst, args.max_degree)
    else:
        val = suite.validate(inst)
        if args.command == "validate":
            res = val
        elif not val["ok"]:
            res = dict(val, command=args.command, skipped="instance failed validation")
            view = "validate"
        elif args.command == "cohomology":
            res = suite.cohomology_table(inst, args.max_degree, args.reduced)
        elif args.command == "galois":
            res = suite.galois(inst, args.max_degree)
        else:
            try:
                res = suite.connections(inst, args.module)
            except KeyError as exc:
                print("coring-lab: %s" % exc.args[0], file=sys.stderr)
                return 2
    if args.timing:
        res["timing_seconds"] = round(time.perf_counter() - start, 3)
    if args.json or args.command == "report":
        sys.stdout.write(json.dumps(res, indent=2, default=str) + "\n")
    else:
        lines = _TEXT[view](res)
        if "skipped" in res:
            lines.append("  skipped: %s" % res["skipped"])
        if args.timing:
            lines.append("  time: %.3f s" % res["timing_seconds"])
        _emit(lines)
    return 1 if res.get("ok") is False else 0


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    if args.max_degree < 0:
        parser.error("--max-degree must be non-negative")
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
