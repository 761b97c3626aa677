"""Command line entry point.

    cbiframe run SCENARIO [--report PATH] [--tol FLOAT] [--quad ORDERxSUBDIVISIONS] [--seed INT] [--timing]
    cbiframe validate SCENARIO

Exit codes: 0 when every task passes (or the scenario validates), 1 when a
task fails, 2 for parse and validation errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .report import dumps, run_scenario
from .scenario import ScenarioError, load, validate

EXIT_OK = 0
EXIT_TASK_FAILURE = 1
EXIT_INVALID = 2


def _quad(text):
    m = re.fullmatch(r"(\d+)x(\d+)", text)
    if not m or int(m.group(1)) < 1 or int(m.group(2)) < 1:
        raise argparse.ArgumentTypeError(f"expected <order>x<subdivisions>, e.g. 8x4, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def build_parser():
    parser = argparse.ArgumentParser(prog="cbiframe", description="Continuous biframe verification scenarios.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a scenario and emit a JSON report")
    run.add_argument("scenario", help="path to a scenario JSON file")
    run.add_argument("--report", metavar="PATH", help="write the report here instead of stdout")
    run.add_argument("--tol", type=float, help="override every task tolerance")
    run.add_argument("--quad", type=_quad, metavar="ORDERxSUBDIVISIONS", help="quadrature rule for every space")
    run.add_argument("--seed", type=int, help="override the scenario seed")
    run.add_argument("--timing", action="store_true", help="record wall times (breaks byte-identical reports)")

    val = sub.add_parser("validate", help="check a scenario without running numerics")
    val.add_argument("scenario", help="path to a scenario JSON file")
    return parser


def _emit_errors(diagnostics, stream):
    json.dump({"valid": False, "errors": diagnostics}, stream, indent=2, sort_keys=True)
    stream.write("\n")


def cmd_validate(args, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        doc, _ = load(args.scenario)
    except OSError as exc:
        _emit_errors([{"path": "$", "message": str(exc)}], out)
        return EXIT_INVALID
    except ScenarioError as exc:
        _emit_errors(exc.diagnostics, out)
        return EXIT_INVALID
    problems = validate(doc)
    if problems:
        _emit_errors(problems, out)
        return EXIT_INVALID
    json.dump({"valid": True, "errors": []}, out, indent=2, sort_keys=True)
    out.write("\n")
    return EXIT_OK


def cmd_run(args, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        doc, raw = load(args.scenario)
        report = run_scenario(doc, raw, seed=args.seed, tol=args.tol, quad=args.quad, timing=args.timing)
    except OSError as exc:
        _emit_errors([{"path": "$", "message": str(exc)}], err)
        return EXIT_INVALID
    except ScenarioError as exc:
        _emit_errors(exc.diagnostics, err)
        return EXIT_INVALID
    text = dumps(report)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    for task in report["tasks"]:
        if task["verdict"] != "pass":
            label = f" ({task['label']})" if task["label"] else ""
            err.write(f"task {task['index']} {task['task']}{label}: {task['verdict']}: {'; '.join(task['diagnostics'])}\n")
    return EXIT_OK if report["summary"]["verdict"] == "pass" else EXIT_TASK_FAILURE


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "validate":
        return cmd_validate(args)
    return cmd_run(args)


if __name__ == "__main__":
    sys.exit(main())
