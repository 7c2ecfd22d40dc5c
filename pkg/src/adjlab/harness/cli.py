"""Command line entry point: ``adjlab run``, ``adjlab list``, ``adjlab check-anchors``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from ..errors import AdjlabError, BudgetExceeded, ParseError
from ..groebner import Budget, budget
from ..poly import _as_field
from .anchors import ANCHORS, check_anchors
from .document import OPS, load_document, run_document
from .report import Report, combined_exit
from .scenarios import CATALOG, DEFAULT_SUITE, Context, catalog


def _field_label(field):
    f = _as_field(field)
    return "q" if not f.p else f"p:{f.p}"


def run_target(target, seed=0, field="q", deg_cap=None, time_budget=None, params=None, input_path=None):
    """Run a built-in scenario, a document file, or a single op with ``--input`` arguments."""
    params = dict(params or {})
    fld = _as_field(field)
    b = Budget()
    overrides = {}
    if deg_cap is not None:
        overrides["degree_cap"] = int(deg_cap)
    if time_budget is not None:
        overrides["time_budget"] = int(time_budget)
        params.setdefault("time_budget", int(time_budget))
    budgets = {"degree_cap": overrides.get("degree_cap", b.degree_cap), "pair_cap": b.pair_cap,
               "node_cap": b.node_cap, "minor_cap": b.minor_cap,
               "time_budget": time_budget}
    report = Report(target, seed, _field_label(field), budgets)
    ctx = Context(seed, fld.p, params)
    with budget(**overrides):
        try:
            if target in CATALOG:
                CATALOG[target].func(report, ctx)
            elif target in OPS and input_path:
                _run_single_op(target, input_path, report)
            elif os.path.exists(target):
                run_document(load_document(target), report)
            else:
                raise ParseError(f"unknown scenario or file {target!r}")
        except BudgetExceeded as exc:
            report.record("scenario.budget", "", "error", {"budget": str(exc)})
        except AdjlabError as exc:
            report.record("scenario.error", "", "error", {"error": type(exc).__name__, "message": str(exc)})
    return report


def _run_single_op(op, path, report):
    from .document import Document

    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        args = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    ring = args.pop("ring", None)
    expect = args.pop("expect", None)
    doc_data = {"ring": ring or {"vars": ["x"], "char": 0}, "ideals": args.pop("ideals", {}),
                "tasks": [dict({"op": op, "args": args, "id": op}, **({"expect": expect} if expect is not None else {}))]}
    run_document(Document(doc_data, text), report)


def _worker(job):
    target, kw = job
    return run_target(target, **kw)


def cmd_run(ns):
    targets = list(ns.targets)
    if targets == ["all"]:
        targets = list(DEFAULT_SUITE) + (["example_3_1_embedded_modp"] if ns.stretch else [])
    for t in targets:
        info = CATALOG.get(t)
        if info is not None and info.stretch and not ns.stretch:
            print(f"{t} is a stretch scenario; pass --stretch to run it", file=sys.stderr)
            return 2
    params = {"n": ns.n}
    kw = dict(seed=ns.seed, field=ns.field, deg_cap=ns.deg_cap, time_budget=ns.time_budget,
              params=params, input_path=ns.input)
    jobs = [(t, kw) for t in targets]
    if ns.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(ns.jobs) as pool:
            reports = list(pool.map(_worker, jobs))
    else:
        reports = [_worker(j) for j in jobs]
    reports.sort(key=lambda r: r.scenario)
    for r in reports:
        print(r.summary_table())
    if ns.json:
        data = reports[0].to_dict() if len(reports) == 1 else {"reports": [r.to_dict() for r in reports]}
        with open(ns.json, "w", encoding="utf-8") as fh:
            json.dump(data, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return combined_exit(reports)


def cmd_list(ns):
    entries = [info.as_dict() for info in catalog()]
    if ns.json:
        print(json.dumps({"scenarios": entries}, indent=2, sort_keys=True))
        return 0
    width = max(len(e["name"]) for e in entries)
    for e in entries:
        tag = " [stretch]" if e["stretch"] else ""
        print(f"{e['name'].ljust(width)}  {e['runtime']:<8} {e['description']}{tag}")
        for a in e["anchors"]:
            print(f"{'':{width}}    anchor: {a}")
    return 0


def parse_catalog(text):
    """Inverse of ``adjlab list --json``: scenario name -> entry."""
    data = json.loads(text)
    return {e["name"]: e for e in data["scenarios"]}


def cmd_check_anchors(ns):
    if not ns.source:
        print("check-anchors needs --source FILE (the text the anchors are quoted from)", file=sys.stderr)
        return 2
    try:
        with open(ns.source, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"cannot read {ns.source}: {exc}", file=sys.stderr)
        return 2
    missing = check_anchors(text)
    for key in sorted(ANCHORS):
        print(f"{'missing' if key in missing else 'ok':<8} {key}")
    return 1 if missing else 0


def build_parser():
    p = argparse.ArgumentParser(prog="adjlab", description="Exact checks for Jacobian, defect and jet computations.")
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run scenarios, a document file, or an op with --input")
    r.add_argument("targets", nargs="+", help="scenario names, 'all', a document path, or an op name")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--field", default="q", help="q or p:PRIME")
    r.add_argument("--deg-cap", type=int, default=None)
    r.add_argument("--time-budget", type=int, default=None, help="seconds")
    r.add_argument("--json", default=None, help="write the report to this path")
    r.add_argument("--input", default=None, help="argument document for a single op")
    r.add_argument("--n", type=int, default=None, help="matrix size for the pfaffian scenario")
    r.add_argument("--stretch", action="store_true", help="allow stretch scenarios")
    r.add_argument("--jobs", type=int, default=1, help="worker processes")
    r.set_defaults(func=cmd_run)
    ls = sub.add_parser("list", help="show the scenario catalog")
    ls.add_argument("--json", action="store_true")
    ls.set_defaults(func=cmd_list)
    ca = sub.add_parser("check-anchors", help="confirm every anchor occurs verbatim in a source text")
    ca.add_argument("--source", default=None)
    ca.set_defaults(func=cmd_check_anchors)
    return p


def main(argv=None):
    ns = build_parser().parse_args(argv)
    try:
        return ns.func(ns)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
