"""Command-line entry point: ``bergesat <command> ...``.

Every invocation writes one JSON run manifest into ``--out-dir``.
Exit codes: 0 ok, 1 a checked property failed, 2 bad input,
3 search budget exhausted (answer indeterminate).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .berge import DEFAULT_NODE_BUDGET, contains_berge
from .constructions import ConstructionParams, build_construction, build_lemma_instance, verify_lemma_freeness
from .errors import (
    BergeSatError,
    ConstructionError,
    HypergraphFormatError,
    SaturationNotFound,
    SearchBudgetExceeded,
    UnsupportedCase,
)
from .hypergraph import Hypergraph, parse, serialize
from .invariants import CaseTag, case_select, connected_components, feedback_number, vertex_cover_number
from .saturation import (
    degeneracy_bound,
    degeneracy_inputs,
    degeneracy_order,
    first_shallow_nonedge,
    greedy_complete,
    is_saturated,
    sat_bruteforce,
)
from .tightpath import intersection_level, run_reduction

EXIT_OK, EXIT_FAIL, EXIT_BAD_INPUT, EXIT_INDETERMINATE = 0, 1, 2, 3
DEFAULT_SEED = 20190001


class Run:
    """Collects what the manifest needs while a command executes."""

    def __init__(self, args):
        self.args = args
        self.inputs: dict[str, str] = {}
        self.outputs: list[str] = []
        self.outcome: dict = {}

    def read(self, path) -> Hypergraph:
        data = Path(path).read_bytes()
        self.inputs[str(path)] = hashlib.sha256(data).hexdigest()
        return parse(data.decode("utf-8"))

    def write(self, name: str, text: str) -> Path:
        out = Path(self.args.out_dir) / name
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8", newline="\n")
        self.outputs.append(name)
        return out


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def cmd_invariants(run: Run) -> int:
    g = run.read(run.args.graph)
    beta, cover = vertex_cover_number(g)
    f, fb = feedback_number(g)
    comps = connected_components(g)
    cases = {}
    parts = [f"beta={beta}", f"f={f}", f"components={len(comps)}"]
    for k in (3, 4, 5):
        cases[k] = case_select(g, k).value
        parts.append(f"case(k={k})={cases[k]}")
    if f == 0:
        # forests are F0 at every k
        parts.append("case=F0")
    print(" ".join(parts))
    run.outcome = {"beta": beta, "f": f, "cover": list(cover.vertices), "feedback_set": list(fb.vertices),
                   "components": len(comps), "cases": {str(k): v for k, v in cases.items()}}
    return EXIT_OK


def _load_graph_field(value, base: Path, run: Run) -> Hypergraph:
    if isinstance(value, dict):
        return Hypergraph(2, value["n"], value["edges"])
    if "\n" in value:
        return parse(value)
    path = Path(value)
    if not path.is_absolute():
        path = base / path
    return run.read(path)


def cmd_construct(run: Run) -> int:
    params_path = Path(run.args.params)
    raw = params_path.read_bytes()
    run.inputs[str(params_path)] = hashlib.sha256(raw).hexdigest()
    block = json.loads(raw)
    G = _load_graph_field(block["G"], params_path.parent, run)
    k, n = int(block["k"]), int(block["n"])
    if "a" in block and "S" in block:
        params = ConstructionParams(k=k, n=n, a=int(block["a"]), G=G, S=tuple(block["S"]))
        host = build_construction(params)
        run.outcome = {"mode": "explicit", "a": params.a, "S": list(params.S), "edges": host.m}
    else:
        inst, host = build_lemma_instance(G, k, n)
        run.outcome = {"mode": "lemma", "case": inst.case.value, "a": inst.a, "S": list(inst.S),
                       "z": inst.z, "edges": host.m}
    out = run.write(run.args.output, serialize(host))
    print(f"wrote {out} ({host.m} edges)")
    return EXIT_OK


def cmd_check_berge(run: Run) -> int:
    host = run.read(run.args.host)
    pattern = run.read(run.args.pattern)
    w = contains_berge(host, pattern, node_budget=run.args.node_budget)
    if w is None:
        print("FREE")
        run.outcome = {"free": True}
    else:
        _emit(w.to_json())
        run.outcome = {"free": False, "witness": w.to_json()}
    return EXIT_OK


def cmd_complete(run: Run) -> int:
    host = run.read(run.args.host)
    pattern = run.read(run.args.pattern)
    budget = run.args.node_budget
    saturated, added = greedy_complete(host, pattern, node_budget=budget)
    report = is_saturated(saturated, pattern, node_budget=budget)
    _, d_star = degeneracy_order(added)
    stem = run.args.stem
    run.write(f"{stem}.khg", serialize(saturated))
    run.write(f"{stem}.added", "".join(" ".join(map(str, e)) + "\n" for e in added.edges))
    degeneracy = {"added_edges": added.m, "d_star": d_star, "n": host.n,
                  "edges_before": host.m, "edges_after": saturated.m}
    run.write(f"{stem}.degeneracy.json", json.dumps(degeneracy, sort_keys=True, indent=2) + "\n")
    _emit({"saturation": report.to_json(), "degeneracy": degeneracy})
    run.outcome = {"saturation": report.to_json(), "degeneracy": degeneracy}
    return EXIT_OK if report.saturated else EXIT_FAIL


def cmd_sat_number(run: Run) -> int:
    pattern = run.read(run.args.pattern)
    sat, cert = sat_bruteforce(run.args.n, run.args.k, pattern, run.args.m_cap,
                               iso_rejection=not run.args.no_iso, node_budget=run.args.node_budget)
    run.write(run.args.certificate, serialize(cert))
    print(sat)
    run.outcome = {"sat": sat, "certificate_edges": [list(e) for e in cert.edges]}
    return EXIT_OK


def cmd_tight_reduce(run: Run) -> int:
    host = run.read(run.args.host)
    outcome = run_reduction(host, run.args.r, run.args.ell)
    _emit(outcome.to_json())
    run.outcome = outcome.to_json()
    return EXIT_OK


def verify_row(pattern: Hypergraph, k: int, n: int, node_budget: int, complete: bool) -> dict:
    """One n of the verify-paper pipeline; returns a JSON-ready row."""
    row: dict = {"n": n}
    try:
        inst, host = build_lemma_instance(pattern, k, n)
    except ConstructionError as exc:
        return {**row, "status": "SKIP", "reason": str(exc)}
    freeness = verify_lemma_freeness(inst, host, node_budget=node_budget)
    row.update(case=inst.case.value, a=inst.a, S=list(inst.S), z=inst.z, h0_edges=host.m, free=freeness.free)
    ok = freeness.free
    if ok and complete:
        saturated, added = greedy_complete(host, pattern, node_budget=node_budget)
        report = is_saturated(saturated, pattern, node_budget=node_budget)
        inputs = degeneracy_inputs(inst)
        d = degeneracy_bound(inputs)
        _, d_star = degeneracy_order(added)
        linear_ok = saturated.m <= host.m + d * n
        degenerate_ok = inputs.clamped or d_star <= d
        row.update(saturated=report.saturated, sat_edges=saturated.m, d=d, d_star=d_star,
                   clamped=inputs.clamped, linear_ok=linear_ok, degenerate_ok=degenerate_ok)
        ok = report.saturated and linear_ok and degenerate_ok
        if pattern.m >= 2:
            shallow = first_shallow_nonedge(saturated, intersection_level(pattern))
            row["intersection_ok"] = shallow is None
            ok = ok and shallow is None
    row["status"] = "PASS" if ok else "FAIL"
    return row


def cmd_verify_paper(run: Run) -> int:
    pattern = run.read(run.args.pattern)
    k = run.args.k
    case = case_select(pattern, k)
    if case is CaseTag.UNSUPPORTED:
        print(f"k={k} case=UNSUPPORTED")
        run.outcome = {"case": "UNSUPPORTED", "rows": []}
        return EXIT_OK
    ns = list(range(run.args.n_min, run.args.n_max + 1))
    job = [(pattern, k, n, run.args.node_budget, not run.args.no_complete) for n in ns]
    if run.args.jobs > 1:
        with ProcessPoolExecutor(max_workers=run.args.jobs) as pool:
            rows = list(pool.map(_verify_star, job))
    else:
        rows = [verify_row(*j) for j in job]
    print(f"{'n':>4} {'case':>10} {'free':>5} {'sat':>5} {'|E0|':>5} {'|Esat|':>6} {'d':>6} {'d*':>4}  status")
    for row in rows:
        print(f"{row['n']:>4} {row.get('case', '-'):>10} {str(row.get('free', '-')):>5} "
              f"{str(row.get('saturated', '-')):>5} {row.get('h0_edges', '-'):>5} {row.get('sat_edges', '-'):>6} "
              f"{row.get('d', '-'):>6} {row.get('d_star', '-'):>4}  {row['status']}")
    slopes = [row["sat_edges"] / row["n"] for row in rows if "sat_edges" in row]
    if slopes:
        print(f"max |E(H_sat)|/n = {max(slopes):.4f}")
    failed = any(row["status"] == "FAIL" for row in rows)
    run.outcome = {"case": case.value, "rows": rows, "max_slope": round(max(slopes), 6) if slopes else None}
    return EXIT_FAIL if failed else EXIT_OK


def _verify_star(job):
    return verify_row(*job)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bergesat", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out-dir", default=".", help="directory for outputs and the run manifest")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--timing", action="store_true", help="record wall time in the manifest")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", parents=[common], help="beta, f, components and case tags of a graph")
    p.add_argument("graph")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("construct", parents=[common], help="build H_k(n,a,G,S) from a JSON parameter block")
    p.add_argument("params")
    p.add_argument("-o", "--output", default="construction.khg")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check-berge", parents=[common], help="search a host for a Berge copy of a pattern")
    p.add_argument("host")
    p.add_argument("pattern")
    p.set_defaults(func=cmd_check_berge)

    p = sub.add_parser("complete", parents=[common], help="greedy saturation completion")
    p.add_argument("host")
    p.add_argument("pattern")
    p.add_argument("--stem", default="completed")
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("sat-number", parents=[common], help="exact saturation number for tiny n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("pattern")
    p.add_argument("--m-cap", type=int, default=12)
    p.add_argument("--no-iso", action="store_true", help="disable isomorphism rejection")
    p.add_argument("--certificate", default="sat_certificate.khg")
    p.set_defaults(func=cmd_sat_number)

    p = sub.add_parser("tight-reduce", parents=[common], help="run the tight-path multiplicity reduction")
    p.add_argument("host")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(func=cmd_tight_reduce)

    p = sub.add_parser("verify-paper", parents=[common], help="per-n freeness/completion/bound checks")
    p.add_argument("pattern")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--no-complete", action="store_true", help="only check freeness")
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    run = Run(args)
    started = time.perf_counter()
    try:
        code = args.func(run)
    except SearchBudgetExceeded as exc:
        print(f"INDETERMINATE: {exc}", file=sys.stderr)
        run.outcome = {"error": "INDETERMINATE", "detail": str(exc)}
        code = EXIT_INDETERMINATE
    except (HypergraphFormatError, ConstructionError, UnsupportedCase, SaturationNotFound,
            ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        run.outcome = {"error": type(exc).__name__, "detail": str(exc)}
        code = EXIT_BAD_INPUT
    except BergeSatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        run.outcome = {"error": type(exc).__name__, "detail": str(exc)}
        code = EXIT_FAIL
    manifest = {
        "tool": "bergesat",
        "version": __version__,
        "command": argv,
        "inputs": dict(sorted(run.inputs.items())),
        "outputs": run.outputs,
        "seed": args.seed,
        "node_budget": args.node_budget,
        "jobs": args.jobs,
        "exit_code": code,
        "outcome": run.outcome,
    }
    if args.timing:
        manifest["wall_time_s"] = round(time.perf_counter() - started, 3)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / f"{args.command}.manifest.json").write_text(
        json.dumps(manifest, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    return code


if __name__ == "__main__":
    sys.exit(main())
