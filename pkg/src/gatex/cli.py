"""Command-line interface.

Graphs come in as graph6, one per line: inline arguments, ``--file``, or
stdin.  Every graph produces one output record (a JSON line, or a DOT
block with ``--format dot``), in input order.

Exit status: 0 success/accept, 1 rejection (some input is not GaTEx or
fails verification), 2 usage or parse error, 3 internal failure.
Environment: SEED_DEFAULT (seed for ``gen``), JOBS (batch parallelism).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .errors import GatexError, GraphError, InvariantError, NotGatexError
from .graph6 import graph6_decode, graph6_encode

EXIT_OK, EXIT_REJECT, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
GRAPH_COMMANDS = ("recognize", "mdt", "explain", "solve", "orient", "tww")


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise GraphError(f"environment variable {name} must be an integer, got {raw!r}")


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


# --- per-graph handlers: each returns (status, text) --------------------------

def _recognize(g, opts):
    from .recognition import recognize_gatex_forbidden, recognize_gatex_structural
    backend = opts["backend"]
    if backend == "forbidden":
        v = recognize_gatex_forbidden(g)
        return (EXIT_OK if v.accepted else EXIT_REJECT), _dump(v.to_json())
    v = recognize_gatex_structural(g)
    out = v.to_json()
    if not opts["network"] and v.accepted:
        out.pop("network_ref", None)
    if not v.accepted:
        f = recognize_gatex_forbidden(g)
        if f.accepted:
            raise InvariantError("recognizers disagree")
        out["witness_kind"] = "embedding"
        out["embedding"] = f.to_json()["embedding"]
    return (EXIT_OK if v.accepted else EXIT_REJECT), _dump(out)


def _mdt(g, opts):
    from .modules import build_mdt
    mdt = build_mdt(g)
    return EXIT_OK, (mdt.to_dot() if opts["format"] == "dot" else _dump(mdt.to_json()))


def _explain(g, opts):
    from .pvr import build_pvr_network
    pvr = build_pvr_network(g)
    if opts["format"] == "dot":
        return EXIT_OK, pvr.net.to_dot(pvr.labels)
    return EXIT_OK, _dump(pvr.net.to_json(pvr.labels))


def _solve(g, opts):
    from . import solvers
    from .pvr import build_pvr_network
    pvr = build_pvr_network(g)
    want = opts["what"]
    out = {}
    if "clique" in want:
        out["omega"], out["clique"] = solvers.clique_number(g, pvr)
    if "independence" in want:
        out["alpha"], out["independent_set"] = solvers.independence_number(g, pvr)
    if "chromatic" in want:
        chi, coloring = solvers.chromatic_number(g, pvr)
        out["chi"] = chi
        out["coloring"] = {str(v): c for v, c in enumerate(coloring)}
    if "orientation" in want:
        out["orientation"] = solvers.transitive_orientation(g, pvr).arcs()
    return EXIT_OK, _dump(out)


def _orient(g, opts):
    from .solvers import perfect_order_coloring, transitive_orientation
    from .pvr import build_pvr_network
    pvr = build_pvr_network(g)
    o = transitive_orientation(g, pvr)
    if not (o.is_orientation_of(g) and o.is_transitive()):
        raise InvariantError("orientation failed its own check")
    order, _ = perfect_order_coloring(g, pvr)
    return EXIT_OK, _dump({"orientation": o.arcs(), "order": order})


def _tww(g, opts):
    from .twinwidth import ContractionSequence, build_one_contraction_sequence, verify_sequence
    if opts["sequence"] is not None:
        seq = ContractionSequence.from_json(opts["sequence"])
    else:
        seq = build_one_contraction_sequence(g)
    if opts["verify"] is None:
        return EXIT_OK, _dump({"width": seq.width, "sequence": seq.to_json()})
    v = verify_sequence(g, seq, opts["verify"])
    out = v.to_json()
    out["d"] = opts["verify"]
    out["sequence"] = seq.to_json(v.max_red if v.ok else None)
    return (EXIT_OK if v.ok else EXIT_REJECT), _dump(out)


HANDLERS = {"recognize": _recognize, "mdt": _mdt, "explain": _explain,
            "solve": _solve, "orient": _orient, "tww": _tww}


def process(job):
    """Run one graph through a handler; picklable for the process pool."""
    command, opts, text = job
    g = graph6_decode(text)
    try:
        return HANDLERS[command](g, opts)
    except NotGatexError as exc:
        return EXIT_REJECT, _dump(exc.verdict.to_json())


# --- input -------------------------------------------------------------

def _read_inputs(args) -> list[str]:
    if args.graphs:
        lines = list(args.graphs)
    elif args.file:
        with open(args.file, "rb") as fh:
            lines = fh.read().decode("ascii", errors="replace").splitlines()
    else:
        lines = sys.stdin.read().splitlines()
    out = []
    for k, line in enumerate(lines, 1):
        line = line.strip()
        if not line:
            continue
        try:
            graph6_decode(line)
        except GraphError as exc:
            raise GraphError(f"input line {k}: {exc}") from None
        out.append(line)
    if not out:
        raise GraphError("no input graphs")
    return out


def _run_graphs(args, opts) -> int:
    inputs = _read_inputs(args)
    jobs = [(args.command, opts, line) for line in inputs]
    n_jobs = args.jobs if args.jobs is not None else _env_int("JOBS", 1)
    if n_jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(n_jobs) as pool:
            results = list(pool.map(process, jobs, chunksize=max(1, len(jobs) // (4 * n_jobs))))
    else:
        results = [process(j) for j in jobs]
    status = EXIT_OK
    for code, text in results:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        status = max(status, code)
    return status


# --- mine / gen ---------------------------------------------------------------

def _run_mine(args) -> int:
    from .forbidden import mine_forbidden, read_graph_lists
    if args.max >= 9 and not args.long:
        raise GraphError("mining 9-vertex graphs takes a long time; pass --long to confirm")
    source = None
    if args.input:
        with open(args.input) as fh:
            source = read_graph_lists(fh)
        missing = [n for n in range(args.min, args.max + 1) if n not in source]
        if missing:
            raise GraphError(f"input file has no graphs on {missing} vertices")
    jobs = args.jobs if args.jobs is not None else _env_int("JOBS", 1)
    cat = mine_forbidden(args.min, args.max, jobs=jobs, source=source)
    data = cat.to_json()
    if args.output:
        cat.save(args.output)
    if args.format == "graph6":
        sys.stdout.write("".join(s + "\n" for s in cat.graph6_lines()))
    else:
        sys.stdout.write(json.dumps(data, indent=1) + "\n")
    return EXIT_OK


def _run_gen(args) -> int:
    from .network import explain, random_galled_tree
    seed = args.seed if args.seed is not None else _env_int("SEED_DEFAULT", 0)
    if args.n < 1:
        raise GraphError("-n must be at least 1")
    net, labels = random_galled_tree(args.n, seed, cycle_prob=args.cycle_prob)
    g = explain(net, labels)
    code = graph6_encode(g)
    if args.format == "graph6":
        sys.stdout.write(code + "\n")
    else:
        sys.stdout.write(code + "\n" + _dump({"seed": seed, "network": net.to_json(labels)}) + "\n")
    return EXIT_OK


# --- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gatex", description="Tools for galled-tree explainable graphs.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_cmd(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("graphs", nargs="*", help="graph6 strings (default: read --file or stdin)")
        sp.add_argument("-f", "--file", help="file with one graph6 record per line")
        sp.add_argument("-j", "--jobs", type=int, help="worker processes for batches (env JOBS)")
        return sp

    sp = graph_cmd("recognize", "decide GaTEx membership with a witness")
    sp.add_argument("--backend", choices=("structural", "forbidden"), default="structural")
    sp.add_argument("--no-network", dest="network", action="store_false",
                    help="omit the network from accepting verdicts")
    sp = graph_cmd("mdt", "modular decomposition tree")
    sp.add_argument("--format", choices=("json", "dot"), default="json")
    sp = graph_cmd("explain", "pvr-network explaining the graph")
    sp.add_argument("--format", choices=("json", "dot"), default="json")
    sp = graph_cmd("solve", "clique, independence and chromatic numbers")
    sp.add_argument("--clique", action="store_true")
    sp.add_argument("--chromatic", action="store_true")
    sp.add_argument("--independence", action="store_true")
    sp.add_argument("--all", action="store_true", help="all of the above plus the orientation")
    graph_cmd("orient", "transitive orientation and perfect order")
    sp = graph_cmd("tww", "twin-width contraction sequences")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--build", action="store_true", help="build a sequence (default)")
    mode.add_argument("--verify", type=int, metavar="D", help="referee a sequence at width D")
    sp.add_argument("--sequence", help="JSON file with a sequence to verify instead of building one")

    sp = sub.add_parser("mine", help="regenerate the forbidden subgraph catalog")
    sp.add_argument("--min", type=int, default=5)
    sp.add_argument("--max", type=int, default=8)
    sp.add_argument("--input", help="graph6 file listing all graphs to scan")
    sp.add_argument("--output", help="also write the catalog JSON here")
    sp.add_argument("--format", choices=("json", "graph6"), default="json")
    sp.add_argument("--long", action="store_true", help="allow the 9-vertex level")
    sp.add_argument("-j", "--jobs", type=int, help="worker processes (env JOBS)")

    sp = sub.add_parser("gen", help="random graph from a labeled galled-tree")
    sp.add_argument("--galled-tree", action="store_true", help="generator family (the only one)")
    sp.add_argument("-n", type=int, required=True, help="number of leaves / vertices")
    sp.add_argument("--seed", type=int, help="RNG seed (env SEED_DEFAULT, else 0)")
    sp.add_argument("--cycle-prob", type=float, default=0.4)
    sp.add_argument("--format", choices=("json", "graph6"), default="json")
    return p


def _graph_opts(args) -> dict:
    opts = {}
    if args.command == "recognize":
        opts.update(backend=args.backend, network=args.network)
    elif args.command in ("mdt", "explain"):
        opts["format"] = args.format
    elif args.command == "solve":
        want = {k for k in ("clique", "chromatic", "independence") if getattr(args, k)}
        if args.all or not want:
            want = {"clique", "chromatic", "independence", "orientation"}
        opts["what"] = sorted(want)
    elif args.command == "tww":
        seq = None
        if args.sequence:
            with open(args.sequence) as fh:
                seq = json.load(fh)
            if isinstance(seq, dict):
                seq = seq.get("sequence", [])
        opts.update(verify=args.verify, sequence=seq)
    return opts


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "mine":
            return _run_mine(args)
        if args.command == "gen":
            return _run_gen(args)
        return _run_graphs(args, _graph_opts(args))
    except (GraphError, OSError, json.JSONDecodeError) as exc:
        print(f"gatex: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvariantError, GatexError, AssertionError) as exc:
        print(f"gatex: internal failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
