"""Command line front end.

Exit codes: 0 success, 1 bad input or usage, 2 no resolving set within the
requested per-component cap.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

from .decompose import build_ebc_tree, decompose, to_dot, to_json_dict
from .gadgets import FormulaError, parse_dimacs_cnf, reduce_to_graph
from .graph import Graph, GraphError, all_pairs_distances, build_graph
from .resolving import (
    OracleSizeError,
    brute_force_min_resolving,
    is_gate,
    is_resolving_set,
)
from .solver import (
    InfeasibleBoundError,
    Solution,
    brute_force_min_bounded,
    per_ebc_counts,
    pick_root,
    root_tree_checked,
    smallest_bound,
    solve,
)


class CliError(Exception):
    """Input or usage problem; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: D102 - argparse hook
        # argparse exits with code 2 by default, which collides with our
        # "cap infeasible" code; funnel usage problems into code 1 instead.
        raise CliError(message)


def parse_edge_list(text: str, source: str = "<input>") -> Graph:
    """Read the plain edge-list format: first a `n <count>` line, then one
    `u v` pair per line.  Blank lines and `#` comments are skipped."""
    n: int | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise CliError(
                    f"{source}:{lineno}: expected header 'n <count>', got {line!r}"
                )
            try:
                n = int(parts[1])
            except ValueError:
                raise CliError(
                    f"{source}:{lineno}: vertex count {parts[1]!r} is not an integer"
                ) from None
            continue
        if len(parts) != 2:
            raise CliError(f"{source}:{lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            bad = parts[0] if not parts[0].lstrip("-").isdigit() else parts[1]
            raise CliError(f"{source}:{lineno}: bad vertex token {bad!r}") from None
        edges.append((u, v))
    if n is None:
        raise CliError(f"{source}: missing 'n <count>' header")
    try:
        return build_graph(n, edges)
    except GraphError as exc:
        raise CliError(f"{source}: {exc}") from None


def format_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def _load_graph(path: str) -> Graph:
    if path == "-":
        return parse_edge_list(sys.stdin.read(), "<stdin>")
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from None
    return parse_edge_list(text, str(p))


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _cmd_decompose(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    d = decompose(g)
    if args.format == "json":
        payload = to_json_dict(d)
        _emit(json.dumps(payload, indent=2) + "\n", args.output)
        return 0
    t = build_ebc_tree(d)
    dt = None
    if args.rooted:
        if not d.amalgamation_vertices:
            raise CliError("graph has a single component; no rooted tree exists")
        from .decompose import root_tree

        dt = root_tree(t, pick_root(t))
    _emit(to_dot(t, dt), args.output)
    return 0


def _solution_report(g: Graph, sol: Solution, started: float) -> dict:
    return {
        "n": g.n,
        "m": g.edge_count,
        "dimension": sol.dimension,
        "resolving_set": list(sol.resolving_set),
        "mode": sol.mode,
        "bound": sol.bound,
        "per_ebc_counts": {str(k): v for k, v in sorted(sol.per_ebc_counts.items())},
        "duration_ms": round((time.perf_counter() - started) * 1000, 3),
    }


def _print_solution(g: Graph, sol: Solution, as_json: bool, started: float) -> None:
    if as_json:
        print(json.dumps(_solution_report(g, sol, started), indent=2))
        return
    print(f"metric dimension: {sol.dimension}")
    print(f"resolving set: {' '.join(map(str, sol.resolving_set)) or '(empty)'}")
    print(f"mode: {sol.mode}")
    if sol.bound is not None:
        print(f"per-component cap: {sol.bound}")
    if sol.per_ebc_counts:
        counts = " ".join(f"{k}:{v}" for k, v in sorted(sol.per_ebc_counts.items()))
        print(f"landmarks per extended component: {counts}")


def _cmd_solve(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    started = time.perf_counter()
    if args.brute:
        dm = all_pairs_distances(g)
        d = decompose(g) if g.n >= 2 else None
        if args.k is not None:
            assert d is not None
            r = brute_force_min_bounded(g, dm, d, args.k)
            if r is None:
                print(f"infeasible: no resolving set fits the cap {args.k}", file=sys.stderr)
                return 2
        else:
            r = brute_force_min_resolving(g, dm)
            assert r is not None
        counts = per_ebc_counts(d, r) if d is not None else {}
        sol = Solution(
            dimension=len(r),
            resolving_set=r,
            per_ebc_counts=counts,
            bound=args.k,
            mode="brute_fallback",
        )
    else:
        try:
            sol = solve(g, bound=args.k)
        except InfeasibleBoundError as exc:
            print(f"infeasible: {exc}", file=sys.stderr)
            return 2
    _print_solution(g, sol, args.json, started)
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    try:
        members = tuple(int(t) for t in args.set.replace(",", " ").split())
    except ValueError:
        raise CliError(f"--set must list integers, got {args.set!r}") from None
    for v in members:
        if not 0 <= v < g.n:
            raise CliError(f"landmark {v} out of range for {g.n} vertices")
    dm = all_pairs_distances(g)
    ok, pair = is_resolving_set(g, dm, members)
    if not ok:
        assert pair is not None
        print(f"not resolving: vertices {pair[0]} and {pair[1]} are indistinguishable")
        return 0
    print(f"resolving: {len(members)} landmarks distinguish all {g.n} vertices")
    for v in members:
        gw = is_gate(g, dm, members, v)
        if gw is not None:
            outs = " ".join(map(str, gw.out_vertices))
            print(f"  gate at {v}: out-vertices {outs}")
    return 0


def _cmd_bound(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    started = time.perf_counter()
    k, sol = smallest_bound(g)
    if args.json:
        payload = _solution_report(g, sol, started)
        payload["smallest_bound"] = k
        print(json.dumps(payload, indent=2))
    else:
        print(f"smallest per-component cap: {k}")
        _print_solution(g, sol, False, started)
    return 0


def _cmd_gen_gadget(args: argparse.Namespace) -> int:
    if args.cnf == "-":
        text = sys.stdin.read()
        source = "<stdin>"
    else:
        try:
            text = Path(args.cnf).read_text()
        except OSError as exc:
            raise CliError(f"cannot read {args.cnf}: {exc}") from None
        source = args.cnf
    try:
        formula = parse_dimacs_cnf(text)
        gg = reduce_to_graph(formula)
    except FormulaError as exc:
        raise CliError(f"{source}: {exc}") from None
    _emit(format_edge_list(gg.graph), args.output)
    if args.labels is not None:
        by_label = {lab: v for v, lab in gg.labels.items()}
        Path(args.labels).write_text(json.dumps(by_label, indent=2) + "\n")
    return 0


def _cmd_gen_random(args: argparse.Namespace) -> int:
    n, m = args.n, args.m
    if n < 1:
        raise CliError("need at least one vertex")
    if m < n - 1:
        raise CliError(f"{m} edges cannot connect {n} vertices")
    if m > n * (n - 1) // 2:
        raise CliError(f"{m} edges exceed the simple-graph maximum for n={n}")
    rng = random.Random(args.seed)
    edges = {(rng.randrange(v), v) for v in range(1, n)}
    edges = {(min(u, v), max(u, v)) for u, v in edges}
    while len(edges) < m:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v:
            e = (min(u, v), max(u, v))
            edges.add(e)
    g = build_graph(n, sorted(edges))
    _emit(format_edge_list(g), args.output)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="mdim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="split a graph into components")
    p.add_argument("graph", help="edge-list file, or - for stdin")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--rooted", action="store_true", help="emit the rooted tree (dot only)")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("solve", help="compute the metric dimension")
    p.add_argument("graph", help="edge-list file, or - for stdin")
    p.add_argument("--k", type=int, default=None, help="cap landmarks per extended component")
    p.add_argument("--brute", action="store_true", help="force the exhaustive oracle")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("check", help="verify a candidate resolving set")
    p.add_argument("graph", help="edge-list file, or - for stdin")
    p.add_argument("--set", required=True, help="landmark ids, comma or space separated")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("bound", help="find the smallest feasible per-component cap")
    p.add_argument("graph", help="edge-list file, or - for stdin")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("gen-gadget", help="build a hardness instance from a CNF formula")
    p.add_argument("cnf", help="DIMACS CNF file, or - for stdin")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--labels", default=None, help="also write a label-to-vertex JSON map")
    p.set_defaults(func=_cmd_gen_gadget)

    p = sub.add_parser("gen-random", help="generate a random connected graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=_cmd_gen_random)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (GraphError, OracleSizeError, FormulaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
