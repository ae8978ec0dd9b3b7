"""Command-line interface: generate, colour, verify, solve exactly, benchmark."""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .bench import FAMILIES, plan, records_to_csv, run_bench
from .colorers.paths import rank_path, rank_pathwidth
from .colorers.product import full_product_certificate, rank_certificate
from .colorers.ttree import rank_simple_ttree
from .decomposition import (PathDecomposition, RootedTreeDecomposition, random_interval_graph,
                            random_simple_ttree)
from .errors import RankingError, VerificationFailed
from .formats import (dumps_decomposition, dumps_graph, dumps_ranking, loads_certificate,
                      loads_decomposition, loads_graph, loads_ranking, read_text, write_text)
from .graph import Graph, path_graph
from .lowerbound import (DEFAULT_BUDGET, BoostSpec, boost, boost_decomposition, complete_ary_tree,
                         lowerbound_graph, tree_decomposition_of_tree)
from .numerics import gamma, solve_k
from .verify import Ranking, exact_chi, verify_ranking

EXIT_OK, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(text: str, path: str | None) -> None:
    if path:
        write_text(path, text)
    else:
        sys.stdout.write(text)


def _budget(args) -> int:
    if getattr(args, "budget", None) is not None:
        return args.budget
    raw = os.environ.get("RANK_BUDGET_NODES")
    return int(raw) if raw else DEFAULT_BUDGET


def _load_graph(args) -> Graph:
    if args.graph:
        return loads_graph(read_text(args.graph))
    if getattr(args, "n", None):
        return path_graph(args.n)
    raise UsageError("give a graph file with --graph (or --n for a path)")


def _load_td(args) -> RootedTreeDecomposition:
    if not args.td:
        raise UsageError(f"--algo {args.algo} needs a tree decomposition (--td FILE)")
    return loads_decomposition(read_text(args.td), root=args.root)


def _as_path_decomposition(d: RootedTreeDecomposition) -> PathDecomposition:
    if any(len(c) > 1 for c in d.children):
        raise UsageError("--algo pathwidth needs a decomposition whose tree is a path")
    return PathDecomposition(tuple(d.bags[x] for x in d.order))


# --- subcommands ------------------------------------------------------------

def cmd_gen(args) -> int:
    budget = _budget(args)
    fam = args.family
    d = None
    if fam == "ary-tree":
        g, _ = complete_ary_tree(_need(args, "r"), budget)
        d = tree_decomposition_of_tree(g)
    elif fam == "boost":
        if args.base:
            u = loads_graph(read_text(args.base))
            if not args.base_td:
                raise UsageError("--base needs --base-td")
            ud = loads_decomposition(read_text(args.base_td))
        else:
            u = Graph(1)
            ud = RootedTreeDecomposition((-1,), (frozenset({0}),), 0)
        spec = BoostSpec(u, _need(args, "h"), _need(args, "m"))
        g, _ = boost(spec, budget)
        d = boost_decomposition(ud, spec)
    elif fam == "lb":
        inst = lowerbound_graph(_need(args, "t"), _need(args, "r"), budget)
        if inst.warning:
            print(f"warning: r={args.r} is below the tower threshold for t={args.t}; "
                  "the lower-bound guarantee does not apply", file=sys.stderr)
        g, d = inst.graph, inst.decomposition
    elif fam == "ttree":
        g, d = random_simple_ttree(_need(args, "n"), _need(args, "t"), args.seed)
    else:  # interval
        g, pd = random_interval_graph(_need(args, "n"), _need(args, "t"), args.seed)
        d = pd.as_tree()
    _emit(dumps_graph(g), args.output)
    if args.td_out:
        write_text(args.td_out, dumps_decomposition(d, g.n))
    print(f"n={g.n} m={g.m} width={d.width}", file=sys.stderr)
    return EXIT_OK


def _need(args, name):
    val = getattr(args, name)
    if val is None:
        raise UsageError(f"--family {args.family} needs --{name}")
    return val


def cmd_color(args) -> int:
    verify = not args.no_verify
    algo = args.algo
    graph_out = None
    if algo == "path":
        if args.graph:
            g = loads_graph(read_text(args.graph))
            n = g.n
        elif args.n:
            n = args.n
            graph_out = path_graph(n)
        else:
            raise UsageError("--algo path needs --n or --graph")
        r = rank_path(n, args.ell)
    elif algo == "pathwidth":
        g = _load_graph(args)
        r = rank_pathwidth(g, _as_path_decomposition(_load_td(args)), args.ell, verify=verify)
    elif algo == "simple-ttree":
        g = _load_graph(args)
        r = rank_simple_ttree(g, _load_td(args), args.ell, t=args.t, verify=verify)
    elif algo == "product":
        host = _load_graph(args)
        if args.m is None or args.path_len is None:
            raise UsageError("--algo product needs --m and --path-len")
        cert, graph_out = full_product_certificate(host, _load_td(args), args.m, args.path_len)
        r = rank_certificate(cert, graph_out, args.ell, verify=verify)
    else:  # certificate
        if not args.cert or not args.graph:
            raise UsageError("--algo certificate needs --cert FILE and --graph TARGET")
        cert = loads_certificate(read_text(args.cert))
        r = rank_certificate(cert, loads_graph(read_text(args.graph)), args.ell, verify=verify)
    if verify and algo == "path":
        bad = verify_ranking(graph_out or g, r)
        if bad is not None:
            raise VerificationFailed(bad)
    if graph_out is not None and args.graph_out:
        write_text(args.graph_out, dumps_graph(graph_out))
    _emit(dumps_ranking(Ranking(r.colors, r.ell, _plain_meta(r.meta))), args.output)
    print(f"colors={r.max_color}" + ("" if verify else " (unverified)"), file=sys.stderr)
    return EXIT_OK


def _plain_meta(meta: dict) -> dict:
    return {k: v for k, v in meta.items() if isinstance(v, (int, float, str))}


def cmd_verify(args) -> int:
    g = _load_graph(args)
    r = loads_ranking(read_text(args.ranking), ell=args.ell)
    if len(r) != g.n:
        raise UsageError(f"ranking colours {len(r)} vertices, graph has {g.n}")
    bad = verify_ranking(g, r)
    if bad is None:
        print(f"Ok colors={r.max_color}")
        return EXIT_OK
    print("Violation path=" + " ".join(str(v + 1) for v in bad.witness_path))
    return EXIT_VERIFY


def cmd_exact(args) -> int:
    g = _load_graph(args)
    chi, witness = exact_chi(g, args.ell, budget_nodes=args.budget)
    print(chi)
    if args.output:
        write_text(args.output, dumps_ranking(witness))
    return EXIT_OK


def cmd_bench(args) -> int:
    sizes = _int_list(args.sizes, "--sizes")
    seeds = _int_list(args.seeds, "--seeds")
    tasks = plan(args.family, sizes, seeds, args.ell, args.t)
    records = run_bench(tasks, jobs=args.jobs)
    _emit(records_to_csv(records), args.output)
    bad = [r.instance_id for r in records if r.verdict != "ok"]
    if bad:
        print("verification failed: " + ", ".join(bad), file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def _int_list(text: str, flag: str) -> list[int]:
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"{flag} takes a comma-separated list of integers") from None
    if not vals:
        raise UsageError(f"{flag} is empty")
    return vals


def cmd_gamma(args) -> int:
    print(repr(gamma(args.i, args.k, args.n)))
    return EXIT_OK


def cmd_solve_k(args) -> int:
    sol = solve_k(args.t, args.n)
    closed = "nan" if sol.closed_form is None else repr(sol.closed_form)
    print(f"k={sol.k!r} closed_form={closed} residual={sol.residual!r}")
    return EXIT_OK


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lrank", description=__doc__)
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a graph (.gr) and optionally its decomposition (.td)")
    g.add_argument("--family", required=True, choices=["ary-tree", "boost", "lb", "ttree", "interval"])
    g.add_argument("--t", type=int, help="treewidth level (lb, ttree) or width (interval)")
    g.add_argument("--r", type=int, help="target colour count (ary-tree, lb)")
    g.add_argument("--h", type=int, help="boost parameter h")
    g.add_argument("--m", type=int, help="boost parameter m")
    g.add_argument("--n", type=int, help="vertex count (ttree, interval)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--base", help="base graph U for --family boost (default K_1)")
    g.add_argument("--base-td", help="decomposition of the base graph")
    g.add_argument("--budget", type=int, help="maximum vertex count (default: RANK_BUDGET_NODES or 2e6)")
    g.add_argument("-o", "--output", help="write the .gr here instead of stdout")
    g.add_argument("--td-out", help="write the .td here")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("color", help="compute an ℓ-ranking")
    c.add_argument("--algo", required=True,
                   choices=["path", "pathwidth", "simple-ttree", "product", "certificate"])
    c.add_argument("--ell", type=int, required=True)
    c.add_argument("--graph", help="input .gr (target graph for --algo certificate)")
    c.add_argument("--td", help="input .td")
    c.add_argument("--root", type=int, default=1, help="root bag id in the .td (default 1)")
    c.add_argument("--n", type=int, help="path length for --algo path")
    c.add_argument("--t", type=int, help="recursion level for simple-ttree (default: width)")
    c.add_argument("--m", type=int, help="clique size for --algo product")
    c.add_argument("--path-len", type=int, help="path length for --algo product")
    c.add_argument("--cert", help="certificate file for --algo certificate")
    c.add_argument("--no-verify", action="store_true", help="skip verification (timing runs)")
    c.add_argument("--graph-out", help="write the generated graph (path, product) here")
    c.add_argument("-o", "--output", help="write the ranking here instead of stdout")
    c.set_defaults(func=cmd_color)

    v = sub.add_parser("verify", help="check a ranking file against a graph")
    v.add_argument("--ranking", required=True)
    v.add_argument("--graph")
    v.add_argument("--n", type=int, help="use the path P_n as the graph")
    v.add_argument("--ell", type=int, help="override ℓ recorded in the ranking file")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("exact", help="exact ℓ-ranking number by branch and bound")
    e.add_argument("--ell", type=int, required=True)
    e.add_argument("--graph")
    e.add_argument("--n", type=int, help="use the path P_n as the graph")
    e.add_argument("--budget", type=int, help="search node budget (default: RANK_BUDGET_NODES)")
    e.add_argument("-o", "--output", help="write a witness ranking here")
    e.set_defaults(func=cmd_exact)

    b = sub.add_parser("bench", help="run a benchmark grid and emit CSV")
    b.add_argument("--family", required=True, choices=FAMILIES)
    b.add_argument("--ell", type=int, required=True)
    b.add_argument("--sizes", required=True, help="comma-separated vertex counts")
    b.add_argument("--seeds", default="0", help="comma-separated seeds")
    b.add_argument("--t", type=int, default=2, help="treewidth (ttree) or width (interval)")
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_bench)

    gm = sub.add_parser("gamma", help="evaluate gamma(i, k, n)")
    gm.add_argument("--i", type=int, required=True)
    gm.add_argument("--k", type=float, required=True)
    gm.add_argument("--n", type=float, required=True)
    gm.set_defaults(func=cmd_gamma)

    sk = sub.add_parser("solve-k", help="least k with (log^(t-2) k)^k >= n")
    sk.add_argument("--t", type=int, required=True)
    sk.add_argument("--n", type=float, required=True)
    sk.set_defaults(func=cmd_solve_k)
    return p


def run_command(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except VerificationFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (UsageError, RankingError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
