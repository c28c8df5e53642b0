"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 instance parse error, 3 node
budget exhausted, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from . import __version__
from .convexdecomp import ConvexDecomposition, decompose, min_alpha
from .decompositions import (
    enumerate_decompositions,
    mask_to_ids,
    tree_level_family,
    verify_tree_properties,
)
from .generators import gen_cactus_gap, gen_cycle_gadget, gen_star_gap
from .graph import Graph, GraphError
from .instancefmt import ParseError, emit_instance, parse_instance
from .multicut import (
    BudgetExhausted,
    DistancePairs,
    InstanceError,
    MulticutInstance,
    extract_multiflow,
    gap,
    solve_fractional,
    solve_integral,
)
from .pload import (
    amplification_experiment,
    min_pload,
    min_pload_radius,
    min_pload_rooted,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4


class _Cli(argparse.ArgumentParser):
    def error(self, message):  # argparse exits 2 by default; we use 1
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _fmt(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _write(args, text: str) -> None:
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path: str) -> MulticutInstance:
    with open(path) as fh:
        return parse_instance(fh.read())


def _resolve_vertex(g: Graph, spec: str) -> int:
    if spec in g.marks:
        return g.marks[spec]
    try:
        return g.check_vertex(int(spec))
    except ValueError:
        raise GraphError(f"unknown mark or vertex {spec!r}") from None


def _rows(args, header: list[str], rows: list[list[str]]) -> str:
    if args.format == "csv":
        lines = [",".join(header)] + [",".join(r) for r in rows]
        return "\n".join(lines) + "\n"
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    for r in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


# -- subcommands --------------------------------------------------------------


def cmd_gen(args) -> int:
    if args.family == "cactus-gap":
        inst = gen_cactus_gap(args.k).instance
    elif args.family == "cycle-gadget":
        gad = gen_cycle_gadget(args.w)
        inst = MulticutInstance(gad.graph, 1, DistancePairs(gad.graph, 2 * args.w))
    elif args.family == "star":
        inst = gen_star_gap(args.leaves)
    elif args.family == "tree":
        rng = random.Random(args.seed)
        n = args.n
        g = Graph(n, [(rng.randrange(i), i) for i in range(1, n)], {"r": 0})
        inst = MulticutInstance(g, 1, DistancePairs(g, args.pairs_dist))
    else:
        raise AssertionError(args.family)
    _write(args, emit_instance(inst))
    return EXIT_OK


def cmd_solve_lp(args) -> int:
    inst = _load(args.instance)
    frac = solve_fractional(inst)
    rows = [[str(e), _fmt(frac.x[e])] for e in range(inst.graph.m)]
    text = f"objective {_fmt(frac.objective)}\n" + _rows(args, ["edge", "x"], rows)
    _write(args, text)
    return EXIT_OK


def cmd_solve_ip(args) -> int:
    inst = _load(args.instance)
    sol = solve_integral(inst, node_budget=args.budget)
    rows = [[str(e)] for e in sorted(sol.edges)]
    text = (
        f"cost {_fmt(sol.cost)}\noptimal {str(sol.optimal).lower()}\n"
        f"lower_bound {_fmt(sol.lower_bound) if sol.lower_bound is not None else 'n/a'}\n"
        f"nodes {sol.nodes}\n" + _rows(args, ["edge"], rows)
    )
    _write(args, text)
    return EXIT_OK if sol.optimal else EXIT_BUDGET


def cmd_gap(args) -> int:
    inst = _load(args.instance)
    rep = gap(inst, node_budget=args.budget)
    rows = [[
        args.instance,
        _fmt(rep.lp),
        _fmt(rep.ip),
        _fmt(rep.gap) if rep.gap is not None else "n/a",
        str(rep.ip_optimal).lower(),
        str(rep.degenerate).lower(),
    ]]
    _write(args, _rows(args, ["instance", "lp", "ip", "gap", "ip_optimal", "degenerate"], rows))
    return EXIT_OK if rep.ip_optimal else EXIT_BUDGET


def cmd_flow(args) -> int:
    inst = _load(args.instance)
    frac = solve_fractional(inst)
    flow = extract_multiflow(inst, frac)
    rows = [["-".join(map(str, vpath)), _fmt(f)] for vpath, f in flow.flows if f != 0]
    text = f"total {_fmt(flow.total)}\n" + _rows(args, ["path", "flow"], rows)
    _write(args, text)
    return EXIT_OK


def cmd_decomp_enum(args) -> int:
    inst = _load(args.instance)
    g = inst.graph
    root = _resolve_vertex(g, args.root) if args.root is not None else None
    fam = enumerate_decompositions(g, args.t, root=root, radius_bound=args.radius)
    if args.format == "csv":
        _write(args, fam.to_csv())
        return EXIT_OK
    rows = []
    for i, mask in enumerate(fam.members):
        rad = str(fam.root_radii[i]) if fam.root_radii is not None else "n/a"
        rows.append([str(i), " ".join(map(str, mask_to_ids(mask))) or "-", rad])
    text = f"members {len(fam)}\n" + _rows(args, ["id", "edges", "root_radius"], rows)
    _write(args, text)
    return EXIT_OK


def cmd_tree_decomp(args) -> int:
    inst = _load(args.instance)
    g = inst.graph
    r = _resolve_vertex(g, args.root)
    fams = tree_level_family(g, r, args.w)
    rep = verify_tree_properties(g, r, args.w)
    rows = [
        [str(i), " ".join(map(str, F)) or "-", str(rep.radii[i])]
        for i, F in enumerate(fams)
    ]
    text = (
        f"families {len(fams)}\nverified {str(rep.ok).lower()}\n"
        + _rows(args, ["level", "edges", "root_radius"], rows)
    )
    _write(args, text)
    if not rep.ok:
        print("\n".join(rep.failures), file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_pload(args) -> int:
    inst = _load(args.instance)
    g = inst.graph
    if args.rooted is None and args.radius is not None:
        print("--radius requires --rooted", file=sys.stderr)
        return EXIT_USAGE
    if args.rooted is None:
        res = min_pload(g, args.w)
    elif args.radius is None:
        res = min_pload_rooted(g, _resolve_vertex(g, args.rooted), args.w)
    else:
        res = min_pload_radius(g, _resolve_vertex(g, args.rooted), args.w, args.radius)
    if res.status != "optimal":
        rows = [[str(i), _fmt(u)] for i, u in enumerate(res.farkas)]
        _write(args, "status infeasible\n" + _rows(args, ["row", "farkas"], rows))
        return EXIT_OK
    support = [
        [str(i), _fmt(res.distribution.y[i]), " ".join(map(str, res.distribution.family.member_ids(i))) or "-"]
        for i in sorted(res.distribution.y)
    ]
    text = (
        f"p {_fmt(res.p)}\nw_times_p {_fmt(args.w * res.p)}\n"
        f"family_size {res.family_size}\nlp_pivots {res.lp_pivots}\n"
        + _rows(args, ["member", "weight", "edges"], support)
    )
    _write(args, text)
    return EXIT_OK


def cmd_amplify(args) -> int:
    inst = _load(args.instance)
    g = inst.graph
    r = _resolve_vertex(g, args.root)
    ms = [int(v) for v in args.m.split(",")]
    p = Fraction(args.p) if args.p else None
    rows = amplification_experiment(g, r, args.w, ms, p=p)
    table = [
        [str(row.m), _fmt(row.p), _fmt(row.z), _fmt(row.m * row.z), str(row.family_size), str(row.graph_edges)]
        for row in rows
    ]
    _write(args, _rows(args, ["m", "p", "z", "m_times_z", "family_size", "edges"], table))
    return EXIT_OK


def cmd_carr_vempala(args) -> int:
    inst = _load(args.instance)
    frac = solve_fractional(inst)
    if args.min_alpha:
        dec = min_alpha(inst, frac.x, node_budget=args.budget)
    else:
        alpha = Fraction(args.alpha)
        dec = decompose(inst, frac.x, alpha, node_budget=args.budget)
    if isinstance(dec, ConvexDecomposition):
        rows = [
            [str(i), _fmt(wt), " ".join(map(str, sorted(F)))]
            for i, (F, wt) in enumerate(zip(dec.multicuts, dec.weights))
        ]
        text = f"alpha {_fmt(dec.alpha)}\nstatus decomposed\n" + _rows(
            args, ["term_id", "weight", "edges"], rows
        )
    else:
        rows = [[str(e), _fmt(c)] for e, c in enumerate(dec.c)]
        text = (
            f"alpha {_fmt(dec.alpha)}\nstatus witness\nvalue {_fmt(dec.value)}\n"
            + _rows(args, ["edge", "c"], rows)
        )
    _write(args, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_all

    if args.output:
        with open(args.output, "w") as fh:
            ok = run_all(out=fh)
    else:
        ok = run_all()
    return EXIT_OK if ok else EXIT_INTERNAL


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = _Cli(prog="multicutlab", description=__doc__)
    top.add_argument("--version", action="version", version=f"multicutlab {__version__}")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Cli)

    def common(p):
        p.add_argument("-o", "--output", help="write output to a file")
        p.add_argument("--format", choices=("text", "csv"), default="text")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized steps")
        p.add_argument("--threads", type=int, default=1, help="batch-level parallelism (accepted, single-threaded per call)")

    p = sub.add_parser("gen", help="generate an instance file")
    p.add_argument("family", choices=("cactus-gap", "cycle-gadget", "star", "tree"))
    p.add_argument("--k", type=int, default=1, help="cactus-gap size parameter")
    p.add_argument("--w", type=int, default=2, help="cycle-gadget half-girth parameter")
    p.add_argument("--leaves", type=int, default=3, help="star leaf count")
    p.add_argument("--n", type=int, default=10, help="tree vertex count")
    p.add_argument("--pairs-dist", type=int, default=2, help="tree pair distance threshold")
    common(p)
    p.set_defaults(fn=cmd_gen)

    for name, fn, budget in (
        ("solve-lp", cmd_solve_lp, False),
        ("solve-ip", cmd_solve_ip, True),
        ("gap", cmd_gap, True),
        ("flow", cmd_flow, False),
    ):
        p = sub.add_parser(name, help=f"{name} on an instance file")
        p.add_argument("instance")
        if budget:
            p.add_argument("--budget", type=int, default=None, help="branch-and-bound node budget")
        common(p)
        p.set_defaults(fn=fn)

    p = sub.add_parser("decomp-enum", help="enumerate small-diameter decompositions")
    p.add_argument("instance")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--root", default=None, help="mark name or vertex id")
    p.add_argument("--radius", type=int, default=None, help="keep members with root radius < this")
    common(p)
    p.set_defaults(fn=cmd_decomp_enum)

    p = sub.add_parser("tree-decomp", help="level decomposition families of a tree")
    p.add_argument("instance")
    p.add_argument("--root", required=True)
    p.add_argument("--w", type=int, required=True)
    common(p)
    p.set_defaults(fn=cmd_tree_decomp)

    p = sub.add_parser("pload", help="minimum load distribution LPs")
    p.add_argument("instance")
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--rooted", default=None, help="mark name or vertex id")
    p.add_argument("--radius", type=int, default=None)
    common(p)
    p.set_defaults(fn=cmd_pload)

    p = sub.add_parser("amplify", help="one-sum amplification experiment")
    p.add_argument("instance")
    p.add_argument("--root", required=True)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--m", default="1,2,3", help="comma-separated copy counts")
    p.add_argument("--p", default=None, help="load bound (default: exact minimum per m)")
    common(p)
    p.set_defaults(fn=cmd_amplify)

    p = sub.add_parser("carr-vempala", help="convex decomposition of the LP optimum")
    p.add_argument("instance")
    g2 = p.add_mutually_exclusive_group(required=True)
    g2.add_argument("--alpha", help="scaling factor p/q")
    g2.add_argument("--min-alpha", action="store_true")
    p.add_argument("--budget", type=int, default=None)
    common(p)
    p.set_defaults(fn=cmd_carr_vempala)

    p = sub.add_parser("verify", help="run the full acceptance suite")
    common(p)
    p.set_defaults(fn=cmd_verify)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (GraphError, InstanceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
