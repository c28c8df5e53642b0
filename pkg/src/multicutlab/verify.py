"""End-to-end verification suite.

Each criterion function returns (ok, detail) and is deterministic: all
randomized checks draw from a seeded generator.  ``run_all`` prints one
pass/fail line per criterion.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

from .convexdecomp import DominationWitness, decompose, min_alpha
from .decompositions import reduce_to_multicut, verify_tree_properties
from .generators import gen_cactus_gap, gen_cycle_gadget, gen_star_gap
from .graph import Graph, one_sum
from .multicut import (
    MulticutInstance,
    exhaustive_min_multicut,
    extract_multiflow,
    is_feasible_multicut,
    min_weight_multicut,
    solve_fractional,
)
from .pload import _FamilyLp, amplification_experiment, min_pload, min_pload_radius, project
from .exactlp import LinearProgram, Optimal

ZERO = Fraction(0)
DEFAULT_SEED = 1789


def criterion_1_quarter_cost() -> tuple[bool, str]:
    """x = 1/4 costs exactly 9k^2/4 for k = 1..50; exact LP optimum for
    k <= 3 is at most that."""
    t0 = time.time()
    for k in range(1, 51):
        c = gen_cactus_gap(k)
        if c.quarter_cost() != Fraction(9 * k * k, 4):
            return False, f"k={k}: quarter cost {c.quarter_cost()} != 9k^2/4"
    cost_elapsed = time.time() - t0
    if cost_elapsed >= 30:
        return False, f"cost loop took {cost_elapsed:.1f}s (budget 30s)"
    lps = []
    for k in (1, 2, 3):
        f = solve_fractional(gen_cactus_gap(k).instance)
        if f.objective > Fraction(9 * k * k, 4):
            return False, f"k={k}: LP {f.objective} exceeds 9k^2/4"
        lps.append(f.objective)
    return True, (
        f"cost = 9k^2/4 for k=1..50 in {cost_elapsed:.1f}s; "
        f"LP optima {lps[0]}, {lps[1]}, {lps[2]} for k=1,2,3"
    )


def criterion_2_integral_bound() -> tuple[bool, str]:
    """Exact integral optimum for k = 1 (exhaustive) and k = 2 (branch and
    bound); both at least 5k^2 - 9k and at least the LP optimum."""
    details = []
    for k, solver in ((1, "exhaustive"), (2, "bnb")):
        c = gen_cactus_gap(k)
        lp = solve_fractional(c.instance).objective
        if solver == "exhaustive":
            ip = exhaustive_min_multicut(c.instance)
        else:
            ip = min_weight_multicut(c.instance, c.instance.costs)
        if not ip.optimal:
            return False, f"k={k}: solver did not prove optimality"
        bound = Fraction(5 * k * k - 9 * k)
        if ip.cost < bound:
            return False, f"k={k}: OPT_IP {ip.cost} below 5k^2-9k = {bound}"
        if ip.cost < lp:
            return False, f"k={k}: OPT_IP {ip.cost} below OPT_LP {lp}"
        details.append(f"k={k}: OPT_IP={ip.cost} >= max(5k^2-9k={bound}, LP={lp})")
    return True, "; ".join(details)


def criterion_3_gadget_frontier() -> tuple[bool, str]:
    """On the cycle gadget with the radius-(w/2) mass constraint, the
    minimum load satisfies w*p >= 10/9 exactly, for w = 2 and w = 4."""
    details = []
    for w in (2, 4):
        gad = gen_cycle_gadget(w)
        res = min_pload_radius(gad.graph, gad.graph.mark("r"), w, w // 2)
        if res.status != "optimal":
            return False, f"w={w}: radius LP infeasible"
        if w * res.p < Fraction(10, 9):
            return False, f"w={w}: w*p = {w * res.p} < 10/9"
        details.append(f"w={w}: w*p = {w * res.p}")
    return True, "; ".join(details) + " (both >= 10/9)"


def criterion_4_amplification() -> tuple[bool, str]:
    """m-fold one-sums of the w=2 gadget: the designated copy's escape
    mass z_m satisfies m*z_m <= 1 exactly for m = 1, 2, 3."""
    gad = gen_cycle_gadget(2)
    g, r = gad.graph, gad.graph.mark("r")
    rows = amplification_experiment(g, r, 2, [1, 2, 3])  # asserts m*z <= 1
    detail = "; ".join(f"m={row.m}: p={row.p}, z={row.z}, m*z={row.m * row.z}" for row in rows)
    return True, detail


def _random_tree(rng: random.Random, n: int) -> Graph:
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    return Graph(n, edges)


def criterion_5_tree_suite(seed: int = DEFAULT_SEED) -> tuple[bool, str]:
    """Level families on 200 random trees, w in {2,4,8}: partition,
    validity, root radii, per-edge load 1/w, cumulative masses."""
    rng = random.Random(seed)
    t0 = time.time()
    checked = 0
    for _ in range(200):
        n = rng.randint(2, 200)
        tree = _random_tree(rng, n)
        r = rng.randrange(n)
        for w in (2, 4, 8):
            rep = verify_tree_properties(tree, r, w)
            if not rep.ok:
                return False, f"n={n}, w={w}: {rep.failures[0]}"
            checked += 1
    elapsed = time.time() - t0
    if elapsed >= 60:
        return False, f"took {elapsed:.1f}s (budget 60s)"
    return True, f"{checked} (tree, w) checks clean in {elapsed:.1f}s"


def _random_connected(rng: random.Random, n: int, extra: int) -> Graph:
    edges = {(min(a, b), max(a, b)) for a, b in ((rng.randrange(i), i) for i in range(1, n))}
    for _ in range(extra):
        a, b = rng.randrange(n), rng.randrange(n)
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return Graph(n, sorted(edges))


def criterion_6_reduction_oracle(seed: int = DEFAULT_SEED) -> tuple[bool, str]:
    """On 100 random connected graphs (<= 12 edges), t in {2,3,4}, every
    edge subset: multicut feasibility of the distance-threshold reduction
    coincides with the t-diameter decomposition predicate."""
    rng = random.Random(seed + 6)
    subsets = 0
    for _ in range(100):
        n = rng.randint(2, 8)
        g = _random_connected(rng, n, rng.randint(0, 5))
        if g.m > 12:
            continue
        for t in (2, 3, 4):
            inst, x = reduce_to_multicut(g, t)
            for mask in range(1 << g.m):
                F = [e for e in range(g.m) if mask >> e & 1]
                a = is_feasible_multicut(inst, F)
                b = g.is_t_diameter_decomposition(F, t)
                if a != b:
                    return False, f"n={n}, t={t}, F={F}: multicut {a} vs decomposition {b}"
                subsets += 1
    return True, f"{subsets} subset comparisons, zero discrepancies"


def _all_simple_paths(g: Graph, s: int, t: int) -> list[list[int]]:
    out: list[list[int]] = []
    path = [s]
    onpath = {s}

    def walk(v: int) -> None:
        if v == t:
            out.append(list(path))
            return
        for e in g.incident(v):
            u = e.other(v)
            if u not in onpath:
                path.append(u)
                onpath.add(u)
                walk(u)
                path.pop()
                onpath.remove(u)

    walk(s)
    return out


def _full_path_lp(instance: MulticutInstance):
    from .multicut import path_edge_ids

    g = instance.graph
    lp = LinearProgram("min")
    for e in g.edges:
        lp.add_variable(instance.costs[e.id])
    for s, t in instance.iter_pairs():
        for vpath in _all_simple_paths(g, s, t):
            lp.add_constraint({e: 1 for e in path_edge_ids(g, vpath)}, ">=", 1)
    out = lp.solve()
    assert isinstance(out, Optimal)
    return out.objective


def criterion_7_solver_oracle(seed: int = DEFAULT_SEED) -> tuple[bool, str]:
    """200 random instances (<= 16 edges, <= 4 pairs): branch and bound
    matches exhaustive search, the cutting-plane LP matches the LP with
    every simple path enumerated, gap >= 1 always and = 1 for <= 2 pairs."""
    rng = random.Random(seed + 7)
    done = 0
    gaps_one = 0
    while done < 200:
        n = rng.randint(2, 10)
        g = _random_connected(rng, n, rng.randint(0, 6))
        if g.m > 16:
            continue
        npairs = rng.randint(1, 4)
        pairs = set()
        for _ in range(npairs):
            a, b = rng.randrange(n), rng.randrange(n)
            if a != b:
                pairs.add((min(a, b), max(a, b)))
        if not pairs:
            continue
        costs = [Fraction(rng.randint(1, 5)) for _ in range(g.m)]
        inst = MulticutInstance(g, costs, sorted(pairs))
        frac = solve_fractional(inst)
        full = _full_path_lp(inst)
        if frac.objective != full:
            return False, f"instance {done}: cutting-plane LP {frac.objective} != full LP {full}"
        flow = extract_multiflow(inst, frac)  # asserts total = LP and capacity
        ip = min_weight_multicut(inst, costs)
        ex = exhaustive_min_multicut(inst)
        if not ip.optimal or ip.cost != ex.cost:
            return False, f"instance {done}: bnb {ip.cost} != exhaustive {ex.cost}"
        if frac.objective > 0:
            ratio = ip.cost / frac.objective
            if ratio < 1:
                return False, f"instance {done}: gap {ratio} < 1"
            if len(inst.pairs) <= 2 and ratio != 1:
                return False, f"instance {done}: gap {ratio} != 1 with {len(inst.pairs)} pairs"
            if ratio == 1:
                gaps_one += 1
        done += 1
    return True, f"200 instances agree with oracles; {gaps_one} had gap exactly 1"


def criterion_8_convex_decomposition(seed: int = DEFAULT_SEED) -> tuple[bool, str]:
    """Star: min_alpha = 4/3 against a brute-force oracle.  50 random
    trees: min_alpha <= 2 at the LP optimum; a query just below min_alpha
    yields a verified witness."""
    star = gen_star_gap(3)
    x = solve_fractional(star).x
    dec = min_alpha(star, x)
    if dec.alpha != Fraction(4, 3):
        return False, f"star min_alpha {dec.alpha} != 4/3"
    oracle = _brute_force_min_alpha(star, x)
    if oracle != dec.alpha:
        return False, f"star brute-force alpha {oracle} != {dec.alpha}"
    rng = random.Random(seed + 8)
    witnesses = 0
    for i in range(50):
        n = rng.randint(2, 13)
        tree = _random_tree(rng, n)
        pairs = set()
        for _ in range(rng.randint(1, 3)):
            a, b = rng.randrange(n), rng.randrange(n)
            if a != b:
                pairs.add((min(a, b), max(a, b)))
        if not pairs:
            continue
        inst = MulticutInstance(tree, 1, sorted(pairs))
        frac = solve_fractional(inst)
        dec = min_alpha(inst, frac.x)  # re-verified term by term internally
        if dec.alpha > 2:
            return False, f"tree {i}: min_alpha {dec.alpha} > 2"
        below = dec.alpha - Fraction(1, 64)
        if below > 0:
            res = decompose(inst, frac.x, below)
            if not isinstance(res, DominationWitness):
                return False, f"tree {i}: no witness below min_alpha"
            witnesses += 1
    return True, f"star oracle 4/3 exact; tree alphas <= 2; {witnesses} verified witnesses"


def _brute_force_min_alpha(instance: MulticutInstance, x) -> Fraction:
    """Small-instance oracle: LP over all feasible multicuts explicitly."""
    m = instance.graph.m
    cuts = []
    for mask in range(1 << m):
        F = [e for e in range(m) if mask >> e & 1]
        if is_feasible_multicut(instance, F):
            cuts.append(F)
    lp = LinearProgram("min")
    a = lp.add_variable(Fraction(1))
    for e in range(m):
        lp.add_constraint({a: -Fraction(x[e])}, "<=", ZERO)
    lp.add_constraint({}, "==", Fraction(1))
    for F in cuts:
        entries = {e: 1 for e in F}
        entries[m] = 1
        lp.add_column(ZERO, entries)
    out = lp.solve()
    assert isinstance(out, Optimal)
    return out.objective


def criterion_9_projection(seed: int = DEFAULT_SEED) -> tuple[bool, str]:
    """100 random load distributions on two-factor one-sums project to
    valid distributions on each factor with the same load bound."""
    rng = random.Random(seed + 9)
    done = 0
    while done < 100:
        parts = []
        for _ in range(2):
            n = rng.randint(2, 5)
            h = _random_connected(rng, n, rng.randint(0, 2))
            parts.append((h, rng.randrange(n)))
        glued, vmaps, main = one_sum(parts)
        if glued.m > 10:
            continue
        w = rng.choice((1, 2))
        res = min_pload(glued, w)
        dist = res.distribution
        if rng.random() < 0.5:
            # re-solve at the same p with a random objective for variety
            fam = dist.family
            obj = [Fraction(rng.randint(0, 3)) for _ in fam.members]
            out, dist, _, _ = _FamilyLp(fam, member_obj=obj, p_value=res.p).solve()
            assert isinstance(out, Optimal)
        offset = 0
        for h, _ in parts:
            eids = range(offset, offset + h.m)
            proj = project(dist, eids)  # raises if a member is invalid
            if proj.total() != 1:
                return False, f"trial {done}: projected mass {proj.total()} != 1"
            if any(load > res.p for load in proj.edge_loads()):
                return False, f"trial {done}: projected load exceeds p = {res.p}"
            offset += h.m
        done += 1
    return True, "100 projections valid with loads within p"


CRITERIA = [
    ("quarter-cost identity", criterion_1_quarter_cost),
    ("integral cost bound", criterion_2_integral_bound),
    ("gadget load frontier", criterion_3_gadget_frontier),
    ("one-sum amplification", criterion_4_amplification),
    ("tree level families", criterion_5_tree_suite),
    ("reduction oracle", criterion_6_reduction_oracle),
    ("solver oracle", criterion_7_solver_oracle),
    ("convex decomposition", criterion_8_convex_decomposition),
    ("distribution projection", criterion_9_projection),
]


def run_all(out=None) -> bool:
    import sys

    out = out or sys.stdout
    all_ok = True
    for i, (name, fn) in enumerate(CRITERIA, start=1):
        t0 = time.time()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failure with the message
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        all_ok &= ok
        status = "PASS" if ok else "FAIL"
        print(f"[{status}] criterion {i} ({name}): {detail} [{time.time() - t0:.1f}s]", file=out)
    return all_ok
