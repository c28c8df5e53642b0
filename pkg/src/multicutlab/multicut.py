"""Minimum multicut: exact fractional LP via cutting planes, exact integral
solutions via branch and bound, and multiflow extraction from LP duals."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .exactlp import LinearProgram, Optimal, rat
from .graph import Graph, INF

ZERO = Fraction(0)
ONE = Fraction(1)
MAX_CUTS_PER_ROUND = 8


class InstanceError(ValueError):
    pass


class BudgetExhausted(RuntimeError):
    pass


class NoMulticutError(InstanceError):
    """No feasible multicut exists under the given restrictions."""


class DistancePairs:
    """Implicit pair set: all vertex pairs at G-distance >= threshold.

    Iterates lazily in ascending (s, t) order, so instances whose pair
    count grows quadratically (or worse) never need the full list
    materialized unless someone actually walks it.
    """

    def __init__(self, graph: Graph, threshold: int):
        if threshold <= 0:
            raise InstanceError("distance threshold must be positive")
        self.graph = graph
        self.threshold = threshold

    def __iter__(self) -> Iterator[tuple[int, int]]:
        g, t = self.graph, self.threshold
        for s in range(g.n):
            row = g.dist_row(s)
            for u in range(s + 1, g.n):
                if t <= row[u] < INF:
                    yield (s, u)

    def __contains__(self, pair: tuple[int, int]) -> bool:
        s, u = pair
        d = self.graph.shortest_dist(s, u)
        return d >= self.threshold and d < INF

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DistancePairs)
            and other.threshold == self.threshold
            and other.graph is self.graph
        )


class MulticutInstance:
    """A graph, nonnegative rational edge costs, and source-sink pairs."""

    def __init__(self, graph: Graph, costs, pairs):
        self.graph = graph
        if isinstance(costs, (int, Fraction)):
            costs = [costs] * graph.m
        self.costs: tuple[Fraction, ...] = tuple(rat(c) for c in costs)
        if len(self.costs) != graph.m:
            raise InstanceError("cost vector length must equal edge count")
        if any(c < 0 for c in self.costs):
            raise InstanceError("costs must be nonnegative")
        if isinstance(pairs, DistancePairs):
            self.pairs = pairs
        else:
            canon = []
            for s, t in pairs:
                graph.check_vertex(s)
                graph.check_vertex(t)
                if s == t:
                    raise InstanceError(f"pair ({s},{t}) has identical endpoints")
                if graph.shortest_dist(s, t) == INF:
                    raise InstanceError(f"pair ({s},{t}) is disconnected")
                canon.append((s, t) if s < t else (t, s))
            canon = sorted(set(canon))
            self.pairs = tuple(canon)

    def iter_pairs(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs)

    def has_pairs(self) -> bool:
        for _ in self.iter_pairs():
            return True
        return False

    def cost_of(self, F: Iterable[int]) -> Fraction:
        return sum((self.costs[e] for e in F), ZERO)

    def fractional_cost(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * v for c, v in zip(self.costs, x)), ZERO)


@dataclass
class FractionalSolution:
    x: tuple
    objective: Fraction
    # generated path rows: (pair, vertex path, edge ids, dual value)
    path_rows: list = field(default_factory=list)
    lp_pivots: int = 0


@dataclass
class MulticutSolution:
    edges: tuple
    cost: Fraction
    optimal: bool = True
    lower_bound: Fraction | None = None
    nodes: int = 0


@dataclass
class MultiflowSolution:
    flows: list  # (vertex path, Fraction flow)
    total: Fraction


@dataclass
class GapReport:
    lp: Fraction
    ip: Fraction
    gap: Fraction | None
    ip_optimal: bool
    degenerate: bool = False


# -- shortest paths under rational edge lengths ------------------------------


def shortest_path_under(
    g: Graph, lengths: Sequence, s: int, t: int
) -> tuple[Fraction, list[int]] | None:
    """Deterministic Dijkstra; returns (distance, vertex path) or None."""
    dist: list = [None] * g.n
    parent = [-1] * g.n
    dist[s] = ZERO
    heap: list[tuple[Fraction, int]] = [(ZERO, s)]
    done = [False] * g.n
    while heap:
        d, v = heapq.heappop(heap)
        if done[v]:
            continue
        done[v] = True
        for e in g.incident(v):
            u = e.other(v)
            nd = d + lengths[e.id]
            if dist[u] is None or nd < dist[u] or (nd == dist[u] and v < parent[u]):
                if not done[u]:
                    dist[u] = nd
                    parent[u] = v
                    heapq.heappush(heap, (nd, u))
    if dist[t] is None:
        return None
    path = [t]
    while path[-1] != s:
        path.append(parent[path[-1]])
    path.reverse()
    return dist[t], path


def path_edge_ids(g: Graph, vpath: Sequence[int]) -> list[int]:
    ids = []
    lookup = {}
    for e in g.edges:
        lookup[(e.u, e.v)] = e.id
        lookup[(e.v, e.u)] = e.id
    for a, b in zip(vpath, vpath[1:]):
        ids.append(lookup[(a, b)])
    return ids


# -- separation --------------------------------------------------------------


def separate(instance: MulticutInstance, x: Sequence) -> tuple[tuple[int, int], list[int]] | None:
    """First pair (ascending order) whose shortest path under x is < 1."""
    g = instance.graph
    xs = [rat(v) for v in x]
    if any(v < 0 for v in xs):
        raise InstanceError("x must be nonnegative")
    for pair in instance.iter_pairs():
        s, t = pair
        res = shortest_path_under(g, xs, s, t)
        if res is not None and res[0] < 1:
            return pair, res[1]
    return None


def separate_all(instance: MulticutInstance, x: Sequence) -> list[tuple[tuple[int, int], list[int]]]:
    """One violated shortest path per violated pair, ascending pair order.

    Batching the cuts keeps the number of LP re-solves proportional to the
    rounds of the cutting-plane loop instead of the row count.
    """
    g = instance.graph
    xs = [rat(v) for v in x]
    if any(v < 0 for v in xs):
        raise InstanceError("x must be nonnegative")
    found = []
    for pair in instance.iter_pairs():
        s, t = pair
        res = shortest_path_under(g, xs, s, t)
        if res is not None and res[0] < 1:
            found.append((pair, res[1]))
    return found


def is_feasible_multicut(instance: MulticutInstance, F: Iterable[int]) -> bool:
    labels = instance.graph.component_labels(set(F))
    return all(labels[s] != labels[t] for s, t in instance.iter_pairs())


# -- fractional LP via cutting planes ---------------------------------------


def solve_fractional(
    instance: MulticutInstance,
    weights: Sequence | None = None,
    fixed_in: Iterable[int] = (),
    fixed_out: Iterable[int] = (),
    seed_paths: Iterable[tuple[tuple[int, int], tuple[int, ...]]] = (),
) -> FractionalSolution:
    """Exact minimum fractional multicut (optionally with fixed variables).

    ``fixed_in`` edges are pinned to x=1, ``fixed_out`` to x=0; both default
    to empty.  ``seed_paths`` warm-starts the row pool with (pair, vertex
    path) entries from earlier solves; every such row is globally valid.
    """
    g = instance.graph
    w = instance.costs if weights is None else tuple(rat(c) for c in weights)
    fin = set(fixed_in)
    fout = set(fixed_out)
    if fin & fout:
        raise InstanceError("an edge cannot be fixed both in and out")
    free = [e.id for e in g.edges if e.id not in fin and e.id not in fout]
    col = {e: j for j, e in enumerate(free)}
    const = sum((w[e] for e in fin), ZERO)

    lp = LinearProgram("min")
    for e in free:
        lp.add_variable(w[e])
    rows: list[tuple[tuple[int, int], tuple[int, ...], tuple[int, ...]]] = []
    seen_rows: set[tuple[int, ...]] = set()

    def add_path_row(pair, vpath) -> bool:
        eids = tuple(path_edge_ids(g, vpath))
        if eids in seen_rows:
            return False
        seen_rows.add(eids)
        rhs = 1 - sum(1 for e in eids if e in fin)
        coeffs = {col[e]: 1 for e in eids if e in col}
        if rhs <= 0:
            return False
        rows.append((pair, tuple(vpath), eids))
        lp.add_constraint(coeffs, ">=", rhs)
        return True

    for pair, vpath in seed_paths:
        add_path_row(pair, vpath)

    pivots = 0
    while True:
        out = lp.solve()
        if not isinstance(out, Optimal):
            raise RuntimeError(f"multicut LP expected optimal, got {out.status}")
        pivots += out.pivots
        x = [ZERO] * g.m
        for e in fin:
            x[e] = ONE
        for e, j in col.items():
            x[e] = out.primal[j]
        viol = separate_all(instance, x)
        if not viol:
            path_rows = [
                (pair, vpath, eids, out.duals[i])
                for i, (pair, vpath, eids) in enumerate(rows)
            ]
            return FractionalSolution(tuple(x), out.objective + const, path_rows, pivots)
        # most violated first, ties by pair order; cap rows added per round
        ranked = sorted(
            range(len(viol)),
            key=lambda i: (sum(x[e] for e in path_edge_ids(g, viol[i][1])), i),
        )
        added = [
            add_path_row(*viol[i]) for i in ranked[:MAX_CUTS_PER_ROUND]
        ]
        if not any(added):
            raise RuntimeError("separation returned only known paths (internal bug)")


def extract_multiflow(instance: MulticutInstance, frac: FractionalSolution) -> MultiflowSolution:
    """Path flows from the duals of the generated path rows.

    Valid for unrestricted solves: total equals the LP value and per-edge
    flow never exceeds the edge cost (exact dual feasibility).
    """
    flows = [(list(vpath), dual) for (_, vpath, _, dual) in frac.path_rows if dual != 0]
    total = sum((f for _, f in flows), ZERO)
    if total != frac.objective:
        raise RuntimeError("multiflow total does not match the LP value")
    load = [ZERO] * instance.graph.m
    for (_, _, eids, dual) in frac.path_rows:
        for e in eids:
            load[e] += dual
    for e, c in enumerate(instance.costs):
        if load[e] > c:
            raise RuntimeError(f"multiflow exceeds capacity on edge {e}")
    return MultiflowSolution(flows, total)


# -- exact integral multicut: branch and bound -------------------------------


def greedy_multicut(
    instance: MulticutInstance,
    weights: Sequence,
    fixed_in: set[int],
    fixed_out: set[int],
) -> tuple[int, ...] | None:
    """Deterministic feasible multicut: cut each still-connected pair by the
    cheapest selectable edge on its shortest path.  None if impossible."""
    g = instance.graph
    F = set(fixed_in)
    for _ in range(g.m + 1):
        labels = g.component_labels(F)
        pair = next(
            (p for p in instance.iter_pairs() if labels[p[0]] == labels[p[1]]), None
        )
        if pair is None:
            return tuple(sorted(F))
        res = _shortest_path_avoiding(g, F, pair[0], pair[1])
        if res is None:
            return tuple(sorted(F))  # already cut (should not happen)
        eids = path_edge_ids(g, res)
        candidates = [e for e in eids if e not in fixed_out]
        if not candidates:
            return None
        F.add(min(candidates, key=lambda e: (weights[e], e)))
    return None


def _shortest_path_avoiding(g: Graph, banned: set[int], s: int, t: int):
    from collections import deque

    parent = [-1] * g.n
    seen = [False] * g.n
    seen[s] = True
    dq = deque([s])
    while dq:
        v = dq.popleft()
        if v == t:
            break
        for e in g.incident(v):
            if e.id in banned:
                continue
            u = e.other(v)
            if not seen[u]:
                seen[u] = True
                parent[u] = v
                dq.append(u)
    if not seen[t]:
        return None
    path = [t]
    while path[-1] != s:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def _pair_uncuttable(instance: MulticutInstance, fixed_out: set[int]) -> bool:
    """True if some pair is joined by fixed-out edges alone."""
    g = instance.graph
    removed = set(e.id for e in g.edges) - fixed_out
    labels = g.component_labels(removed)
    return any(labels[s] == labels[t] for s, t in instance.iter_pairs())


def min_weight_multicut(
    instance: MulticutInstance,
    weights: Sequence | None = None,
    node_budget: int | None = None,
    forbidden: Iterable[int] = (),
) -> MulticutSolution:
    """Exact minimum-weight multicut by branch and bound.

    ``forbidden`` edges may never enter the cut.  The LP bound at each node
    is the cutting-plane relaxation with the node's fixings; branching is
    on the variable closest to 1/2 (ties to the lowest edge id).
    """
    g = instance.graph
    w = instance.costs if weights is None else tuple(rat(c) for c in weights)
    root_out = set(forbidden)
    if not instance.has_pairs():
        return MulticutSolution((), ZERO, optimal=True, lower_bound=ZERO, nodes=0)
    if _pair_uncuttable(instance, root_out):
        raise NoMulticutError("some pair cannot be separated with the allowed edges")

    incumbent = greedy_multicut(instance, w, set(), root_out)
    if incumbent is None:
        raise RuntimeError("greedy start failed on a cuttable instance (internal bug)")
    best_cost = sum((w[e] for e in incumbent), ZERO)
    best_set = incumbent

    path_pool: list[tuple[tuple[int, int], tuple[int, ...]]] = []
    # stack entries: (fixed_in, fixed_out, parent_bound)
    stack: list[tuple[frozenset[int], frozenset[int], Fraction]] = [
        (frozenset(), frozenset(root_out), ZERO)
    ]
    nodes = 0
    open_bound_floor: list[Fraction] = []
    exhausted = False
    while stack:
        fin, fout, pbound = stack.pop()
        if pbound >= best_cost:
            continue
        if node_budget is not None and nodes >= node_budget:
            exhausted = True
            open_bound_floor.append(pbound)
            continue
        if _pair_uncuttable(instance, set(fout)):
            continue
        nodes += 1
        frac = solve_fractional(
            instance, weights=w, fixed_in=fin, fixed_out=fout, seed_paths=path_pool
        )
        for pair, vpath, _, _ in frac.path_rows:
            entry = (pair, vpath)
            if entry not in path_pool:
                path_pool.append(entry)
        if frac.objective >= best_cost:
            continue
        x = frac.x
        fractional = [
            e.id for e in g.edges if e.id not in fin and e.id not in fout and 0 < x[e.id] < 1
        ]
        if not fractional:
            F = tuple(sorted(e.id for e in g.edges if x[e.id] == 1))
            cost = sum((w[e] for e in F), ZERO)
            if cost < best_cost and is_feasible_multicut(instance, F):
                best_cost = cost
                best_set = F
            continue
        half = Fraction(1, 2)
        branch = min(fractional, key=lambda e: (abs(x[e] - half), e))
        # explore the x=1 branch first (pushed last)
        stack.append((fin, fout | {branch}, frac.objective))
        stack.append((fin | {branch}, fout, frac.objective))

    if exhausted:
        lb = min(open_bound_floor + [best_cost])
        return MulticutSolution(best_set, best_cost, optimal=False, lower_bound=lb, nodes=nodes)
    return MulticutSolution(best_set, best_cost, optimal=True, lower_bound=best_cost, nodes=nodes)


def solve_integral(
    instance: MulticutInstance, node_budget: int | None = None
) -> MulticutSolution:
    return min_weight_multicut(instance, None, node_budget)


def exhaustive_min_multicut(
    instance: MulticutInstance, weights: Sequence | None = None
) -> MulticutSolution:
    """Brute-force oracle: minimize over all edge subsets.  Test-scale only."""
    g = instance.graph
    if g.m > 20:
        raise InstanceError("exhaustive search capped at 20 edges")
    w = instance.costs if weights is None else tuple(rat(c) for c in weights)
    pairs = list(instance.iter_pairs())
    best = None
    best_cost = None
    for mask in range(1 << g.m):
        F = [e for e in range(g.m) if mask >> e & 1]
        cost = sum((w[e] for e in F), ZERO)
        if best_cost is not None and cost >= best_cost:
            continue
        labels = g.component_labels(set(F))
        if all(labels[s] != labels[t] for s, t in pairs):
            best, best_cost = tuple(F), cost
    if best is None:
        raise InstanceError("no feasible multicut exists")
    return MulticutSolution(best, best_cost, optimal=True, lower_bound=best_cost)


def gap(instance: MulticutInstance, node_budget: int | None = None) -> GapReport:
    frac = solve_fractional(instance)
    integ = solve_integral(instance, node_budget)
    if frac.objective <= 0:
        return GapReport(frac.objective, integ.cost, None, integ.optimal, degenerate=True)
    if frac.objective > integ.cost:
        raise RuntimeError("weak duality violated (internal bug)")
    return GapReport(frac.objective, integ.cost, integ.cost / frac.objective, integ.optimal)
