"""Families of t-diameter decompositions: exhaustive enumeration, the
mod-w level construction on trees, and the reduction that identifies
t-diameter decompositions with multicuts of a distance-threshold instance."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .graph import Graph, GraphError, INF
from .multicut import DistancePairs, MulticutInstance

DEFAULT_EDGE_CAP = 20


class EnumerationCapExceeded(RuntimeError):
    pass


def mask_to_ids(mask: int) -> tuple[int, ...]:
    ids = []
    e = 0
    while mask:
        if mask & 1:
            ids.append(e)
        mask >>= 1
        e += 1
    return tuple(ids)


def ids_to_mask(ids: Iterable[int]) -> int:
    mask = 0
    for e in ids:
        mask |= 1 << e
    return mask


@dataclass
class DecompositionFamily:
    """All t-diameter decompositions of a graph, as ascending bitmasks.

    When a root is given, ``root_radii[i]`` is the radius of the root's
    component (G-distances) for ``members[i]``; ``radius_bound`` records a
    `radius < bound` filter that was applied to the member list.
    """

    graph: Graph
    t: int
    members: list[int]
    root: int | None = None
    radius_bound: int | None = None
    root_radii: list[int] | None = None

    def __len__(self) -> int:
        return len(self.members)

    def member_ids(self, i: int) -> tuple[int, ...]:
        return mask_to_ids(self.members[i])

    def restrict_radius(self, bound: int) -> "DecompositionFamily":
        if self.root is None or self.root_radii is None:
            raise ValueError("family has no root radii")
        keep = [i for i, r in enumerate(self.root_radii) if r < bound]
        return DecompositionFamily(
            self.graph,
            self.t,
            [self.members[i] for i in keep],
            self.root,
            bound,
            [self.root_radii[i] for i in keep],
        )

    def to_csv(self) -> str:
        lines = ["member_id,bitmask,diameter,radius_from_root"]
        for i, mask in enumerate(self.members):
            diam = self.graph.decomposition_diameter(mask_to_ids(mask))
            rad = "" if self.root_radii is None else str(self.root_radii[i])
            lines.append(f"{i},{mask:#x},{diam},{rad}")
        return "\n".join(lines) + "\n"


def enumerate_decompositions(
    g: Graph,
    t: int,
    root: int | None = None,
    radius_bound: int | None = None,
    cap: int = DEFAULT_EDGE_CAP,
) -> DecompositionFamily:
    """Every edge subset F with diam(F) < t, ascending bitmask order.

    Uses the equivalence  diam(F) < t  <=>  every vertex pair at G-distance
    >= t lies in different components of G - F, plus upward closure (any
    superset of a valid F is valid) to avoid re-checking.
    """
    if not g.unit_lengths():
        raise GraphError("decomposition enumeration requires unit edge lengths")
    if g.m > cap:
        raise EnumerationCapExceeded(f"{g.m} edges exceeds the cap of {cap}")
    if t <= 0:
        raise ValueError("t must be positive")
    n, m = g.n, g.m
    edge_uv = [(e.u, e.v) for e in g.edges]
    far_pairs = []
    for u in range(n):
        row = g.dist_row(u)
        for v in range(u + 1, n):
            if t <= row[v] < INF:
                far_pairs.append((u, v))
    rrow = g.dist_row(root) if root is not None else None

    valid = bytearray(1 << m)
    members: list[int] = []
    radii: list[int] | None = [] if root is not None else None
    for mask in range(1 << m):
        ok = False
        sub = mask
        while sub:
            bit = sub & -sub
            if valid[mask ^ bit]:
                ok = True
                break
            sub ^= bit
        labels = None
        if not ok:
            labels = _labels_for(n, m, edge_uv, mask)
            ok = all(labels[u] != labels[v] for u, v in far_pairs)
        if not ok:
            continue
        valid[mask] = 1
        if root is not None:
            if labels is None:
                labels = _labels_for(n, m, edge_uv, mask)
            lr = labels[root]
            rad = max(rrow[v] for v in range(n) if labels[v] == lr)
            if radius_bound is not None and not rad < radius_bound:
                continue
            members.append(mask)
            radii.append(rad)
        else:
            members.append(mask)
    return DecompositionFamily(g, t, members, root, radius_bound, radii)


def _labels_for(n: int, m: int, edge_uv, mask: int) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in range(m):
        if mask >> e & 1:
            continue
        ra, rb = find(edge_uv[e][0]), find(edge_uv[e][1])
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb
    return [find(v) for v in range(n)]


# -- level decomposition of trees --------------------------------------------


def tree_level_family(tree: Graph, r: int, w: int) -> list[tuple[int, ...]]:
    """F_i = edges whose distance from r is congruent to i mod w.

    The F_i partition E(T) and each one is a 2w-diameter decomposition.
    """
    if w < 1:
        raise ValueError("w must be >= 1")
    if not tree.unit_lengths():
        raise GraphError("tree level decomposition requires unit lengths")
    if tree.m != tree.n - 1 or any(d == INF for d in tree.dist_row(0)):
        raise GraphError("input graph is not a tree")
    tree.check_vertex(r)
    fams: list[list[int]] = [[] for _ in range(w)]
    for e in tree.edges:
        fams[tree.dist_vertex_edge(r, e.id) % w].append(e.id)
    return [tuple(f) for f in fams]


@dataclass
class TreeFamilyReport:
    ok: bool
    failures: list[str] = field(default_factory=list)
    loads: dict[int, Fraction] = field(default_factory=dict)
    radii: list[int] = field(default_factory=list)


def verify_tree_properties(tree: Graph, r: int, w: int) -> TreeFamilyReport:
    """Check the uniform 1/w distribution over the level decompositions:
    the families partition the edges, each is a valid 2w-diameter
    decomposition with rad(r) <= i, per-edge load is exactly 1/w, and the
    cumulative mass of the first k families is k/w = 1 - (2/2w)(w-k)."""
    report = TreeFamilyReport(ok=True)
    fams = tree_level_family(tree, r, w)
    covered: set[int] = set()
    for i, F in enumerate(fams):
        dup = covered & set(F)
        if dup:
            report.failures.append(f"edge {min(dup)} appears in two families")
        covered |= set(F)
        if not tree.is_t_diameter_decomposition(F, 2 * w):
            report.failures.append(f"family {i} is not a {2*w}-diameter decomposition")
        rad = tree.radius_after(F, r)
        report.radii.append(rad)
        if not rad <= i:
            report.failures.append(f"family {i}: root radius {rad} exceeds {i}")
    if covered != set(range(tree.m)):
        missing = min(set(range(tree.m)) - covered)
        report.failures.append(f"edge {missing} not covered by any family")
    y = Fraction(1, w)
    for e in range(tree.m):
        load = sum((y for F in fams if e in F), Fraction(0))
        report.loads[e] = load
        if load != y:
            report.failures.append(f"edge {e}: load {load} != 1/{w}")
    for k in range(1, w + 1):
        mass = k * y
        expect = 1 - Fraction(2, 2 * w) * (w - k)
        if mass != expect:
            report.failures.append(f"k={k}: cumulative mass {mass} != {expect}")
    report.ok = not report.failures
    return report


# -- distance-threshold reduction -------------------------------------------


def reduce_to_multicut(
    g: Graph, t: int, costs=None, explicit_pair_limit: int = 4000
) -> tuple[MulticutInstance, tuple[Fraction, ...]]:
    """Multicut instance whose pairs are all vertex pairs at distance >= t,
    together with the feasible fractional point x(e) = l(e)/t.

    F is a feasible multicut of this instance iff F is a t-diameter
    decomposition of g.
    """
    if not g.unit_lengths():
        raise GraphError("reduction requires unit edge lengths")
    pairs = DistancePairs(g, t)
    npairs = g.n * (g.n - 1) // 2
    if npairs <= explicit_pair_limit:
        pairs = tuple(pairs)
    inst = MulticutInstance(g, 1 if costs is None else costs, pairs)
    x = tuple(Fraction(e.length, t) for e in g.edges)
    return inst, x
