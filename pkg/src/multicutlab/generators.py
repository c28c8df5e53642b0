"""Instance constructors: the cactus gap family, the cycle gadget with
pendant paths, star gap instances, pendant-path attachment, and the
one-sum amplifier."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import Graph, GraphError, one_sum
from .multicut import DistancePairs, MulticutInstance

EXPLICIT_PAIR_LIMIT_K = 10


@dataclass
class CactusGapInstance:
    """k-parameterized cactus whose fractional multicut at x = 1/4 costs
    9k^2/4 while every integral multicut costs at least 5k^2 - 9k.

    Edge classes by distance from the hub v0: e1 at distance 0 (cost k),
    e2 at distance 1 (cost 2), e3 at distance 2 (cost 1).
    """

    k: int
    instance: MulticutInstance
    e1: tuple
    e2: tuple
    e3: tuple

    @property
    def graph(self) -> Graph:
        return self.instance.graph

    def quarter_cost(self) -> Fraction:
        """Cost of the fractional point x = 1/4 on every edge."""
        return self.instance.fractional_cost([Fraction(1, 4)] * self.graph.m)


def _pendant_block() -> Graph:
    """4-cycle v1 v2 v4 v3 with pendant edges v2-v5 and v3-v6."""
    edges = [(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 5)]
    marks = {f"v{i + 1}": i for i in range(6)}
    return Graph(6, edges, marks)


def gen_cactus_gap(k: int) -> CactusGapInstance:
    """Hub vertex v0 joined to k glue points, each carrying k pendant
    blocks; pairs are all vertex pairs at distance >= 4."""
    if k < 1:
        raise ValueError("k must be >= 1")
    h = _pendant_block()
    inner, _, v1 = one_sum([(h, 0)] * k)
    n = inner.n
    edges = [(e.u, e.v, e.length) for e in inner.edges] + [(n, v1, 1)]
    block = Graph(n + 1, edges)
    glued, vmaps, v0 = one_sum([(block, n)] * k)
    marks = {"v0": v0}
    for i, vmap in enumerate(vmaps):
        marks[f"v_{i + 1}"] = vmap[v1]
    g = glued.with_marks(marks)

    row = g.dist_row(v0)
    classes: dict[int, list[int]] = {0: [], 1: [], 2: []}
    for e in g.edges:
        d = min(row[e.u], row[e.v])
        if d not in classes:
            raise GraphError(f"edge {e.id} at unexpected distance {d} from v0")
        classes[d].append(e.id)
    e1, e2, e3 = (tuple(classes[d]) for d in (0, 1, 2))
    if (len(e1), len(e2), len(e3)) != (k, 2 * k * k, 4 * k * k):
        raise GraphError("edge class sizes do not match (k, 2k^2, 4k^2)")
    costs = [0] * g.m
    for e in e1:
        costs[e] = Fraction(k)
    for e in e2:
        costs[e] = Fraction(2)
    for e in e3:
        costs[e] = Fraction(1)
    pairs = DistancePairs(g, 4)
    if k <= EXPLICIT_PAIR_LIMIT_K:
        pairs = tuple(pairs)
    return CactusGapInstance(k, MulticutInstance(g, costs, pairs), e1, e2, e3)


@dataclass
class CycleGadget:
    """Cycle of length 2w split into quarter arcs by the marked vertices
    r, u, r', v, with pendant paths u-u' and v-v' of length w/2.

    ``paths`` names the arc edge sets: P_u (r to u), P_a (u to r'),
    P_b (r' to v), P_v (v to r), P_c (u to u'), P_d (v to v').
    """

    w: int
    graph: Graph
    paths: dict[str, tuple]


def gen_cycle_gadget(w: int) -> CycleGadget:
    if w < 2 or w % 2:
        raise ValueError("w must be even and >= 2")
    q = w // 2
    cyc = 2 * w
    edges = [(i, (i + 1) % cyc, 1) for i in range(cyc)]
    g = Graph(cyc, edges)
    paths = {
        "P_u": tuple(range(0, q)),
        "P_a": tuple(range(q, 2 * q)),
        "P_b": tuple(range(2 * q, 3 * q)),
        "P_v": tuple(range(3 * q, 4 * q)),
    }
    marks = {"r": 0, "u": q, "r'": 2 * q, "v": 3 * q}
    g = g.with_marks(marks)
    g, up, pc = attach_path(g, q, q, "u'")
    paths["P_c"] = pc
    g, vp, pd = attach_path(g, 3 * q, q, "v'")
    paths["P_d"] = pd
    assert g.shortest_dist(up, vp) == 2 * w
    return CycleGadget(w, g, paths)


def gen_star_gap(kleaves: int) -> MulticutInstance:
    """Star with unit costs; pairs are all pairs of leaves."""
    if kleaves < 2:
        raise ValueError("need at least 2 leaves")
    g = Graph(kleaves + 1, [(0, i) for i in range(1, kleaves + 1)], {"center": 0})
    pairs = [(i, j) for i in range(1, kleaves + 1) for j in range(i + 1, kleaves + 1)]
    return MulticutInstance(g, 1, pairs)


def attach_path(
    g: Graph, v: int, length: int, mark: str | None = None
) -> tuple[Graph, int, tuple]:
    """Append a pendant path of ``length`` unit edges at vertex ``v``.

    Returns (new graph, far endpoint, new edge ids); ``mark`` names the
    far endpoint.  length=0 returns the graph unchanged.
    """
    g.check_vertex(v)
    if length < 0:
        raise GraphError("length must be >= 0")
    if length == 0:
        return (g.with_marks({**g.marks, mark: v}) if mark else g), v, ()
    edges = [(e.u, e.v, e.length) for e in g.edges]
    eids = []
    prev = v
    for i in range(length):
        eids.append(len(edges))
        edges.append((prev, g.n + i, 1))
        prev = g.n + i
    marks = dict(g.marks)
    if mark:
        marks[mark] = prev
    return Graph(g.n + length, edges, marks), prev, tuple(eids)


def amplify_one_sum(g: Graph, r: int, m: int) -> tuple[Graph, int]:
    """m disjoint copies of g glued at r; marks carried as name@copy.
    Returns the glued graph and the shared image of r."""
    if m < 1:
        raise ValueError("m must be >= 1")
    glued, _, main = one_sum([(g, r)] * m)
    return glued, main
