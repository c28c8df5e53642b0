"""Simple undirected graphs with positive integer edge lengths.

All distances between vertices of a component are always measured in the
full graph, never in the induced subgraph.  This convention matters: on a
4-cycle with one edge removed, the two former endpoints are at distance 1,
not 3.  Every predicate below sticks to it.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

INF = float("inf")


class GraphError(ValueError):
    """Raised for malformed graphs or invalid vertex/edge references."""


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int
    length: int = 1

    def endpoints(self) -> tuple[int, int]:
        return (self.u, self.v)

    def other(self, x: int) -> int:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise GraphError(f"vertex {x} is not an endpoint of edge {self.id}")


class Graph:
    """Immutable simple graph. Edge ids are dense 0..m-1, lengths >= 1.

    ``marks`` maps symbolic names (e.g. "r", "v0") to vertex ids so that
    generated instances can be addressed without raw ids.
    """

    def __init__(
        self,
        vertex_count: int,
        edges: Iterable[tuple[int, int] | tuple[int, int, int] | Edge],
        marks: Mapping[str, int] | None = None,
    ):
        if vertex_count < 0:
            raise GraphError("vertex_count must be nonnegative")
        self.n = vertex_count
        built: list[Edge] = []
        seen: set[tuple[int, int]] = set()
        for i, e in enumerate(edges):
            if isinstance(e, Edge):
                u, v, length = e.u, e.v, e.length
            elif len(e) == 2:
                (u, v), length = e, 1
            else:
                u, v, length = e
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise GraphError(f"edge {i}: endpoint out of range")
            if u == v:
                raise GraphError(f"edge {i}: self-loop at vertex {u}")
            if length < 1 or length != int(length):
                raise GraphError(f"edge {i}: length must be a positive integer")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphError(f"edge {i}: parallel edge {key}")
            seen.add(key)
            built.append(Edge(i, u, v, int(length)))
        self.edges: tuple[Edge, ...] = tuple(built)
        self.m = len(built)
        self.marks: dict[str, int] = dict(marks or {})
        for name, v in self.marks.items():
            if not (0 <= v < vertex_count):
                raise GraphError(f"mark {name!r}: vertex {v} out of range")
        adj: list[list[Edge]] = [[] for _ in range(vertex_count)]
        for e in built:
            adj[e.u].append(e)
            adj[e.v].append(e)
        self._adj: tuple[tuple[Edge, ...], ...] = tuple(tuple(a) for a in adj)
        self._dist_rows: dict[int, list] = {}

    # -- basic accessors ---------------------------------------------------

    def check_vertex(self, v: int) -> int:
        if not (0 <= v < self.n):
            raise GraphError(f"invalid vertex id {v}")
        return v

    def check_edge(self, e: int) -> Edge:
        if not (0 <= e < self.m):
            raise GraphError(f"invalid edge id {e}")
        return self.edges[e]

    def mark(self, name: str) -> int:
        if name not in self.marks:
            raise GraphError(f"unknown mark {name!r}")
        return self.marks[name]

    def with_marks(self, marks: Mapping[str, int]) -> "Graph":
        return Graph(self.n, self.edges, marks)

    def incident(self, v: int) -> tuple[Edge, ...]:
        return self._adj[self.check_vertex(v)]

    def unit_lengths(self) -> bool:
        return all(e.length == 1 for e in self.edges)

    # -- distances ---------------------------------------------------------

    def _dijkstra(self, src: int) -> list:
        dist = [INF] * self.n
        dist[src] = 0
        heap = [(0, src)]
        while heap:
            d, v = heapq.heappop(heap)
            if d > dist[v]:
                continue
            for e in self._adj[v]:
                u = e.other(v)
                nd = d + e.length
                if nd < dist[u]:
                    dist[u] = nd
                    heapq.heappush(heap, (nd, u))
        return dist

    def dist_row(self, src: int) -> list:
        """Distances from ``src`` to every vertex (INF if disconnected)."""
        self.check_vertex(src)
        row = self._dist_rows.get(src)
        if row is None:
            row = self._dijkstra(src)
            self._dist_rows[src] = row
        return row

    def shortest_dist(self, u: int, v: int):
        self.check_vertex(u)
        self.check_vertex(v)
        return self.dist_row(u)[v]

    def dist_vertex_edge(self, v: int, e: int):
        edge = self.check_edge(e)
        row = self.dist_row(self.check_vertex(v))
        return min(row[edge.u], row[edge.v])

    def diameter(self):
        return max(
            (self.dist_row(u)[v] for u in range(self.n) for v in range(u + 1, self.n)),
            default=0,
        )

    # -- components after removing an edge set ------------------------------

    def _edge_id_set(self, F: Iterable[int]) -> set[int]:
        ids = set(F)
        for e in ids:
            self.check_edge(e)
        return ids

    def component_labels(self, F: Iterable[int]) -> list[int]:
        """Union-find labels of G - F; label is the smallest vertex id."""
        ids = F if isinstance(F, (set, frozenset)) else set(F)
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            if e.id in ids:
                continue
            ra, rb = find(e.u), find(e.v)
            if ra != rb:
                if ra < rb:
                    parent[rb] = ra
                else:
                    parent[ra] = rb
        return [find(v) for v in range(self.n)]

    def component_of(self, F: Iterable[int], v: int) -> tuple[int, ...]:
        self.check_vertex(v)
        labels = self.component_labels(self._edge_id_set(F))
        root = labels[v]
        return tuple(u for u in range(self.n) if labels[u] == root)

    def components(self, F: Iterable[int]) -> list[tuple[int, ...]]:
        labels = self.component_labels(self._edge_id_set(F))
        comps: dict[int, list[int]] = {}
        for v in range(self.n):
            comps.setdefault(labels[v], []).append(v)
        return [tuple(comps[k]) for k in sorted(comps)]

    def radius_after(self, F: Iterable[int], v: int):
        """max G-distance from v to the vertices of its component in G - F."""
        comp = self.component_of(F, v)
        row = self.dist_row(v)
        return max(row[u] for u in comp)

    def decomposition_diameter(self, F: Iterable[int]):
        """max over components of G - F of the pairwise G-distance."""
        best = 0
        for comp in self.components(F):
            for i, u in enumerate(comp):
                row = self.dist_row(u)
                for v in comp[i + 1 :]:
                    d = row[v]
                    if d > best:
                        best = d
        return best

    def is_t_diameter_decomposition(self, F: Iterable[int], t) -> bool:
        """diam(F) < t, strict."""
        return self.decomposition_diameter(F) < t

    # -- operations --------------------------------------------------------

    def subdivide(self, e: int, parts: int) -> tuple["Graph", dict[int, tuple[int, ...]]]:
        """Replace edge ``e`` by a path of ``parts`` unit edges.

        Returns the new graph and a map old edge id -> new edge ids (the
        replaced edge maps to the whole path, in order from its u side).
        """
        edge = self.check_edge(e)
        if parts < 1:
            raise GraphError("parts must be >= 1")
        new_edges: list[tuple[int, int, int]] = []
        remap: dict[int, tuple[int, ...]] = {}
        for old in self.edges:
            if old.id == e:
                continue
            remap[old.id] = (len(new_edges),)
            new_edges.append((old.u, old.v, old.length))
        path_ids = []
        prev = edge.u
        n = self.n
        for i in range(parts):
            nxt = edge.v if i == parts - 1 else n
            if nxt == n:
                n += 1
            path_ids.append(len(new_edges))
            new_edges.append((prev, nxt, 1))
            prev = nxt
        remap[e] = tuple(path_ids)
        return Graph(n, new_edges, self.marks), remap


def one_sum(
    parts: Sequence[tuple[Graph, int]],
) -> tuple[Graph, list[dict[int, int]], int]:
    """Glue graphs at one designated root vertex each.

    Returns the glued graph, per-input vertex maps, and the id of the
    merged main vertex (always 0).  Marks of copy ``i`` are carried over
    as ``name@i``.
    """
    if not parts:
        raise GraphError("one_sum of an empty list")
    vertex_maps: list[dict[int, int]] = []
    edges: list[tuple[int, int, int]] = []
    marks: dict[str, int] = {}
    next_id = 1
    for i, (g, root) in enumerate(parts):
        g.check_vertex(root)
        vmap: dict[int, int] = {root: 0}
        for v in range(g.n):
            if v != root:
                vmap[v] = next_id
                next_id += 1
        for e in g.edges:
            edges.append((vmap[e.u], vmap[e.v], e.length))
        for name, v in g.marks.items():
            marks[f"{name}@{i}"] = vmap[v]
        vertex_maps.append(vmap)
    return Graph(next_id, edges, marks), vertex_maps, 0


def is_cactus(g: Graph) -> bool:
    """True iff every edge lies in at most one cycle.

    Equivalent check: every biconnected block is a single edge or a cycle
    (block has exactly as many edges as vertices).
    """
    visited = [False] * g.n
    depth = [0] * g.n
    low = [0] * g.n
    for start in range(g.n):
        if visited[start]:
            continue
        # Iterative DFS carrying an edge stack for block extraction.
        visited[start] = True
        stack: list[tuple[int, int | None, Iterator[Edge]]] = [
            (start, None, iter(g.incident(start)))
        ]
        edge_stack: list[Edge] = []
        while stack:
            v, pe, it = stack[-1]
            advanced = False
            for e in it:
                if pe is not None and e.id == pe:
                    continue
                u = e.other(v)
                if not visited[u]:
                    visited[u] = True
                    depth[u] = depth[v] + 1
                    low[u] = depth[u]
                    edge_stack.append(e)
                    stack.append((u, e.id, iter(g.incident(u))))
                    advanced = True
                    break
                elif depth[u] < depth[v]:
                    edge_stack.append(e)
                    if depth[u] < low[v]:
                        low[v] = depth[u]
            if advanced:
                continue
            stack.pop()
            if stack:
                parent = stack[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
                if low[v] >= depth[parent]:
                    # block rooted at parent closes; pop up to the tree edge
                    block: list[Edge] = []
                    while True:
                        e = edge_stack.pop()
                        block.append(e)
                        if e.id == pe:
                            break
                    verts = {x for e in block for x in (e.u, e.v)}
                    if len(block) > 1 and len(block) != len(verts):
                        return False
    return True
