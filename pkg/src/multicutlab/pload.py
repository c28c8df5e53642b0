"""Distributions over 2w-diameter decomposition families.

All LPs here have one variable per family member (plus possibly the load
bound p itself) and are solved by exact column generation: a small master
over generated members, priced by scanning the enumerated family.  Large
families are pre-filtered with floating point, but optimality is always
certified by a final exact scan, so no float value ever decides anything.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .decompositions import (
    DecompositionFamily,
    enumerate_decompositions,
    ids_to_mask,
    mask_to_ids,
)
from .exactlp import Infeasible, LinearProgram, Optimal, rat
from .graph import Graph, GraphError, one_sum
from .multicut import path_edge_ids

ZERO = Fraction(0)
ONE = Fraction(1)

_NUMPY_THRESHOLD = 5000


class ProjectionError(ValueError):
    pass


@dataclass
class Distribution:
    family: DecompositionFamily
    y: dict  # member index -> positive Fraction

    def total(self) -> Fraction:
        return sum(self.y.values(), ZERO)

    def edge_loads(self) -> list:
        loads = [ZERO] * self.family.graph.m
        for i, v in self.y.items():
            mask = self.family.members[i]
            for e in mask_to_ids(mask):
                loads[e] += v
        return loads

    def support_masks(self) -> list[int]:
        return [self.family.members[i] for i in sorted(self.y)]


@dataclass
class PloadResult:
    status: str  # "optimal" or "infeasible"
    w: int
    p: Fraction | None = None
    k: int | None = None
    distribution: Distribution | None = None
    farkas: list | None = None
    family_size: int = 0
    lp_pivots: int = 0
    objective: Fraction | None = None


def verify_pload_result(res: PloadResult) -> None:
    """Re-check every constraint of a returned distribution exactly,
    independent of the LP solver."""
    if res.status != "optimal":
        return
    dist = res.distribution
    if dist.total() != 1:
        raise AssertionError("distribution mass is not 1")
    if any(v < 0 for v in dist.y.values()):
        raise AssertionError("negative weight in distribution")
    if res.p is not None:
        for e, load in enumerate(dist.edge_loads()):
            if load > res.p:
                raise AssertionError(f"edge {e} load {load} exceeds p={res.p}")
    fam = dist.family
    if fam.root is not None and fam.radius_bound is not None:
        for i in dist.y:
            if not fam.root_radii[i] < fam.radius_bound:
                raise AssertionError("support member outside the rooted subfamily")
    if res.k is not None:
        mass = sum(
            (v for i, v in dist.y.items() if fam.root_radii[i] < res.k), ZERO
        )
        if not mass >= 1 - res.p * (res.w - res.k):
            raise AssertionError("radius-mass constraint violated")


# -- column generation engine -------------------------------------------------


class _FamilyLp:
    """min  sum_j obj_j y_j (+ p if p is a variable)
    s.t.   load_e(y) <= p            for every edge
           sum_j y_j == 1
           optional:  sum_{flagged j} y_j + p_coef * p >= rhs
           y >= 0  (and p >= 0 when it is a variable)
    """

    def __init__(
        self,
        family: DecompositionFamily,
        member_obj=None,
        p_value: Fraction | None = None,
        extra_flags: Sequence[int] | None = None,
        extra_p_coef: Fraction = ZERO,
        extra_rhs: Fraction | None = None,
        minimize_p: bool = False,
    ):
        self.family = family
        self.g = family.graph
        self.m = self.g.m
        self.members = family.members
        self.obj = member_obj  # None means all-zero
        self.p_value = p_value
        self.minimize_p = minimize_p
        self.flags = extra_flags
        self.extra_p_coef = extra_p_coef
        self.extra_rhs = extra_rhs
        self._np = None

    # row layout: edges 0..m-1, mass row m, extra row m+1 (if present)

    def _member_obj(self, j: int) -> Fraction:
        return ZERO if self.obj is None else self.obj[j]

    def _np_data(self):
        if self._np is None:
            import numpy as np

            n = len(self.members)
            mat = np.zeros((n, self.m), dtype=np.float64)
            for j, mask in enumerate(self.members):
                for e in mask_to_ids(mask):
                    mat[j, e] = 1.0
            obj = np.zeros(n) if self.obj is None else np.array(
                [float(c) for c in self.obj]
            )
            flags = (
                None
                if self.flags is None
                else np.array(self.flags, dtype=np.float64)
            )
            self._np = (np, mat, obj, flags)
        return self._np

    def _scan(self, row_mult: list, use_obj: bool, skip: set[int]):
        """Most negative score_j = [obj_j] + sum_i row_mult_i a_ij, exactly.

        Returns (index, exact score) of the best member, or (None, 0) if no
        member scores below zero.  A float pre-filter narrows candidates on
        large families; the final decision is always exact.
        """
        edge_mult = row_mult[: self.m]
        mass_mult = row_mult[self.m]
        extra_mult = row_mult[self.m + 1] if len(row_mult) > self.m + 1 else ZERO

        def exact_score(j: int) -> Fraction:
            s = mass_mult
            if use_obj:
                s = s + self._member_obj(j)
            mask = self.members[j]
            while mask:
                bit = mask & -mask
                s += edge_mult[bit.bit_length() - 1]
                mask ^= bit
            if self.flags is not None and self.flags[j]:
                s += extra_mult
            return s

        candidates: Iterable[int]
        if len(self.members) > _NUMPY_THRESHOLD:
            np, mat, obj, flags = self._np_data()
            scores = mat @ np.array([float(c) for c in edge_mult])
            scores += float(mass_mult)
            if use_obj:
                scores = scores + obj
            if flags is not None and extra_mult:
                scores = scores + flags * float(extra_mult)
            scale = max(
                1.0,
                max((abs(float(c)) for c in edge_mult), default=0.0),
                abs(float(mass_mult)),
                abs(float(extra_mult)),
            )
            margin = scale * (self.m + 3) * 1e-12
            candidates = [int(j) for j in np.nonzero(scores < margin)[0]]
        else:
            candidates = range(len(self.members))

        best_j, best_s = None, ZERO
        for j in candidates:
            if j in skip:
                continue
            s = exact_score(j)
            if s < best_s:
                best_j, best_s = j, s
        return best_j, best_s

    def solve(self):
        nrows = self.m + 1 + (1 if self.flags is not None else 0)
        lp = LinearProgram("min")
        p_var = None
        if self.minimize_p:
            p_var = lp.add_variable(ONE)
        # rows first referencing only p
        for e in range(self.m):
            coeffs = {} if p_var is None else {p_var: Fraction(-1)}
            rhs = ZERO if p_var is not None else self.p_value
            lp.add_constraint(dict(coeffs), "<=", rhs)
        lp.add_constraint({}, "==", ONE)
        if self.flags is not None:
            coeffs = {} if p_var is None else {p_var: self.extra_p_coef}
            lp.add_constraint(dict(coeffs), ">=", self.extra_rhs)

        in_master: dict[int, int] = {}  # member index -> lp column

        def add_member(j: int) -> None:
            entries = {e: ONE for e in mask_to_ids(self.members[j])}
            entries[self.m] = ONE
            if self.flags is not None and self.flags[j]:
                entries[self.m + 1] = ONE
            in_master[j] = lp.add_column(self._member_obj(j), entries)

        # the all-edges member is always a valid start
        full = ids_to_mask(range(self.m))
        try:
            add_member(self.members.index(full))
        except ValueError:
            raise GraphError("family lacks the all-edges member (internal bug)")

        pivots = 0
        while True:
            out = lp.solve()
            pivots += getattr(out, "pivots", 0)
            if isinstance(out, Optimal):
                # price: reduced cost = obj_j - sum duals_i a_ij
                mult = [-d for d in out.duals[:nrows]]
                j, score = self._scan(mult, use_obj=True, skip=set(in_master))
                if j is None:
                    y = {
                        jj: out.primal[cj]
                        for jj, cj in in_master.items()
                        if out.primal[cj] != 0
                    }
                    dist = Distribution(self.family, y)
                    p = (
                        out.primal[p_var]
                        if p_var is not None
                        else self.p_value
                    )
                    return out, dist, p, pivots
                add_member(j)
            elif isinstance(out, Infeasible):
                # a column with sum_i u_i a_ij < 0 breaks the certificate
                j, score = self._scan(out.farkas[:nrows], use_obj=False, skip=set(in_master))
                if j is None:
                    return out, None, None, pivots
                add_member(j)
            else:
                raise RuntimeError("family LP is never unbounded (mass row bounds it)")


# -- public operations --------------------------------------------------------


def min_pload(g: Graph, w: int, cap: int = 20, family: DecompositionFamily | None = None) -> PloadResult:
    """Smallest p such that some distribution over 2w-diameter
    decompositions loads every edge at most p."""
    fam = family if family is not None else enumerate_decompositions(g, 2 * w, cap=cap)
    out, dist, p, pivots = _FamilyLp(fam, minimize_p=True).solve()
    res = PloadResult(
        "optimal", w, p=p, distribution=dist, family_size=len(fam), lp_pivots=pivots,
        objective=out.objective,
    )
    verify_pload_result(res)
    return res


def _rooted_family(g: Graph, r: int, w: int, cap: int) -> DecompositionFamily:
    fam = enumerate_decompositions(g, 2 * w, root=r, cap=cap)
    return fam.restrict_radius(w)


def min_pload_rooted(
    g: Graph, r: int, w: int, cap: int = 20, family: DecompositionFamily | None = None
) -> PloadResult:
    """As min_pload, but the support is restricted to decompositions whose
    root component has radius < w."""
    fam = family if family is not None else _rooted_family(g, r, w, cap)
    out, dist, p, pivots = _FamilyLp(fam, minimize_p=True).solve()
    res = PloadResult(
        "optimal", w, p=p, distribution=dist, family_size=len(fam), lp_pivots=pivots,
        objective=out.objective,
    )
    verify_pload_result(res)
    return res


def min_pload_radius(
    g: Graph,
    r: int,
    w: int,
    k: int,
    cap: int = 20,
    family: DecompositionFamily | None = None,
) -> PloadResult:
    """Rooted support plus the radius-k mass constraint
    sum_{rad < k} y + (w-k) p >= 1; minimizes p."""
    if not 1 <= k <= w:
        raise ValueError("need 1 <= k <= w")
    fam = family if family is not None else _rooted_family(g, r, w, cap)
    flags = [1 if rad < k else 0 for rad in fam.root_radii]
    out, dist, p, pivots = _FamilyLp(
        fam,
        minimize_p=True,
        extra_flags=flags,
        extra_p_coef=Fraction(w - k),
        extra_rhs=ONE,
    ).solve()
    if isinstance(out, Infeasible):
        return PloadResult(
            "infeasible", w, k=k, farkas=out.farkas, family_size=len(fam), lp_pivots=pivots
        )
    res = PloadResult(
        "optimal", w, p=p, k=k, distribution=dist, family_size=len(fam),
        lp_pivots=pivots, objective=out.objective,
    )
    verify_pload_result(res)
    return res


def mass_outside_rooted(
    g: Graph,
    r: int,
    w: int,
    p,
    cap: int = 20,
    family: DecompositionFamily | None = None,
) -> PloadResult:
    """Minimum probability mass that a p-load distribution must place on
    decompositions whose root component has radius >= w."""
    p = rat(p)
    fam = family if family is not None else enumerate_decompositions(g, 2 * w, root=r, cap=cap)
    obj = [ONE if rad >= w else ZERO for rad in fam.root_radii]
    out, dist, _, pivots = _FamilyLp(fam, member_obj=obj, p_value=p).solve()
    if isinstance(out, Infeasible):
        return PloadResult(
            "infeasible", w, p=p, farkas=out.farkas, family_size=len(fam), lp_pivots=pivots
        )
    res = PloadResult(
        "optimal", w, p=p, distribution=dist, family_size=len(fam), lp_pivots=pivots,
        objective=out.objective,
    )
    verify_pload_result(res)
    return res


@dataclass
class AmplificationRow:
    m: int
    p: Fraction
    z: Fraction
    family_size: int
    graph_edges: int
    lp_pivots: int


def copy_escape_flags(
    family: DecompositionFamily, copy_vertices, w: int
) -> list[int]:
    """For each family member: 1 iff the root's component, restricted to
    the given vertex set, reaches G-distance >= w from the root."""
    from .decompositions import _labels_for

    g = family.graph
    root = family.root
    row = g.dist_row(root)
    edge_uv = [(e.u, e.v) for e in g.edges]
    cset = set(copy_vertices)
    flags = []
    for mask in family.members:
        labels = _labels_for(g.n, g.m, edge_uv, mask)
        lr = labels[root]
        rad = max(
            (row[v] for v in cset if labels[v] == lr), default=0
        )
        flags.append(1 if rad >= w else 0)
    return flags


def amplification_experiment(
    g: Graph, r: int, w: int, ms: Iterable[int], p=None, cap: int = 20
) -> list[AmplificationRow]:
    """Glue m copies of g at r and measure the least probability z_m that
    the first copy's root component has radius >= w, over distributions
    loading each edge at most p (default: the glued graph's exact minimum
    load).  Since at most one copy can reach radius >= w in any single
    decomposition, m * z_m <= 1 must always hold; this is asserted.
    """
    if p is not None:
        p = rat(p)
    rows = []
    for m in ms:
        if m < 1:
            raise ValueError("m must be >= 1")
        glued, vmaps, main = one_sum([(g, r)] * m)
        fam = enumerate_decompositions(glued, 2 * w, root=main, cap=cap)
        pm = p if p is not None else min_pload(glued, w, family=fam).p
        obj = [
            ONE if f else ZERO
            for f in copy_escape_flags(fam, vmaps[0].values(), w)
        ]
        out, dist, _, pivots = _FamilyLp(fam, member_obj=obj, p_value=pm).solve()
        if isinstance(out, Infeasible):
            raise RuntimeError(f"no {pm}-load distribution on the {m}-fold sum")
        z = out.objective
        if m * z > 1:
            raise AssertionError(f"m*z = {m}*{z} exceeds 1")
        rows.append(AmplificationRow(m, pm, z, len(fam), glued.m, pivots))
    return rows


# -- path-hit mass bound -------------------------------------------------------


@dataclass
class PathHitReport:
    ok: bool
    single_hit_mass: Fraction
    multi_hit_mass: Fraction
    bound: Fraction
    failures: list = field(default_factory=list)


def check_path_hits(
    g: Graph, r: int, w: int, path_vertices: Sequence[int], dist: Distribution, p
) -> PathHitReport:
    """For a shortest path P of length w starting at r: every member of the
    rooted family intersects P, and the mass of members hitting P twice or
    more is at most w*p - 1."""
    p = rat(p)
    if path_vertices[0] != r:
        raise ValueError("path must start at the root")
    eids = path_edge_ids(g, path_vertices)
    plen = sum(g.edges[e].length for e in eids)
    if plen != w or g.shortest_dist(r, path_vertices[-1]) != w:
        raise ValueError("path must be a shortest path of length exactly w")
    fam = dist.family
    if fam.root != r or fam.radius_bound is None or fam.radius_bound > w:
        raise ValueError("distribution must live on the rooted subfamily")
    pmask = ids_to_mask(eids)
    failures = []
    for i, mask in enumerate(fam.members):
        if mask & pmask == 0:
            failures.append(f"member {i} misses the path")
    multi = ZERO
    single = ZERO
    for i, v in dist.y.items():
        hits = bin(fam.members[i] & pmask).count("1")
        if hits >= 2:
            multi += v
        elif hits == 1:
            single += v
    bound = w * p - 1
    if multi > bound:
        failures.append(f"double-hit mass {multi} exceeds {bound}")
    return PathHitReport(not failures, single, multi, bound, failures)


# -- projection ---------------------------------------------------------------


def subgraph_on_edges(g: Graph, edge_ids: Sequence[int]) -> tuple[Graph, dict[int, int], dict[int, int]]:
    """Subgraph spanned by an edge subset.  Returns (H, vertex map, edge map)
    with maps going from g ids to H ids."""
    eids = sorted(set(edge_ids))
    verts = sorted({v for e in eids for v in g.edges[e].endpoints()})
    vmap = {v: i for i, v in enumerate(verts)}
    edges = []
    emap = {}
    for new_id, e in enumerate(eids):
        edge = g.edges[e]
        emap[e] = new_id
        edges.append((vmap[edge.u], vmap[edge.v], edge.length))
    marks = {name: vmap[v] for name, v in g.marks.items() if v in vmap}
    return Graph(len(verts), edges, marks), vmap, emap


def project(dist: Distribution, edge_ids: Sequence[int]) -> Distribution:
    """Push a distribution on G down to the subgraph spanned by an edge
    subset, aggregating members with equal intersection.  Every projected
    member must itself be a valid decomposition of the subgraph."""
    g = dist.family.graph
    t = dist.family.t
    h, _, emap = subgraph_on_edges(g, edge_ids)
    sub_mask = ids_to_mask(emap.keys())
    agg: dict[int, Fraction] = {}
    for i, v in dist.y.items():
        inter = dist.family.members[i] & sub_mask
        hmask = ids_to_mask(emap[e] for e in mask_to_ids(inter))
        agg[hmask] = agg.get(hmask, ZERO) + v
    masks = sorted(agg)
    for mask in masks:
        if not h.is_t_diameter_decomposition(mask_to_ids(mask), t):
            raise ProjectionError(
                f"projected member {mask:#x} is not a {t}-diameter decomposition of the subgraph"
            )
    fam = DecompositionFamily(h, t, masks)
    y = {i: agg[mask] for i, mask in enumerate(masks)}
    return Distribution(fam, y)
