"""Dominated convex combinations of multicuts.

Given a fractional point x and a factor alpha, either express alpha*x as a
pointwise upper bound on a convex combination of integral multicuts, or
produce an exact witness vector c >= 0 with  c(F) >= 1 for every multicut F
while  c . (alpha x) < 1, proving no such combination exists.  Columns are
generated on demand; the pricing problem is a minimum weight multicut.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactlp import LinearProgram, Optimal, rat
from .multicut import (
    MulticutInstance,
    NoMulticutError,
    is_feasible_multicut,
    min_weight_multicut,
)

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass
class ConvexDecomposition:
    alpha: Fraction
    multicuts: list[frozenset]
    weights: list
    lp_pivots: int = 0

    def edge_loads(self, m: int) -> list:
        loads = [ZERO] * m
        for F, wt in zip(self.multicuts, self.weights):
            for e in F:
                loads[e] += wt
        return loads

    def to_csv(self) -> str:
        lines = ["weight,edges"]
        for F, wt in zip(self.multicuts, self.weights):
            lines.append(f"{wt},{' '.join(map(str, sorted(F)))}")
        return "\n".join(lines) + "\n"


@dataclass
class DominationWitness:
    """c >= 0 with c(F) >= 1 for every multicut F and c.(alpha x) < 1."""

    alpha: Fraction
    c: list
    value: Fraction  # c . (alpha x), provably < 1
    lp_pivots: int = 0


def verify_decomposition(
    instance: MulticutInstance, x, alpha, dec: ConvexDecomposition
) -> None:
    """Re-check a decomposition term by term, independent of the LP."""
    if sum(dec.weights, ZERO) != 1:
        raise AssertionError("weights do not sum to 1")
    if any(wt < 0 for wt in dec.weights):
        raise AssertionError("negative weight")
    for F in dec.multicuts:
        if not is_feasible_multicut(instance, F):
            raise AssertionError(f"{sorted(F)} is not a multicut")
    for e, load in enumerate(dec.edge_loads(instance.graph.m)):
        if load > alpha * x[e]:
            raise AssertionError(f"edge {e}: load {load} exceeds {alpha}*x = {alpha * x[e]}")


def verify_witness(
    instance: MulticutInstance, x, witness: DominationWitness, budget: int | None = None
) -> None:
    """Certify the witness: min weight of a multicut under c is >= 1 while
    the witness value c.(alpha x) is < 1."""
    c = witness.c
    if any(v < 0 for v in c):
        raise AssertionError("witness has a negative entry")
    val = sum((ci * witness.alpha * xi for ci, xi in zip(c, x)), ZERO)
    if val != witness.value or not val < 1:
        raise AssertionError("witness value is not below 1")
    sol = min_weight_multicut(instance, c, node_budget=budget)
    if not sol.optimal or sol.cost < 1:
        raise AssertionError(f"a multicut of weight {sol.cost} < 1 exists")


def _zero_edges(x) -> frozenset:
    return frozenset(e for e, xe in enumerate(x) if xe == 0)


def _price(instance: MulticutInstance, weights, forbidden, budget):
    """Min weight multicut avoiding the forbidden edges, or None if the
    pairs cannot be cut without them."""
    try:
        return min_weight_multicut(
            instance, weights, node_budget=budget, forbidden=forbidden
        )
    except NoMulticutError:
        return None


def decompose(instance: MulticutInstance, x, alpha, node_budget: int | None = None):
    """Dominated convex combination of multicuts under alpha*x, or a
    witness that none exists.  Returns ConvexDecomposition or
    DominationWitness."""
    alpha = rat(alpha)
    x = [rat(v) for v in x]
    m = instance.graph.m
    if len(x) != m:
        raise ValueError("x must have one entry per edge")
    if alpha < 0 or any(v < 0 for v in x):
        raise ValueError("alpha and x must be nonnegative")
    forbidden = _zero_edges(x)

    # max sum_F y_F  s.t.  sum_{F ni e} y_F <= alpha x(e),  y >= 0
    lp = LinearProgram("max")
    for e in range(m):
        lp.add_constraint({}, "<=", alpha * x[e])
    cuts: list[frozenset] = []

    def add_cut(F: frozenset) -> None:
        lp.add_column(ONE, {e: ONE for e in F})
        cuts.append(F)

    pivots = 0
    seed = _price(instance, [ONE] * m, forbidden, node_budget)
    if seed is not None:
        add_cut(frozenset(seed.edges))
    while cuts:
        out = lp.solve()
        pivots += out.pivots
        assert isinstance(out, Optimal)
        # duals c on the <= rows are >= 0; a cut F improves iff c(F) < 1
        c = list(out.duals)
        priced = _price(instance, c, forbidden, node_budget)
        if priced is not None and priced.cost < 1 and frozenset(priced.edges) not in set(cuts):
            add_cut(frozenset(priced.edges))
            continue
        if out.objective >= 1:
            total = out.objective
            raw = [(F, out.primal[j]) for j, F in enumerate(cuts) if out.primal[j] > 0]
            # scale total mass down to exactly 1; loads only shrink
            scale = 1 / total
            dec = ConvexDecomposition(
                alpha,
                [F for F, _ in raw],
                [wt * scale for _, wt in raw],
                pivots,
            )
            verify_decomposition(instance, x, alpha, dec)
            return dec
        witness = _finish_witness(instance, x, alpha, c, pivots, forbidden, node_budget)
        return witness
    # no multicut avoids the zero edges: unit weight on any of them certifies
    w = [ONE if e in forbidden else ZERO for e in range(m)]
    witness = DominationWitness(alpha, w, ZERO, pivots)
    verify_witness(instance, x, witness, node_budget)
    return witness


def _finish_witness(instance, x, alpha, c, pivots, forbidden, budget):
    """Turn optimal duals with objective < 1 into a verified witness.

    The duals satisfy c(F) >= 1 for every multicut avoiding the zero
    edges; raising c on the zero edges to 1 extends that to all multicuts
    without changing c.(alpha x)."""
    c = list(c)
    for e in forbidden:
        if c[e] < 1:
            c[e] = ONE
    value = sum((ci * alpha * xi for ci, xi in zip(c, x)), ZERO)
    witness = DominationWitness(alpha, c, value, pivots)
    verify_witness(instance, x, witness, budget)
    return witness


def min_alpha(instance: MulticutInstance, x, node_budget: int | None = None):
    """Smallest alpha such that alpha*x dominates a convex combination of
    multicuts, with the achieving decomposition.

    Raises NoMulticutError if the pairs cannot be cut using only edges
    with x(e) > 0 (then no alpha works).
    """
    x = [rat(v) for v in x]
    m = instance.graph.m
    if len(x) != m:
        raise ValueError("x must have one entry per edge")
    if any(v < 0 for v in x):
        raise ValueError("x must be nonnegative")
    forbidden = _zero_edges(x)

    # min alpha  s.t.  sum_{F ni e} y_F - alpha x(e) <= 0,  sum y_F = 1
    lp = LinearProgram("min")
    a_var = lp.add_variable(ONE)
    for e in range(m):
        lp.add_constraint({a_var: -x[e]}, "<=", ZERO)
    lp.add_constraint({}, "==", ONE)
    cuts: list[frozenset] = []

    def add_cut(F: frozenset) -> None:
        entries = {e: ONE for e in F}
        entries[m] = ONE
        lp.add_column(ZERO, entries)
        cuts.append(F)

    seed = min_weight_multicut(
        instance, [ONE] * m, node_budget=node_budget, forbidden=forbidden
    )
    add_cut(frozenset(seed.edges))
    pivots = 0
    while True:
        out = lp.solve()
        pivots += out.pivots
        assert isinstance(out, Optimal), "master with one column is always feasible"
        d = out.duals  # d[e] <= 0 on edge rows, d[m] free on the mass row
        weights = [-d[e] for e in range(m)]
        priced = _price(instance, weights, forbidden, node_budget)
        if (
            priced is not None
            and priced.cost < d[m]
            and frozenset(priced.edges) not in set(cuts)
        ):
            add_cut(frozenset(priced.edges))
            continue
        alpha = out.primal[a_var]
        raw = [
            (F, out.primal[j + 1]) for j, F in enumerate(cuts) if out.primal[j + 1] > 0
        ]
        dec = ConvexDecomposition(alpha, [F for F, _ in raw], [wt for _, wt in raw], pivots)
        verify_decomposition(instance, x, alpha, dec)
        return dec
