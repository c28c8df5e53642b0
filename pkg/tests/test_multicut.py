from fractions import Fraction

import pytest

from multicutlab.graph import Graph
from multicutlab.multicut import (
    DistancePairs,
    InstanceError,
    MulticutInstance,
    NoMulticutError,
    exhaustive_min_multicut,
    extract_multiflow,
    gap,
    is_feasible_multicut,
    min_weight_multicut,
    separate,
    solve_fractional,
    solve_integral,
)

F = Fraction


def star3():
    g = Graph(4, [(0, 1), (0, 2), (0, 3)])
    return MulticutInstance(g, 1, [(1, 2), (1, 3), (2, 3)])


def test_instance_validation():
    g = Graph(3, [(0, 1), (1, 2)])
    with pytest.raises(InstanceError):
        MulticutInstance(g, [1], [(0, 2)])
    with pytest.raises(InstanceError):
        MulticutInstance(g, 1, [(0, 0)])
    with pytest.raises(InstanceError):
        MulticutInstance(g, -1, [(0, 2)])
    inst = MulticutInstance(g, 1, [(2, 0), (0, 2)])
    assert inst.pairs == ((0, 2),)


def test_distance_pairs():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    dp = DistancePairs(g, 2)
    assert list(dp) == [(0, 2), (0, 3), (1, 3)]
    assert (0, 3) in dp and (0, 1) not in dp


def test_separation():
    inst = star3()
    hit = separate(inst, [F(1, 4)] * 3)
    assert hit == ((1, 2), [1, 0, 2])
    assert separate(inst, [F(1, 2)] * 3) is None


def test_star_fractional_and_flow():
    inst = star3()
    frac = solve_fractional(inst)
    assert frac.objective == F(3, 2)
    assert frac.x == (F(1, 2),) * 3
    flow = extract_multiflow(inst, frac)
    assert flow.total == F(3, 2)


def test_star_integral_and_gap():
    inst = star3()
    sol = solve_integral(inst)
    assert sol.cost == 2 and sol.optimal
    assert exhaustive_min_multicut(inst).cost == 2
    rep = gap(inst)
    assert (rep.lp, rep.ip, rep.gap) == (F(3, 2), 2, F(4, 3))


def test_feasibility_predicate():
    inst = star3()
    assert is_feasible_multicut(inst, [0, 1])
    assert not is_feasible_multicut(inst, [0])


def test_fixed_variables():
    inst = star3()
    frac = solve_fractional(inst, fixed_in=[0])
    assert frac.x[0] == 1
    assert frac.objective == 2  # edge 0 paid fully, pair (2,3) still needs 1
    frac = solve_fractional(inst, fixed_out=[0])
    assert frac.x[0] == 0


def test_weighted_min_multicut():
    inst = star3()
    sol = min_weight_multicut(inst, [F(1), F(5), F(5)])
    assert sol.cost == 6
    assert set(sol.edges) in ({0, 1}, {0, 2})


def test_no_multicut_with_forbidden():
    g = Graph(2, [(0, 1)])
    inst = MulticutInstance(g, 1, [(0, 1)])
    with pytest.raises(NoMulticutError):
        min_weight_multicut(inst, forbidden=[0])


def test_budget_exhaustion_flag():
    # a 2x3 grid with crossing pairs forces branching; budget 1 cannot finish
    g = Graph(6, [(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)])
    inst = MulticutInstance(g, 1, [(0, 5), (2, 3), (0, 2)])
    sol = min_weight_multicut(inst, node_budget=1)
    full = exhaustive_min_multicut(inst)
    if sol.optimal:
        assert sol.cost == full.cost
    else:
        assert sol.cost >= full.cost >= sol.lower_bound


def test_empty_pairs():
    g = Graph(3, [(0, 1), (1, 2)])
    inst = MulticutInstance(g, 1, [])
    assert solve_fractional(inst).objective == 0
    assert solve_integral(inst).cost == 0
    rep = gap(inst)
    assert rep.gap is None


def test_subdivided_edge_lp_invariance():
    g = Graph(2, [(0, 1)])
    inst = MulticutInstance(g, 1, [(0, 1)])
    assert solve_fractional(inst).objective == 1
    g2, _ = g.subdivide(0, 3)
    inst2 = MulticutInstance(g2, 1, [(0, 1)])
    assert solve_fractional(inst2).objective == 1
